//! Theta functions, elliptic Pochhammer symbols and the small amount of
//! floating-point plumbing the rest of the crate is built on.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, One, Zero};

use crate::error::{Error, Result};

/// Scalar types the library can be instantiated with (`f64`, `f32`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

/// Converts an `f64` literal into the working scalar type.
pub fn real<T: Real>(v: f64) -> T {
    T::from_f64(v).expect("literal representable in the scalar type")
}

/// Builds a complex number of the working scalar type from `f64` parts.
pub fn cplx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(real(re), real(im))
}

pub(crate) fn int<T: Real>(k: i64) -> Complex<T> {
    Complex::new(T::from_i64(k).expect("integer representable"), T::zero())
}

/// Moduli at or below this are treated as exact zeros when they appear in a denominator.
pub fn singular_threshold<T: Real>() -> T {
    T::epsilon() * real(64.0)
}

pub(crate) fn is_finite<T: Real>(x: Complex<T>) -> bool {
    x.re.is_finite() && x.im.is_finite()
}

pub(crate) fn finite<T: Real>(x: Complex<T>, what: &str) -> Result<Complex<T>> {
    if is_finite(x) {
        Ok(x)
    } else {
        Err(Error::Numeric(what.to_string()))
    }
}

/// `num / den`, failing with [`Error::Singular`] when `den` is numerically zero.
pub(crate) fn ratio<T: Real>(num: Complex<T>, den: Complex<T>, what: &str) -> Result<Complex<T>> {
    if !(den.norm() > singular_threshold::<T>()) {
        return Err(Error::Singular(what.to_string()));
    }
    finite(num / den, what)
}

/// The fixed nome `p`, base `q` and branch of `log q` shared by all evaluations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipticParams<T> {
    p: Complex<T>,
    q: Complex<T>,
    log_q: Complex<T>,
}

impl<T: Real> EllipticParams<T> {
    /// Uses the principal branch of `log q`.
    pub fn new(p: Complex<T>, q: Complex<T>) -> Result<Self> {
        if q.is_zero() || !is_finite(q) {
            return Err(Error::Domain("q must be finite and nonzero".into()));
        }
        Self::with_log_q(p, q.ln())
    }

    /// Fixes `q = exp(log_q)` with the given branch.
    pub fn with_log_q(p: Complex<T>, log_q: Complex<T>) -> Result<Self> {
        if !is_finite(p) || !(p.norm() < T::one()) {
            return Err(Error::Domain("the nome must satisfy |p| < 1".into()));
        }
        if !is_finite(log_q) {
            return Err(Error::Domain("log q must be finite".into()));
        }
        let q = log_q.exp();
        if q.is_zero() || !is_finite(q) {
            return Err(Error::Domain("q must be finite and nonzero".into()));
        }
        Ok(Self { p, q, log_q })
    }

    pub fn p(&self) -> Complex<T> {
        self.p
    }

    pub fn q(&self) -> Complex<T> {
        self.q
    }

    pub fn log_q(&self) -> Complex<T> {
        self.log_q
    }

    /// `q^λ = exp(λ log q)`.
    pub fn q_power(&self, lambda: Complex<T>) -> Result<Complex<T>> {
        finite((lambda * self.log_q).exp(), "q_power")
    }

    /// `q^k` for an integer exponent, on the same branch as [`Self::q_power`].
    pub fn q_int(&self, k: i64) -> Complex<T> {
        (int::<T>(k) * self.log_q).exp()
    }

    /// `θ(x) = ∏_{j≥0} (1 − p^j x)(1 − p^{j+1}/x)`.
    ///
    /// Factors `j = 0..=J` are multiplied, where `J` is the least index with
    /// `|p|^J · max(|x|, 1/|x|) < 1e-17` (at most 200).
    pub fn theta(&self, x: Complex<T>) -> Result<Complex<T>> {
        if x.is_zero() {
            return Err(Error::Domain("theta evaluated at x = 0".into()));
        }
        if !is_finite(x) {
            return Err(Error::Numeric("theta argument".into()));
        }
        let one = Complex::<T>::one();
        if self.p.is_zero() {
            return Ok(one - x);
        }
        let ap = self.p.norm();
        let ax = x.norm();
        let spread = ax.max(ax.recip());
        let tol = real::<T>(1e-17);
        let mut last = 0usize;
        let mut apj = T::one();
        while last < 200 && !(apj * spread < tol) {
            last += 1;
            apj = apj * ap;
        }
        let inv = x.inv();
        let mut pj = one;
        let mut acc = one;
        for _ in 0..=last {
            acc = acc * (one - pj * x) * (one - pj * self.p * inv);
            pj = pj * self.p;
        }
        finite(acc, "theta")
    }

    /// `θ(x_1, …, x_n) = θ(x_1) ⋯ θ(x_n)`; the empty product is 1.
    pub fn theta_prod(&self, xs: &[Complex<T>]) -> Result<Complex<T>> {
        let mut acc = Complex::one();
        for &x in xs {
            acc = acc * self.theta(x)?;
        }
        finite(acc, "theta_prod")
    }

    /// `θ(num)/θ(den)` with a singularity check on the denominator.
    pub fn theta_ratio(&self, num: Complex<T>, den: Complex<T>) -> Result<Complex<T>> {
        ratio(self.theta(num)?, self.theta(den)?, "theta ratio")
    }

    /// Elliptic Pochhammer symbol `(x)_k = θ(x)θ(qx)⋯θ(q^{k−1}x)`,
    /// extended to `k < 0` by `(x)_k = 1/(q^k x)_{−k}`.
    pub fn pochhammer(&self, x: Complex<T>, k: i64) -> Result<Complex<T>> {
        if k >= 0 {
            let mut acc = Complex::one();
            for j in 0..k {
                acc = acc * self.theta(self.q_int(j) * x)?;
            }
            finite(acc, "pochhammer")
        } else {
            let den = self.pochhammer(self.q_int(k) * x, -k)?;
            ratio(Complex::one(), den, "pochhammer with negative length")
        }
    }

    /// Product of Pochhammer symbols of the same length.
    pub fn pochhammer_prod(&self, xs: &[Complex<T>], k: i64) -> Result<Complex<T>> {
        let mut acc = Complex::one();
        for &x in xs {
            acc = acc * self.pochhammer(x, k)?;
        }
        Ok(acc)
    }

    /// `(num)_k / (den)_k` with a singularity check.
    pub fn pochhammer_ratio(&self, num: Complex<T>, den: Complex<T>, k: i64) -> Result<Complex<T>> {
        ratio(
            self.pochhammer(num, k)?,
            self.pochhammer(den, k)?,
            "pochhammer ratio",
        )
    }

    /// `F(λ) = q^{−λ/2} θ(q^{λ+1})`.
    pub fn cap_f(&self, lambda: Complex<T>) -> Result<Complex<T>> {
        let half = cplx::<T>(0.5, 0.0);
        let pre = self.q_power(-lambda * half)?;
        let th = self.theta(self.q_power(lambda + Complex::one())?)?;
        finite(pre * th, "cap_f")
    }

    /// `Δ(z q^y)/Δ(z) = ∏_{j<k} q^{y_j} θ(q^{y_k−y_j} z_k/z_j)/θ(z_k/z_j)`.
    pub fn delta_ratio(&self, z: &[Complex<T>], y: &[usize]) -> Result<Complex<T>> {
        if z.len() != y.len() {
            return Err(Error::Domain(
                "delta_ratio: z and y differ in length".into(),
            ));
        }
        let mut acc = Complex::one();
        for j in 0..z.len() {
            for k in j + 1..z.len() {
                let u = z[k] / z[j];
                let shift = self.q_int(y[k] as i64 - y[j] as i64);
                let num = self.q_int(y[j] as i64) * self.theta(shift * u)?;
                acc = acc * ratio(num, self.theta(u)?, "delta_ratio")?;
            }
        }
        finite(acc, "delta_ratio")
    }
}

/// Compensated (Neumaier) complex summation that also records the total
/// absolute mass `Σ|term|`, used to judge cancellation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Accumulator<T: Real> {
    sum: Complex<T>,
    comp: Complex<T>,
    mass: T,
}

fn neumaier<T: Real>(sum: &mut T, comp: &mut T, x: T) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp = *comp + ((*sum - t) + x);
    } else {
        *comp = *comp + ((x - t) + *sum);
    }
    *sum = t;
}

impl<T: Real> Accumulator<T> {
    pub fn new() -> Self {
        Self {
            sum: Complex::zero(),
            comp: Complex::zero(),
            mass: T::zero(),
        }
    }

    pub fn add(&mut self, x: Complex<T>) {
        neumaier(&mut self.sum.re, &mut self.comp.re, x.re);
        neumaier(&mut self.sum.im, &mut self.comp.im, x.im);
        self.mass = self.mass + x.norm();
    }

    /// Adds a term whose own absolute mass is already known (e.g. a nested sum).
    pub fn add_with_mass(&mut self, x: Complex<T>, mass: T) {
        neumaier(&mut self.sum.re, &mut self.comp.re, x.re);
        neumaier(&mut self.sum.im, &mut self.comp.im, x.im);
        self.mass = self.mass + mass.max(x.norm());
    }

    pub fn value(&self) -> Complex<T> {
        self.sum + self.comp
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    /// Multiplies value and mass by a common prefactor.
    pub fn scaled(&self, factor: Complex<T>) -> Total<T> {
        Total {
            value: self.value() * factor,
            mass: self.mass * factor.norm(),
        }
    }

    pub fn total(&self) -> Total<T> {
        Total {
            value: self.value(),
            mass: self.mass,
        }
    }
}

/// A computed sum together with its absolute mass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Total<T> {
    pub value: Complex<T>,
    pub mass: T,
}

impl<T: Real> Total<T> {
    pub fn exact(value: Complex<T>) -> Self {
        Self {
            value,
            mass: value.norm(),
        }
    }
}
