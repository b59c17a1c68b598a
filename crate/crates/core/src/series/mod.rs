//! Terminating multivariable elliptic hypergeometric series `V_n^m` and the
//! one-variable very-well-poised series `_{m+5}V_{m+4}`.

use num_complex::Complex;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numerics::{ratio, Accumulator, EllipticParams, Real, Total};

pub mod identities;

/// Relative tolerance used when checking that a parameter terminates a series.
pub const MATCH_TOL: f64 = 1e-10;

/// The set of multi-indices a terminating series is summed over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    /// `y_i ≤ bounds[i]`.
    pub bounds: Vec<usize>,
    /// Optional `|y| ≤ total`.
    pub total: Option<usize>,
}

impl Support {
    /// `0 ≤ y_i ≤ N_i`.
    pub fn boxed(bounds: Vec<usize>) -> Self {
        Self {
            bounds,
            total: None,
        }
    }

    /// `|y| ≤ N` in `n` variables.
    pub fn simplex(n: usize, total: usize) -> Self {
        Self {
            bounds: vec![total; n],
            total: Some(total),
        }
    }

    /// All points of the support in lexicographic order.
    pub fn points(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        box_points(&self.bounds, |y| {
            if self.total.is_none_or(|t| y.iter().sum::<usize>() <= t) {
                out.push(y.to_vec());
            }
        });
        out
    }
}

/// Calls `f` on every `y` with `0 ≤ y_i ≤ bounds[i]`, in lexicographic order.
pub fn box_points(bounds: &[usize], mut f: impl FnMut(&[usize])) {
    let n = bounds.len();
    let mut y = vec![0usize; n];
    loop {
        f(&y);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if y[i] < bounds[i] {
                y[i] += 1;
                for v in &mut y[i + 1..] {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// Parameters of `V_n^m(a; b_1..b_{m+2}; c_1..c_{m+n+2}; z_1..z_n)` together with the
/// support its termination restricts the sum to.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec<T> {
    pub a: Complex<T>,
    pub b: Vec<Complex<T>>,
    pub c: Vec<Complex<T>>,
    pub z: Vec<Complex<T>>,
    pub support: Support,
}

fn close<T: Real>(x: Complex<T>, y: Complex<T>) -> bool {
    (x - y).norm() <= crate::numerics::real::<T>(MATCH_TOL) * (x.norm() + y.norm())
}

impl<T: Real> SeriesSpec<T> {
    /// Checks the shapes; the termination is checked by [`Self::check_termination`].
    pub fn new(
        a: Complex<T>,
        b: Vec<Complex<T>>,
        c: Vec<Complex<T>>,
        z: Vec<Complex<T>>,
        support: Support,
    ) -> Result<Self> {
        if b.len() < 2 {
            return Err(Error::Domain(
                "a V series needs at least two b parameters".into(),
            ));
        }
        if c.len() != b.len() + z.len() {
            return Err(Error::Domain(format!(
                "expected {} c parameters, got {}",
                b.len() + z.len(),
                c.len()
            )));
        }
        if support.bounds.len() != z.len() {
            return Err(Error::Domain(
                "support dimension differs from the number of z".into(),
            ));
        }
        Ok(Self {
            a,
            b,
            c,
            z,
            support,
        })
    }

    /// Series terminated by `b_1 = q^{−N}`, summed over `|y| ≤ N`.
    pub fn b_terminating(
        params: &EllipticParams<T>,
        a: Complex<T>,
        big_n: usize,
        b_rest: Vec<Complex<T>>,
        c: Vec<Complex<T>>,
        z: Vec<Complex<T>>,
    ) -> Result<Self> {
        let mut b = vec![params.q_int(-(big_n as i64))];
        b.extend(b_rest);
        let n = z.len();
        Self::new(a, b, c, z, Support::simplex(n, big_n))
    }

    /// Series terminated by `c_j = q^{−N_j}/z_j` for `j ≤ n`, summed over `y_j ≤ N_j`.
    /// `c_rest` holds the remaining `m + 2` parameters `c_{n+1}, …`.
    pub fn c_terminating(
        params: &EllipticParams<T>,
        a: Complex<T>,
        b: Vec<Complex<T>>,
        c_rest: Vec<Complex<T>>,
        z: Vec<Complex<T>>,
        bounds: Vec<usize>,
    ) -> Result<Self> {
        if bounds.len() != z.len() {
            return Err(Error::Domain("one bound per z parameter is needed".into()));
        }
        let mut c: Vec<_> = z
            .iter()
            .zip(&bounds)
            .map(|(&zj, &nj)| params.q_int(-(nj as i64)) / zj)
            .collect();
        c.extend(c_rest);
        Self::new(a, b, c, z, Support::boxed(bounds))
    }

    /// `m` in `V_n^m`.
    pub fn m(&self) -> usize {
        self.b.len() - 2
    }

    /// `n` in `V_n^m`.
    pub fn n(&self) -> usize {
        self.z.len()
    }

    /// Verifies that the parameters force every term outside the support to vanish:
    /// a total bound `N` needs some `b_j = q^{−N}`, and each coordinate bound `N_i`
    /// (unless implied by the total) needs some `c_j z_i = q^{−N_i}`.
    pub fn check_termination(&self, params: &EllipticParams<T>) -> Result<()> {
        if let Some(t) = self.support.total {
            let target = params.q_int(-(t as i64));
            if !self.b.iter().any(|&bj| close(bj, target)) {
                return Err(Error::Domain(format!("no b parameter equals q^-{t}")));
            }
        }
        for (i, &ni) in self.support.bounds.iter().enumerate() {
            if self.support.total.is_some_and(|t| ni >= t) {
                continue;
            }
            let target = params.q_int(-(ni as i64));
            if !self.c.iter().any(|&cj| close(cj * self.z[i], target)) {
                return Err(Error::Domain(format!(
                    "series is not terminated in variable {} at {}",
                    i + 1,
                    ni
                )));
            }
        }
        Ok(())
    }

    /// Relative defect of the balancing condition
    /// `b_1⋯b_{m+2} c_1⋯c_{m+n+2} z_1⋯z_n = q^{m+1} a^{m+2}`.
    pub fn balance_defect(&self, params: &EllipticParams<T>) -> T {
        let mut lhs = Complex::<T>::one();
        for &x in self.b.iter().chain(&self.c).chain(&self.z) {
            lhs = lhs * x;
        }
        let m = self.m() as i32;
        let rhs = params.q_int(m as i64 + 1) * self.a.powi(m + 2);
        crate::residual::relative(lhs, rhs)
    }

    pub fn is_balanced(&self, params: &EllipticParams<T>) -> bool {
        self.balance_defect(params) <= crate::numerics::real(MATCH_TOL)
    }

    /// The representative of the scaling class `a → ta, c_j → t c_j, z_j → z_j/t` with `a = 1`.
    pub fn normal_form(&self) -> Self {
        let t = self.a.inv();
        Self {
            a: Complex::one(),
            b: self.b.clone(),
            c: self.c.iter().map(|&x| x * t).collect(),
            z: self.z.iter().map(|&x| x / t).collect(),
            support: self.support.clone(),
        }
    }

    /// The same series after `a → ta, c_j → t c_j, z_j → z_j/t`.
    pub fn scaled(&self, t: Complex<T>) -> Self {
        Self {
            a: self.a * t,
            b: self.b.clone(),
            c: self.c.iter().map(|&x| x * t).collect(),
            z: self.z.iter().map(|&x| x / t).collect(),
            support: self.support.clone(),
        }
    }
}

/// The summand of `V_n^m` at `y`:
///
/// `Δ(zq^y)/Δ(z) q^{|y|} ∏_i θ(a z_i q^{y_i+|y|})/θ(a z_i) · ∏_i (a z_i)_{|y|} ∏_j (b_j)_{|y|} / ∏_j (aq/c_j)_{|y|}
///  · ∏_i [∏_j (c_j z_i)_{y_i} / (∏_j (q z_i/z_j)_{y_i} ∏_j (a q z_i/b_j)_{y_i})]`.
///
/// The denominator `(aq/c_j)_{|y|}` is left out for `j = omit_c`.
pub fn v_term<T: Real>(
    params: &EllipticParams<T>,
    a: Complex<T>,
    b: &[Complex<T>],
    c: &[Complex<T>],
    z: &[Complex<T>],
    y: &[usize],
    omit_c: Option<usize>,
) -> Result<Complex<T>> {
    let q = params.q();
    let n = z.len();
    let big_y: usize = y.iter().sum();
    let yy = big_y as i64;
    let mut num = params.delta_ratio(z, y)? * params.q_int(yy);
    let mut den = Complex::<T>::one();
    for i in 0..n {
        let az = a * z[i];
        num =
            num * params.theta(az * params.q_int(y[i] as i64 + yy))? * params.pochhammer(az, yy)?;
        den = den * params.theta(az)?;
    }
    for &bj in b {
        num = num * params.pochhammer(bj, yy)?;
    }
    for (j, &cj) in c.iter().enumerate() {
        if omit_c != Some(j) {
            den = den * params.pochhammer(a * q / cj, yy)?;
        }
    }
    for i in 0..n {
        let yi = y[i] as i64;
        for &cj in c {
            num = num * params.pochhammer(cj * z[i], yi)?;
        }
        for &zj in z {
            den = den * params.pochhammer(q * z[i] / zj, yi)?;
        }
        for &bj in b {
            den = den * params.pochhammer(a * q * z[i] / bj, yi)?;
        }
    }
    ratio(num, den, "V series term")
}

/// The sum of [`v_term`] over an explicit list of multi-indices.
pub fn v_sum<T: Real>(
    params: &EllipticParams<T>,
    a: Complex<T>,
    b: &[Complex<T>],
    c: &[Complex<T>],
    z: &[Complex<T>],
    points: &[Vec<usize>],
) -> Result<Total<T>> {
    let mut acc = Accumulator::new();
    for y in points {
        acc.add(v_term(params, a, b, c, z, y, None)?);
    }
    Ok(acc.total())
}

/// `V_n^m` summed over `0 ≤ y_i ≤ bounds[i]`, with its term mass.
pub fn v_box<T: Real>(
    params: &EllipticParams<T>,
    a: Complex<T>,
    b: &[Complex<T>],
    c: &[Complex<T>],
    z: &[Complex<T>],
    bounds: &[usize],
) -> Result<Total<T>> {
    if bounds.len() != z.len() || c.len() != b.len() + z.len() {
        return Err(Error::Domain("inconsistent V series shape".into()));
    }
    let mut acc = Accumulator::new();
    let mut err = None;
    box_points(bounds, |y| {
        if err.is_some() {
            return;
        }
        match v_term(params, a, b, c, z, y, None) {
            Ok(t) => acc.add(t),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(acc.total()),
    }
}

/// `V_n^m` over the support of a terminating spec, with its term mass.
pub fn v_series_total<T: Real>(
    params: &EllipticParams<T>,
    spec: &SeriesSpec<T>,
) -> Result<Total<T>> {
    spec.check_termination(params)?;
    v_sum(
        params,
        spec.a,
        &spec.b,
        &spec.c,
        &spec.z,
        &spec.support.points(),
    )
}

/// `V_n^m` over the support of a terminating spec.
pub fn v_series<T: Real>(params: &EllipticParams<T>, spec: &SeriesSpec<T>) -> Result<Complex<T>> {
    Ok(v_series_total(params, spec)?.value)
}

/// `_{m+5}V_{m+4}(a; q^{−N}, b_1, …, b_m) = Σ_{y≤N} θ(aq^{2y})/θ(a) (a, q^{−N}, b)_y / (q, aq^{1+N}, aq/b)_y q^y`.
pub fn very_well_poised<T: Real>(
    params: &EllipticParams<T>,
    a: Complex<T>,
    big_n: usize,
    bs: &[Complex<T>],
) -> Result<Total<T>> {
    let q = params.q();
    let mut all = vec![params.q_int(-(big_n as i64))];
    all.extend_from_slice(bs);
    let mut acc = Accumulator::new();
    for y in 0..=big_n as i64 {
        let mut num =
            params.theta(a * params.q_int(2 * y))? * params.pochhammer(a, y)? * params.q_int(y);
        let mut den = params.theta(a)? * params.pochhammer(q, y)?;
        for &bj in &all {
            num = num * params.pochhammer(bj, y)?;
            den = den * params.pochhammer(a * q / bj, y)?;
        }
        acc.add(ratio(num, den, "very-well-poised term")?);
    }
    Ok(acc.total())
}

/// Product `(x_1)_k ⋯ (x_r)_k`, with `k` possibly negative.
pub(crate) fn pp<T: Real>(
    params: &EllipticParams<T>,
    xs: &[Complex<T>],
    k: i64,
) -> Result<Complex<T>> {
    params.pochhammer_prod(xs, k)
}

/// `(num_1)_k⋯ / (den_1)_k⋯` with a singularity check.
pub(crate) fn pp_ratio<T: Real>(
    params: &EllipticParams<T>,
    num: &[Complex<T>],
    den: &[Complex<T>],
    k: i64,
) -> Result<Complex<T>> {
    ratio(pp(params, num, k)?, pp(params, den, k)?, "Pochhammer ratio")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_enumeration_is_lexicographic() {
        let mut seen = Vec::new();
        box_points(&[1, 2], |y| seen.push(y.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![1, 2]
            ]
        );
        let mut count = 0;
        box_points(&[], |_| count += 1);
        assert_eq!(count, 1);
        assert_eq!(Support::simplex(2, 2).points().len(), 6);
    }
}
