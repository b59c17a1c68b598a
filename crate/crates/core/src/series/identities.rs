//! Summation and transformation formulas for the series in [`super`], each
//! with the constrained parameter solved from the free ones.

use num_complex::Complex;
use num_traits::One;

use super::{box_points, pp, pp_ratio, v_box, v_term, very_well_poised};
use crate::error::{Error, Result};
use crate::numerics::{ratio, Accumulator, EllipticParams, Real, Total};
use crate::residual::{against_mass, between};

fn product<T: Real>(xs: &[Complex<T>]) -> Complex<T> {
    xs.iter().fold(Complex::one(), |acc, &x| acc * x)
}

/// Elliptic Jackson summation: `_{10}V_9(a; q^{−N}, b, c, d, e)` with `e = a²q^{N+1}/(bcd)`
/// against `(aq, aq/bc, aq/bd, aq/cd)_N / (aq/b, aq/c, aq/d, aq/bcd)_N`.
pub fn jackson_residual<T: Real>(
    params: &EllipticParams<T>,
    a: Complex<T>,
    big_n: usize,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
) -> Result<T> {
    let q = params.q();
    let nn = big_n as i64;
    let e = a * a * params.q_int(nn + 1) / (b * c * d);
    let lhs = very_well_poised(params, a, big_n, &[b, c, d, e])?;
    let aq = a * q;
    let rhs = pp_ratio(
        params,
        &[aq, aq / (b * c), aq / (b * d), aq / (c * d)],
        &[aq / b, aq / c, aq / d, aq / (b * c * d)],
        nn,
    )?;
    Ok(against_mass(lhs.value, rhs, lhs.mass))
}

/// Elliptic Bailey transformation of `_{12}V_{11}(a; q^{−N}, b, c, d, e, f, g)` with
/// `g = a³q^{N+2}/(bcdef)` and `λ = qa²/(bcd)`.
pub fn bailey_residual<T: Real>(
    params: &EllipticParams<T>,
    a: Complex<T>,
    big_n: usize,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
    e: Complex<T>,
    f: Complex<T>,
) -> Result<T> {
    let q = params.q();
    let nn = big_n as i64;
    let g = a * a * a * params.q_int(nn + 2) / (b * c * d * e * f);
    let lam = q * a * a / (b * c * d);
    let lhs = very_well_poised(params, a, big_n, &[b, c, d, e, f, g])?;
    let inner = very_well_poised(
        params,
        lam,
        big_n,
        &[lam * b / a, lam * c / a, lam * d / a, e, f, g],
    )?;
    let pre = pp_ratio(
        params,
        &[a * q, a * q / (e * f), lam * q / e, lam * q / f],
        &[lam * q, lam * q / (e * f), a * q / e, a * q / f],
        nn,
    )?;
    let rhs = Total {
        value: pre * inner.value,
        mass: pre.norm() * inner.mass,
    };
    Ok(between(lhs, rhs))
}

/// One side of the `(m, n)` transformation: the sum over `y_1 + … + y_n = N` of
/// `Δ(zq^y)/Δ(z) ∏_k ∏_j (a_j z_k)_{y_k} / (∏_j (w_j z_k)_{y_k} ∏_j (q z_k/z_j)_{y_k})`.
pub fn composition_sum<T: Real>(
    params: &EllipticParams<T>,
    z: &[Complex<T>],
    w: &[Complex<T>],
    a: &[Complex<T>],
    total: usize,
) -> Result<Total<T>> {
    let q = params.q();
    let mut acc = Accumulator::new();
    let mut err = None;
    box_points(&vec![total; z.len()], |y| {
        if err.is_some() || y.iter().sum::<usize>() != total {
            return;
        }
        let term = (|| -> Result<Complex<T>> {
            let mut num = params.delta_ratio(z, y)?;
            let mut den = Complex::<T>::one();
            for (k, &zk) in z.iter().enumerate() {
                let yk = y[k] as i64;
                for &aj in a {
                    num = num * params.pochhammer(aj * zk, yk)?;
                }
                for &wj in w {
                    den = den * params.pochhammer(wj * zk, yk)?;
                }
                for &zj in z {
                    den = den * params.pochhammer(q * zk / zj, yk)?;
                }
            }
            ratio(num, den, "composition sum term")
        })();
        match term {
            Ok(t) => acc.add(t),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(acc.total()),
    }
}

/// The transformation exchanging sums over compositions of `N` into `n` and into `m`
/// parts. `a_free` holds `a_1..a_{m+n−1}`; the last one is solved from
/// `w_1⋯w_m = z_1⋯z_n a_1⋯a_{m+n}`.
pub fn composition_transform_residual<T: Real>(
    params: &EllipticParams<T>,
    total: usize,
    z: &[Complex<T>],
    w: &[Complex<T>],
    a_free: &[Complex<T>],
) -> Result<T> {
    let (m, n) = (w.len(), z.len());
    if m == 0 || n == 0 || a_free.len() + 1 != m + n {
        return Err(Error::Domain(
            "need m, n ≥ 1 and m + n − 1 free a parameters".into(),
        ));
    }
    let mut a = a_free.to_vec();
    a.push(product(w) / (product(z) * product(a_free)));
    let lhs = composition_sum(params, z, w, &a, total)?;
    let a_inv: Vec<_> = a.iter().map(|x| x.inv()).collect();
    let rhs = composition_sum(params, w, z, &a_inv, total)?;
    Ok(between(lhs, rhs))
}

/// Data of the transformation between `V_n^m` and `V_m^n`:
/// `V_n^m(a; b, c, aq/w_1, …; q^{−N_1}/z_1, …, q^{M_1}w_1, …, d, e; z)` equals
/// [`Rkt::prefactor`] times `V_m^n(λ; b, c, λq/z_1, …; q^{−M_1}/w_1, …, q^{N_1}z_1, …, 1/d, 1/e; w)`
/// where `λ = bc/(aq) = q^{|N|−|M|} a/(de)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rkt<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub d: Complex<T>,
    pub e: Complex<T>,
    pub w: Vec<Complex<T>>,
    pub z: Vec<Complex<T>>,
    pub nn: Vec<usize>,
    pub mm: Vec<usize>,
}

impl<T: Real> Rkt<T> {
    /// Solves `e = q^{|N|−|M|} a/(dλ)` with `λ = bc/(aq)`.
    #[allow(clippy::too_many_arguments)]
    pub fn solved(
        params: &EllipticParams<T>,
        a: Complex<T>,
        b: Complex<T>,
        c: Complex<T>,
        d: Complex<T>,
        w: Vec<Complex<T>>,
        z: Vec<Complex<T>>,
        nn: Vec<usize>,
        mm: Vec<usize>,
    ) -> Result<Self> {
        if nn.len() != z.len() || mm.len() != w.len() {
            return Err(Error::Domain(
                "one bound per spectral parameter is needed".into(),
            ));
        }
        let lam = b * c / (a * params.q());
        let shift = nn.iter().sum::<usize>() as i64 - mm.iter().sum::<usize>() as i64;
        let e = params.q_int(shift) * a / (d * lam);
        Ok(Self {
            a,
            b,
            c,
            d,
            e,
            w,
            z,
            nn,
            mm,
        })
    }

    pub fn lambda(&self, params: &EllipticParams<T>) -> Complex<T> {
        self.b * self.c / (self.a * params.q())
    }

    /// The `V_n^m` side, summed over `y_i ≤ N_i`.
    pub fn left(&self, params: &EllipticParams<T>) -> Result<Total<T>> {
        let q = params.q();
        let mut b = vec![self.b, self.c];
        b.extend(self.w.iter().map(|&wj| self.a * q / wj));
        let mut c: Vec<_> = self
            .z
            .iter()
            .zip(&self.nn)
            .map(|(&zj, &nj)| params.q_int(-(nj as i64)) / zj)
            .collect();
        c.extend(
            self.w
                .iter()
                .zip(&self.mm)
                .map(|(&wj, &mj)| params.q_int(mj as i64) * wj),
        );
        c.extend([self.d, self.e]);
        v_box(params, self.a, &b, &c, &self.z, &self.nn)
    }

    /// The `V_m^n` series on the right, summed over `y_j ≤ M_j`; 1 when `m = 0`.
    pub fn right_series(&self, params: &EllipticParams<T>) -> Result<Total<T>> {
        if self.w.is_empty() {
            return Ok(Total::exact(Complex::one()));
        }
        let q = params.q();
        let lam = self.lambda(params);
        let mut b = vec![self.b, self.c];
        b.extend(self.z.iter().map(|&zj| lam * q / zj));
        let mut c: Vec<_> = self
            .w
            .iter()
            .zip(&self.mm)
            .map(|(&wj, &mj)| params.q_int(-(mj as i64)) / wj)
            .collect();
        c.extend(
            self.z
                .iter()
                .zip(&self.nn)
                .map(|(&zj, &nj)| params.q_int(nj as i64) * zj),
        );
        c.extend([self.d.inv(), self.e.inv()]);
        v_box(params, lam, &b, &c, &self.w, &self.mm)
    }

    /// `c^{|N|−|M|} (λqd, λqe)_{|M|} (aq/cd, aq/ce)_{|N|} / ((λqd/c, λqe/c)_{|M|} (aq/d, aq/e)_{|N|})
    ///  ∏_j (λqw_j/b, λqw_j/c)_{M_j}/(λqw_j/bc, λqw_j)_{M_j} ∏_j (aqz_j/bc, aqz_j)_{N_j}/(aqz_j/b, aqz_j/c)_{N_j}`.
    pub fn prefactor(&self, params: &EllipticParams<T>) -> Result<Complex<T>> {
        let q = params.q();
        let lam = self.lambda(params);
        let (a, b, c, d, e) = (self.a, self.b, self.c, self.d, self.e);
        let big_n = self.nn.iter().sum::<usize>() as i64;
        let big_m = self.mm.iter().sum::<usize>() as i64;
        let mut v = c.powi((big_n - big_m) as i32);
        v = v * pp_ratio(
            params,
            &[lam * q * d, lam * q * e],
            &[lam * q * d / c, lam * q * e / c],
            big_m,
        )?;
        v = v * pp_ratio(
            params,
            &[a * q / (c * d), a * q / (c * e)],
            &[a * q / d, a * q / e],
            big_n,
        )?;
        for (&wj, &mj) in self.w.iter().zip(&self.mm) {
            let x = lam * q * wj;
            v = v * pp_ratio(params, &[x / b, x / c], &[x / (b * c), x], mj as i64)?;
        }
        for (&zj, &nj) in self.z.iter().zip(&self.nn) {
            let x = a * q * zj;
            v = v * pp_ratio(params, &[x / (b * c), x], &[x / b, x / c], nj as i64)?;
        }
        Ok(v)
    }

    /// Prefactor times the right-hand series.
    pub fn right(&self, params: &EllipticParams<T>) -> Result<Total<T>> {
        let pre = self.prefactor(params)?;
        let r = self.right_series(params)?;
        Ok(Total {
            value: pre * r.value,
            mass: pre.norm() * r.mass,
        })
    }

    pub fn residual(&self, params: &EllipticParams<T>) -> Result<T> {
        Ok(between(self.left(params)?, self.right(params)?))
    }
}

/// Multivariable Jackson summation of `V_n^0(a; b, c; q^{−N_i}/z_i, d, e; z)` with
/// `e = a²q^{|N|+1}/(bcd)`, against
/// `c^{|N|} (aq/cd, aq/ce)_{|N|}/(aq/d, aq/e)_{|N|} ∏_j (aqz_j, aqz_j/bc)_{N_j}/(aqz_j/b, aqz_j/c)_{N_j}`.
pub fn jackson_multi_residual<T: Real>(
    params: &EllipticParams<T>,
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
    z: &[Complex<T>],
    nn: &[usize],
) -> Result<T> {
    if z.len() != nn.len() {
        return Err(Error::Domain("one bound per z parameter is needed".into()));
    }
    let q = params.q();
    let big_n = nn.iter().sum::<usize>() as i64;
    let e = a * a * params.q_int(big_n + 1) / (b * c * d);
    let mut cs: Vec<_> = z
        .iter()
        .zip(nn)
        .map(|(&zj, &nj)| params.q_int(-(nj as i64)) / zj)
        .collect();
    cs.extend([d, e]);
    let lhs = v_box(params, a, &[b, c], &cs, z, nn)?;
    let aq = a * q;
    let mut rhs = c.powi(big_n as i32)
        * pp_ratio(
            params,
            &[aq / (c * d), aq / (c * e)],
            &[aq / d, aq / e],
            big_n,
        )?;
    for (&zj, &nj) in z.iter().zip(nn) {
        let x = aq * zj;
        rhs = rhs * pp_ratio(params, &[x, x / (b * c)], &[x / b, x / c], nj as i64)?;
    }
    Ok(against_mass(lhs.value, rhs, lhs.mass))
}

/// The second multivariable Jackson summation (sum over `0 ≤ y_i ≤ N_i` with the mixed
/// Pochhammers `(aq^{1+|N|}/ex_i)_{|y|−y_i}`), with `e = a²q^{|N|+1}/(bcd)`.
pub fn jackson_box_residual<T: Real>(
    params: &EllipticParams<T>,
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
    x: &[Complex<T>],
    nn: &[usize],
) -> Result<T> {
    let n = x.len();
    if nn.len() != n {
        return Err(Error::Domain("one bound per x parameter is needed".into()));
    }
    let q = params.q();
    let big_n = nn.iter().sum::<usize>() as i64;
    let e = a * a * params.q_int(big_n + 1) / (b * c * d);
    let mut acc = Accumulator::new();
    let mut err = None;
    box_points(nn, |y| {
        if err.is_some() {
            return;
        }
        let term = (|| -> Result<Complex<T>> {
            let yy = y.iter().sum::<usize>() as i64;
            let mut num = params.delta_ratio(x, y)?
                * params.q_int(yy)
                * params.theta(a * params.q_int(2 * yy))?;
            let mut den = params.theta(a)?;
            for i in 0..n {
                let yi = y[i] as i64;
                num = num
                    * params.pochhammer(a * params.q_int(1 + big_n) / (e * x[i]), yy - yi)?
                    * params.pochhammer(d / x[i], yy)?
                    * params.pochhammer(e * x[i], yi)?;
                den = den
                    * params.pochhammer(d / x[i], yy - yi)?
                    * params
                        .pochhammer(a * params.q_int(1 + big_n - nn[i] as i64) / (e * x[i]), yy)?
                    * params.pochhammer(a * q * x[i] / d, yi)?;
                for j in 0..n {
                    num =
                        num * params.pochhammer(params.q_int(-(nn[j] as i64)) * x[i] / x[j], yi)?;
                    den = den * params.pochhammer(q * x[i] / x[j], yi)?;
                }
            }
            num = num * pp(params, &[a, b, c], yy)?;
            den = den
                * pp(
                    params,
                    &[a * params.q_int(1 + big_n), a * q / b, a * q / c],
                    yy,
                )?;
            ratio(num, den, "summation term")
        })();
        match term {
            Ok(t) => acc.add(t),
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let lhs = acc.total();
    let aq = a * q;
    let mut rhs = pp_ratio(params, &[aq, aq / (b * c)], &[aq / b, aq / c], big_n)?;
    for (&xi, &ni) in x.iter().zip(nn) {
        let v = aq * xi;
        rhs = rhs
            * pp_ratio(
                params,
                &[v / (b * d), v / (c * d)],
                &[v / d, v / (b * c * d)],
                ni as i64,
            )?;
    }
    Ok(against_mass(lhs.value, rhs, lhs.mass))
}

/// `V_1^m(a; b; c; z)` against `_{2m+10}V_{2m+9}(az; b_2, …, b_{m+2}, c_1 z, …, c_{m+3} z)`
/// for a series terminated by `b_1 = q^{−N}`.
pub fn one_variable_residual<T: Real>(
    params: &EllipticParams<T>,
    a: Complex<T>,
    big_n: usize,
    b_rest: &[Complex<T>],
    c: &[Complex<T>],
    z: Complex<T>,
) -> Result<T> {
    let mut b = vec![params.q_int(-(big_n as i64))];
    b.extend_from_slice(b_rest);
    if c.len() != b.len() + 1 {
        return Err(Error::Domain("V_1^m needs m + 3 c parameters".into()));
    }
    let mut acc = Accumulator::new();
    for y in 0..=big_n {
        acc.add(v_term(params, a, &b, c, &[z], &[y], None)?);
    }
    let mut bs = b_rest.to_vec();
    bs.extend(c.iter().map(|&cj| cj * z));
    let rhs = very_well_poised(params, a * z, big_n, &bs)?;
    Ok(between(acc.total(), rhs))
}
