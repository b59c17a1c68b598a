//! The elliptic weight function `Φ(w; z; a)` and the coefficient families
//! `A`, `B`, `G`, `C`, `D` built from it.

use num_complex::Complex;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numerics::{int, ratio, Accumulator, EllipticParams, Real, Total};
use crate::subset::Subset;

pub mod identities;

/// Largest `n` for which the `n!`-term sum defining `Φ` is evaluated.
pub const PERMUTATION_CAP: usize = 8;

/// Advances `p` to the next permutation in lexicographic order; false after the last one.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `Φ(w; z; a)` with the absolute mass of its permutation sum:
///
/// `Σ_σ ∏_{i<j} θ(q z_{σi}/z_{σj}) θ(w_i/z_{σj}) / (θ(z_{σi}/z_{σj}) θ(q w_i/z_{σj}))
///      ∏_j θ(a q^{−j} w_j/z_{σj}) / θ(q w_j/z_{σj})`.
///
/// The empty weight function (`n = 0`) is 1.
pub fn phi_total<T: Real>(
    params: &EllipticParams<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
    a: Complex<T>,
) -> Result<Total<T>> {
    let n = w.len();
    if z.len() != n {
        return Err(Error::Domain(format!(
            "weight function needs equal lengths, got {} and {}",
            n,
            z.len()
        )));
    }
    if n > PERMUTATION_CAP {
        return Err(Error::Capacity {
            what: "weight function permutation sum",
            size: n,
            cap: PERMUTATION_CAP,
        });
    }
    if n == 0 {
        return Ok(Total::exact(Complex::one()));
    }
    let q = params.q();
    let one = Complex::<T>::one();
    let mut zr = vec![vec![one; n]; n];
    for k in 0..n {
        for l in 0..n {
            if k != l {
                zr[k][l] = ratio(
                    params.theta(q * z[k] / z[l])?,
                    params.theta(z[k] / z[l])?,
                    "weight function: coinciding z",
                )?;
            }
        }
    }
    let mut den = vec![vec![one; n]; n];
    let mut wr = vec![vec![one; n]; n];
    let mut dr = vec![vec![one; n]; n];
    for i in 0..n {
        let shifted = a * params.q_int(-(i as i64) - 1) * w[i];
        for k in 0..n {
            den[i][k] = params.theta(q * w[i] / z[k])?;
            wr[i][k] = ratio(
                params.theta(w[i] / z[k])?,
                den[i][k],
                "weight function pole",
            )?;
            dr[i][k] = ratio(
                params.theta(shifted / z[k])?,
                den[i][k],
                "weight function pole",
            )?;
        }
    }
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut acc = Accumulator::new();
    loop {
        let mut t = one;
        for i in 0..n {
            for j in i + 1..n {
                t = t * zr[sigma[i]][sigma[j]] * wr[i][sigma[j]];
            }
            t = t * dr[i][sigma[i]];
        }
        acc.add(t);
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    let total = acc.total();
    crate::numerics::finite(total.value, "weight function")?;
    Ok(total)
}

/// `Φ(w; z; a)`; see [`phi_total`].
pub fn phi<T: Real>(
    params: &EllipticParams<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
    a: Complex<T>,
) -> Result<Complex<T>> {
    Ok(phi_total(params, w, z, a)?.value)
}

fn check_ambient<T>(s: &Subset, z: &[Complex<T>]) -> Result<()> {
    if s.ambient() != z.len() {
        return Err(Error::Domain(format!(
            "subset of a {}-set used with {} spectral parameters",
            s.ambient(),
            z.len()
        )));
    }
    Ok(())
}

/// `∏_{i∈I, j∈J} θ(x_i/y_j)/θ(q x_i/y_j)`.
pub(crate) fn cross_ti<T: Real>(
    params: &EllipticParams<T>,
    x: &[Complex<T>],
    y: &[Complex<T>],
) -> Result<Complex<T>> {
    let q = params.q();
    let mut v = Complex::one();
    for &xi in x {
        for &yj in y {
            v = v * params.theta_ratio(xi / yj, q * xi / yj)?;
        }
    }
    Ok(v)
}

/// `∏_{i∈I, j∈J} θ(q x_i/y_j)/θ(x_i/y_j)`.
pub(crate) fn cross_tq<T: Real>(
    params: &EllipticParams<T>,
    x: &[Complex<T>],
    y: &[Complex<T>],
) -> Result<Complex<T>> {
    let q = params.q();
    let mut v = Complex::one();
    for &xi in x {
        for &yj in y {
            v = v * params.theta_ratio(q * xi / yj, xi / yj)?;
        }
    }
    Ok(v)
}

/// Which of the three single-subset coefficient families to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffKind {
    A,
    B,
    G,
}

/// `A_{S,z}(λ) = (q^{λ+2+N−2m})_m / (q^{λ+2−m})_m ∏_{i∈S, j∈S^c} θ(z_i/z_j)/θ(q z_i/z_j)`, `m = |S|`.
pub fn coeff_a<T: Real>(
    params: &EllipticParams<T>,
    s: &Subset,
    z: &[Complex<T>],
    lambda: Complex<T>,
) -> Result<Complex<T>> {
    check_ambient(s, z)?;
    let (big_n, m) = (z.len() as i64, s.len() as i64);
    let num = params.q_power(lambda + int(2 + big_n - 2 * m))?;
    let den = params.q_power(lambda + int(2 - m))?;
    let cross = cross_ti(params, &s.restrict(z), &s.complement().restrict(z))?;
    Ok(params.pochhammer_ratio(num, den, m)? * cross)
}

/// `B_{S,z}(λ) = q^{m(N−m)} (q^{λ+1−m})_{N−m} / (q^{λ+1})_{N−m} ∏_{i∈S^c, j∈S} θ(z_i/z_j)/θ(q z_i/z_j)`.
pub fn coeff_b<T: Real>(
    params: &EllipticParams<T>,
    s: &Subset,
    z: &[Complex<T>],
    lambda: Complex<T>,
) -> Result<Complex<T>> {
    check_ambient(s, z)?;
    let (big_n, m) = (z.len() as i64, s.len() as i64);
    let one = Complex::<T>::one();
    let num = params.q_power(lambda + one - int(m))?;
    let den = params.q_power(lambda + one)?;
    let cross = cross_ti(params, &s.complement().restrict(z), &s.restrict(z))?;
    Ok(params.q_int(m * (big_n - m)) * params.pochhammer_ratio(num, den, big_n - m)? * cross)
}

/// `G_{S,z}(λ) = (−1)^m q^{−C(m,2)} q^{−Nλ/2} (q^{λ+1+m−N})_m (q^{λ+2+2m−N})_{N−m}
/// ∏_{i∈S, j∈S^c} θ(z_i/z_j)/θ(q z_i/z_j)`.
pub fn coeff_g<T: Real>(
    params: &EllipticParams<T>,
    s: &Subset,
    z: &[Complex<T>],
    lambda: Complex<T>,
) -> Result<Complex<T>> {
    check_ambient(s, z)?;
    let (big_n, m) = (z.len() as i64, s.len() as i64);
    let sign = if m % 2 == 0 {
        Complex::one()
    } else {
        -Complex::<T>::one()
    };
    let half = Complex::new(crate::numerics::real::<T>(-0.5), T::zero());
    let pre =
        sign * params.q_int(-(m * (m - 1) / 2)) * params.q_power(half * int(big_n) * lambda)?;
    let p1 = params.pochhammer(params.q_power(lambda + int(1 + m - big_n))?, m)?;
    let p2 = params.pochhammer(params.q_power(lambda + int(2 + 2 * m - big_n))?, big_n - m)?;
    let cross = cross_ti(params, &s.restrict(z), &s.complement().restrict(z))?;
    crate::numerics::finite(pre * p1 * p2 * cross, "coefficient G")
}

/// Dispatches to [`coeff_a`], [`coeff_b`] or [`coeff_g`].
pub fn coeff<T: Real>(
    params: &EllipticParams<T>,
    kind: CoeffKind,
    s: &Subset,
    z: &[Complex<T>],
    lambda: Complex<T>,
) -> Result<Complex<T>> {
    match kind {
        CoeffKind::A => coeff_a(params, s, z, lambda),
        CoeffKind::B => coeff_b(params, s, z, lambda),
        CoeffKind::G => coeff_g(params, s, z, lambda),
    }
}

fn check_pair<T>(s: &Subset, t: &Subset, z: &[Complex<T>]) -> Result<()> {
    check_ambient(s, z)?;
    check_ambient(t, z)?;
    if s.len() != t.len() {
        return Err(Error::Domain(format!(
            "C and D need |S| = |T|, got {} and {}",
            s.len(),
            t.len()
        )));
    }
    Ok(())
}

/// `C_{S,T,z}(λ) = θ(q)^n (q^{λ+2+n−m})_{m−n} / (q^{λ+2+N−2m})_m
/// ∏_{i∈T, j∈T^c} θ(q z_i/z_j)/θ(z_i/z_j) · Φ(z_{T∖S}; z_{S∖T}; q^{λ+2+n−m})`
/// with `m = |S| = |T|` and `n = |S∖T|`.
pub fn coeff_c<T: Real>(
    params: &EllipticParams<T>,
    s: &Subset,
    t: &Subset,
    z: &[Complex<T>],
    lambda: Complex<T>,
) -> Result<Complex<T>> {
    check_pair(s, t, z)?;
    let big_n = z.len() as i64;
    let m = s.len() as i64;
    let n = s.difference(t).len() as i64;
    let arg = params.q_power(lambda + int(2 + n - m))?;
    let num = params.theta(params.q())?.powi(n as i32) * params.pochhammer(arg, m - n)?;
    let den = params.pochhammer(params.q_power(lambda + int(2 + big_n - 2 * m))?, m)?;
    let cross = cross_tq(params, &t.restrict(z), &t.complement().restrict(z))?;
    let f = phi(
        params,
        &t.difference(s).restrict(z),
        &s.difference(t).restrict(z),
        arg,
    )?;
    Ok(ratio(num, den, "coefficient C")? * cross * f)
}

/// `D_{S,T,z}(μ) = θ(q)^n (q^{μ+2−m})_m / ((q^{−μ+m−N})_n (q^{μ+2+N−2m})_m)
/// ∏_{i∈T, j∈T^c} θ(q z_i/z_j)/θ(z_i/z_j) · Φ(z_{T∖S}; z_{S∖T}; q^{−μ+m+n−N})`.
pub fn coeff_d<T: Real>(
    params: &EllipticParams<T>,
    s: &Subset,
    t: &Subset,
    z: &[Complex<T>],
    mu: Complex<T>,
) -> Result<Complex<T>> {
    check_pair(s, t, z)?;
    let big_n = z.len() as i64;
    let m = s.len() as i64;
    let n = s.difference(t).len() as i64;
    let num = params.theta(params.q())?.powi(n as i32)
        * params.pochhammer(params.q_power(mu + int(2 - m))?, m)?;
    let den = params.pochhammer(params.q_power(-mu + int(m - big_n))?, n)?
        * params.pochhammer(params.q_power(mu + int(2 + big_n - 2 * m))?, m)?;
    let cross = cross_tq(params, &t.restrict(z), &t.complement().restrict(z))?;
    let arg = params.q_power(-mu + int(m + n - big_n))?;
    let f = phi(
        params,
        &t.difference(s).restrict(z),
        &s.difference(t).restrict(z),
        arg,
    )?;
    Ok(ratio(num, den, "coefficient D")? * cross * f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::cplx;

    #[test]
    fn permutations_in_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }

    #[test]
    fn trivial_coefficients() {
        let p = EllipticParams::<f64>::new(cplx(0.13, 0.21), cplx(0.55, 0.3)).unwrap();
        let z = [cplx(1.2, 0.3), cplx(0.6, -0.4), cplx(-0.9, 0.8)];
        let lam = cplx(0.37, 0.21);
        for kind in [CoeffKind::A, CoeffKind::B, CoeffKind::G] {
            let v = coeff(&p, kind, &Subset::empty(3), &z, lam).unwrap();
            if kind != CoeffKind::G {
                assert!((v - Complex::<f64>::one()).norm() < 1e-13, "{kind:?}");
            }
        }
        let full = coeff_a(&p, &Subset::full(3), &z, lam).unwrap();
        assert!((full - Complex::<f64>::one()).norm() < 1e-13);
        assert!(phi(&p, &z[..2], &z, lam).is_err());
        let big = vec![cplx(1.0, 0.1); 9];
        assert!(matches!(
            phi(&p, &big, &big, lam),
            Err(Error::Capacity { .. })
        ));
    }
}
