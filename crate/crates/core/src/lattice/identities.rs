//! Residuals of identities satisfied by the lattice partition functions.
//!
//! Every function returns `|L − R| / max(|L|, |R|, mass)` for one boundary,
//! where `mass` is the absolute mass of the state sums involved.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::{all_sign_vectors, charge, flip_reverse, partition_function_total, Boundary, Sign};
use crate::error::{Error, Result};
use crate::numerics::{int, real, Accumulator, EllipticParams, Real, Total};
use crate::residual::{against_mass, between, max_residual};

/// Cuts the lattice after column `at` and sums over the labels of the cut:
/// `Z = Σ_x Z(λ; w'; a', b', c, x) · Z(λ − |b'|; w''; a'', b'', x, d)`.
pub fn splitting_vertical<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
    b: &Boundary,
    at: usize,
) -> Result<T> {
    if at > b.columns() {
        return Err(Error::Domain("split position outside the lattice".into()));
    }
    let lhs = partition_function_total(params, lambda, w, z, b)?;
    let shift = lambda - int::<T>(charge(&b.top[..at]) as i64);
    let mut acc = Accumulator::new();
    for x in all_sign_vectors(b.rows()) {
        let first = Boundary::new(
            b.bottom[..at].to_vec(),
            b.top[..at].to_vec(),
            b.left.clone(),
            x.clone(),
        )?;
        let second = Boundary::new(
            b.bottom[at..].to_vec(),
            b.top[at..].to_vec(),
            x,
            b.right.clone(),
        )?;
        let l = partition_function_total(params, lambda, &w[..at], z, &first)?;
        if l.value.is_zero() {
            continue;
        }
        let r = partition_function_total(params, shift, &w[at..], z, &second)?;
        acc.add_with_mass(l.value * r.value, l.mass * r.mass);
    }
    Ok(between(lhs, acc.total()))
}

/// Cuts the lattice below row `at`:
/// `Z = Σ_x Z(λ; z'; x, b, c', d') · Z(λ − |c'|; z''; a, x, c'', d'')`.
pub fn splitting_horizontal<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
    b: &Boundary,
    at: usize,
) -> Result<T> {
    if at > b.rows() {
        return Err(Error::Domain("split position outside the lattice".into()));
    }
    let lhs = partition_function_total(params, lambda, w, z, b)?;
    let shift = lambda - int::<T>(charge(&b.left[..at]) as i64);
    let mut acc = Accumulator::new();
    for x in all_sign_vectors(b.columns()) {
        let upper = Boundary::new(
            x.clone(),
            b.top.clone(),
            b.left[..at].to_vec(),
            b.right[..at].to_vec(),
        )?;
        let lower = Boundary::new(
            b.bottom.clone(),
            x,
            b.left[at..].to_vec(),
            b.right[at..].to_vec(),
        )?;
        let u = partition_function_total(params, lambda, w, &z[..at], &upper)?;
        if u.value.is_zero() {
            continue;
        }
        let l = partition_function_total(params, shift, w, &z[at..], &lower)?;
        acc.add_with_mass(u.value * l.value, u.mass * l.mass);
    }
    Ok(between(lhs, acc.total()))
}

/// At coincident spectral parameters `Z(λ; z; z; a, b, c, d) = δ_{ad} δ_{bc}`.
pub fn coincident_delta<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    z: &[Complex<T>],
    b: &Boundary,
) -> Result<T> {
    if b.columns() != b.rows() {
        return Err(Error::Domain(
            "coincident parameters need a square lattice".into(),
        ));
    }
    let lhs = partition_function_total(params, lambda, z, z, b)?;
    let delta = if b.bottom == b.right && b.top == b.left {
        Complex::one()
    } else {
        Complex::zero()
    };
    Ok(against_mass(lhs.value, delta, lhs.mass))
}

/// With every boundary edge `+` the partition function is 1.
pub fn all_plus<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
) -> Result<T> {
    let b = Boundary::uniform(w.len(), z.len(), Sign::Plus);
    let lhs = partition_function_total(params, lambda, w, z, &b)?;
    Ok(against_mass(lhs.value, Complex::one(), lhs.mass))
}

/// Closed form for bottom and top `+`, left and right `−`:
/// `∏ θ(w_i/z_j)/θ(q w_i/z_j) · (q^{λ+2+n−m})_m / (q^{λ+2−m})_m`.
pub fn plus_minus_product<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
) -> Result<Complex<T>> {
    let (m, n) = (w.len() as i64, z.len() as i64);
    let q = params.q();
    let mut v = Complex::<T>::one();
    for &wi in w {
        for &zj in z {
            v = v * params.theta_ratio(wi / zj, q * wi / zj)?;
        }
    }
    let num = params.q_power(lambda + int(2 + n - m))?;
    let den = params.q_power(lambda + int(2 - m))?;
    Ok(v * params.pochhammer_ratio(num, den, m)?)
}

/// Residual of [`plus_minus_product`] against the lattice.
pub fn plus_minus<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
) -> Result<T> {
    let b = Boundary {
        bottom: vec![Sign::Plus; w.len()],
        top: vec![Sign::Plus; w.len()],
        left: vec![Sign::Minus; z.len()],
        right: vec![Sign::Minus; z.len()],
    };
    let lhs = partition_function_total(params, lambda, w, z, &b)?;
    let rhs = plus_minus_product(params, lambda, w, z)?;
    Ok(against_mass(lhs.value, rhs, lhs.mass))
}

/// The scalar factor relating a lattice to its crossed (transposed) version:
/// `(−1)^{(|c|−|d|)/2} q^{−mn/2} ∏ θ(z_i/w_j)/θ(z_i/(q w_j))
///  ∏_{j≤n} F(λ − c_1 − … − c_j) / F(λ − d_1 − … − d_j − |b|)`.
pub fn crossing_prefactor<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
    b: &Boundary,
) -> Result<Complex<T>> {
    let (m, n) = (w.len(), z.len());
    let q = params.q();
    let s = (charge(&b.left) - charge(&b.right)) / 2;
    let mut v = if s % 2 == 0 {
        Complex::one()
    } else {
        -Complex::<T>::one()
    };
    v = v * params.q_power(Complex::new(
        real::<T>(-0.5) * real((m * n) as f64),
        T::zero(),
    ))?;
    for &zi in z {
        for &wj in w {
            v = v * params.theta_ratio(zi / wj, zi / (q * wj))?;
        }
    }
    let top = charge(&b.top);
    for j in 1..=n {
        let cj = charge(&b.left[..j]);
        let dj = charge(&b.right[..j]);
        let num = params.cap_f(lambda - int(cj as i64))?;
        let den = params.cap_f(lambda - int((dj + top) as i64))?;
        v = v * crate::numerics::ratio(num, den, "crossing prefactor")?;
    }
    Ok(v)
}

/// Crossing symmetry: `Z(λ; w; z; a, b, c, d)` equals [`crossing_prefactor`] times the
/// partition function at `λ − |c|` of the lattice with columns `q^{−1}z` (in reversed
/// order), rows `w`, bottom `−reverse(d)`, top `−reverse(c)`, left `a` and right `b`.
pub fn crossing<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
    b: &Boundary,
) -> Result<T> {
    let lhs = partition_function_total(params, lambda, w, z, b)?;
    let q = params.q();
    let cols: Vec<_> = z.iter().rev().map(|&zi| zi / q).collect();
    let crossed = Boundary::new(
        flip_reverse(&b.right),
        flip_reverse(&b.left),
        b.bottom.clone(),
        b.top.clone(),
    )?;
    let shift = lambda - int::<T>(charge(&b.left) as i64);
    let inner = partition_function_total(params, shift, &cols, w, &crossed)?;
    let pre = crossing_prefactor(params, lambda, w, z, b)?;
    let rhs = Total {
        value: pre * inner.value,
        mass: pre.norm() * inner.mass,
    };
    Ok(between(lhs, rhs))
}

/// Square-lattice reduction: with columns `(w, z)`, rows `(z, w)`, bottom and right all `+`,
/// top `(a, b)` and left `(d, c)`, the partition function equals the m×n one with bottom `c`,
/// top `a`, left `d` and right `b`. Here `a`, `c` have length m and `b`, `d` length n.
pub fn square_lattice<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
    a: &[Sign],
    b: &[Sign],
    c: &[Sign],
    d: &[Sign],
) -> Result<T> {
    let (m, n) = (w.len(), z.len());
    if a.len() != m || c.len() != m || b.len() != n || d.len() != n {
        return Err(Error::Domain(
            "boundary lengths do not match the spectral vectors".into(),
        ));
    }
    let cols: Vec<_> = w.iter().chain(z).copied().collect();
    let rows: Vec<_> = z.iter().chain(w).copied().collect();
    let big = Boundary::new(
        vec![Sign::Plus; m + n],
        [a, b].concat(),
        [d, c].concat(),
        vec![Sign::Plus; m + n],
    )?;
    let small = Boundary::new(c.to_vec(), a.to_vec(), d.to_vec(), b.to_vec())?;
    let l = partition_function_total(params, lambda, &cols, &rows, &big)?;
    let r = partition_function_total(params, lambda, w, z, &small)?;
    Ok(between(l, r))
}

/// Largest residual of `f` over every balanced boundary of an m×n lattice.
pub fn max_over_boundaries<T: Real>(
    m: usize,
    n: usize,
    mut f: impl FnMut(&Boundary) -> Result<T>,
) -> Result<T> {
    let mut worst = T::zero();
    for b in Boundary::all_balanced(m, n) {
        worst = max_residual(worst, f(&b)?);
    }
    Ok(worst)
}
