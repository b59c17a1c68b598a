//! Residuals of identities satisfied by `Φ` and links between `Φ`, the
//! coefficient families and the lattice partition functions.

use num_complex::Complex;
use num_traits::One;

use super::{coeff_a, cross_ti, phi, phi_total};
use crate::error::{Error, Result};
use crate::lattice::{partition_function_total, Boundary, Sign};
use crate::numerics::{int, ratio, Accumulator, EllipticParams, Real, Total};
use crate::residual::{against_mass, between};
use crate::subset::Subset;

/// The three symmetries of `Φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiSymmetry {
    /// `Φ(w; z; a) = Φ(z^{−1}; w^{−1}; a)`.
    ZwInversion,
    /// `Φ(w; z; a) = q^{−n} a^n ∏ θ(w_i/z_j)/θ(q w_i/z_j) · Φ(w^{−1}; q z^{−1}; q^{n+2}/a)`.
    Crossing1,
    /// `Φ(w; z; a) = q^{−n} a^n ∏ θ(w_i/z_j)/θ(q w_i/z_j) · Φ(z; q w; q^{n+2}/a)`.
    Crossing2,
}

fn inv<T: Real>(v: &[Complex<T>]) -> Vec<Complex<T>> {
    v.iter().map(|x| x.inv()).collect()
}

fn scale<T: Real>(v: &[Complex<T>], s: Complex<T>) -> Vec<Complex<T>> {
    v.iter().map(|&x| x * s).collect()
}

/// Residual of one symmetry of `Φ` at the given point.
pub fn phi_symmetry_residual<T: Real>(
    params: &EllipticParams<T>,
    kind: PhiSymmetry,
    w: &[Complex<T>],
    z: &[Complex<T>],
    a: Complex<T>,
) -> Result<T> {
    let lhs = phi_total(params, w, z, a)?;
    let n = w.len() as i64;
    let q = params.q();
    let rhs = match kind {
        PhiSymmetry::ZwInversion => phi_total(params, &inv(z), &inv(w), a)?,
        PhiSymmetry::Crossing1 | PhiSymmetry::Crossing2 => {
            let pre = params.q_int(-n) * a.powi(n as i32) * cross_ti(params, w, z)?;
            let b = params.q_int(n + 2) / a;
            let inner = if kind == PhiSymmetry::Crossing1 {
                phi_total(params, &inv(w), &scale(&inv(z), q), b)?
            } else {
                phi_total(params, z, &scale(w, q), b)?
            };
            Total {
                value: pre * inner.value,
                mass: pre.norm() * inner.mass,
            }
        }
    };
    Ok(between(lhs, rhs))
}

/// Closed form of `Φ(w; z; a)` at `z_j = q^{j−1} ζ`:
/// `(q)_n/θ(q)^n ∏_j θ(q^{−n} a w_j/ζ)/θ(q w_j/ζ)`.
pub fn phi_geometric_z<T: Real>(
    params: &EllipticParams<T>,
    w: &[Complex<T>],
    zeta: Complex<T>,
    a: Complex<T>,
) -> Result<Complex<T>> {
    let n = w.len() as i64;
    let q = params.q();
    let mut v = ratio(
        params.pochhammer(q, n)?,
        params.theta(q)?.powi(n as i32),
        "(q)_n/θ(q)^n",
    )?;
    for &wj in w {
        v = v * params.theta_ratio(params.q_int(-n) * a * wj / zeta, q * wj / zeta)?;
    }
    Ok(v)
}

/// Closed form of `Φ(w; z; a)` at `w_j = q^{j−1} ω`:
/// `(q)_n/θ(q)^n ∏_j θ(a ω/(q z_j))/θ(q^n ω/z_j)`.
pub fn phi_geometric_w<T: Real>(
    params: &EllipticParams<T>,
    omega: Complex<T>,
    z: &[Complex<T>],
    a: Complex<T>,
) -> Result<Complex<T>> {
    let n = z.len() as i64;
    let q = params.q();
    let mut v = ratio(
        params.pochhammer(q, n)?,
        params.theta(q)?.powi(n as i32),
        "(q)_n/θ(q)^n",
    )?;
    for &zj in z {
        v = v * params.theta_ratio(a * omega / (q * zj), params.q_int(n) * omega / zj)?;
    }
    Ok(v)
}

/// `(ζ, qζ, …, q^{n−1}ζ)`.
pub fn geometric<T: Real>(
    params: &EllipticParams<T>,
    start: Complex<T>,
    n: usize,
) -> Vec<Complex<T>> {
    (0..n).map(|j| params.q_int(j as i64) * start).collect()
}

/// Residual of the factorization at `z_j = q^{j−1} ζ`.
pub fn geometric_z_residual<T: Real>(
    params: &EllipticParams<T>,
    w: &[Complex<T>],
    zeta: Complex<T>,
    a: Complex<T>,
) -> Result<T> {
    let z = geometric(params, zeta, w.len());
    let lhs = phi_total(params, w, &z, a)?;
    let rhs = phi_geometric_z(params, w, zeta, a)?;
    Ok(against_mass(lhs.value, rhs, lhs.mass))
}

/// Residual of the factorization at `w_j = q^{j−1} ω`.
pub fn geometric_w_residual<T: Real>(
    params: &EllipticParams<T>,
    omega: Complex<T>,
    z: &[Complex<T>],
    a: Complex<T>,
) -> Result<T> {
    let w = geometric(params, omega, z.len());
    let lhs = phi_total(params, &w, z, a)?;
    let rhs = phi_geometric_w(params, omega, z, a)?;
    Ok(against_mass(lhs.value, rhs, lhs.mass))
}

/// Ordered tuples `(T_1, …, T_k)` of disjoint subsets of `[n]` with `|T_i| = sizes[i]`.
fn ordered_partitions(n: usize, sizes: &[usize]) -> Vec<Vec<Subset>> {
    fn go(avail: Subset, sizes: &[usize], cur: &mut Vec<Subset>, out: &mut Vec<Vec<Subset>>) {
        let Some((&k, rest)) = sizes.split_first() else {
            out.push(cur.clone());
            return;
        };
        for t in avail.subsets().filter(|t| t.len() == k) {
            cur.push(t);
            go(avail.difference(&t), rest, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(Subset::full(n), sizes, &mut Vec::new(), &mut out);
    out
}

/// The right-hand side of the block decomposition of `Φ(w; z; a)` along `[n] = S_1 ⊔ … ⊔ S_k`:
///
/// `Σ_{T_1 ⊔ … ⊔ T_k, |T_l| = |S_l|} ∏_{k<l} [∏_{i∈S_k, j∈T_l} θ(w_i/z_j)/θ(q w_i/z_j)
///  ∏_{i∈T_k, j∈T_l} θ(q z_i/z_j)/θ(z_i/z_j)] ∏_k Φ(w_{S_k}; z_{T_k}; q^{−|S_1|−…−|S_{k−1}|} a)`.
pub fn phi_decomposition<T: Real>(
    params: &EllipticParams<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
    a: Complex<T>,
    blocks: &[Subset],
) -> Result<Total<T>> {
    let n = w.len();
    if z.len() != n {
        return Err(Error::Domain("weight function needs equal lengths".into()));
    }
    let mut seen = Subset::empty(n);
    for s in blocks {
        if s.ambient() != n || !s.intersection(&seen).is_empty() {
            return Err(Error::Domain(
                "blocks must be disjoint subsets of [n]".into(),
            ));
        }
        seen = seen.union(s);
    }
    if seen != Subset::full(n) {
        return Err(Error::Domain("blocks must cover [n]".into()));
    }
    let sizes: Vec<usize> = blocks.iter().map(|s| s.len()).collect();
    let mut acc = Accumulator::new();
    for ts in ordered_partitions(n, &sizes) {
        let mut t = Complex::<T>::one();
        let mut mass = T::one();
        for k in 0..blocks.len() {
            for l in k + 1..blocks.len() {
                t = t * cross_ti(params, &blocks[k].restrict(w), &ts[l].restrict(z))?;
                t = t * super::cross_tq(params, &ts[k].restrict(z), &ts[l].restrict(z))?;
            }
        }
        mass = mass * t.norm();
        let mut shift = 0i64;
        for (s, tk) in blocks.iter().zip(&ts) {
            let f = phi_total(
                params,
                &s.restrict(w),
                &tk.restrict(z),
                params.q_int(-shift) * a,
            )?;
            t = t * f.value;
            mass = mass * f.mass;
            shift += s.len() as i64;
        }
        acc.add_with_mass(t, mass);
    }
    Ok(acc.total())
}

/// Residual of the block decomposition against the direct permutation sum.
pub fn decomposition_residual<T: Real>(
    params: &EllipticParams<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
    a: Complex<T>,
    blocks: &[Subset],
) -> Result<T> {
    let lhs = phi_total(params, w, z, a)?;
    let rhs = phi_decomposition(params, w, z, a, blocks)?;
    Ok(between(lhs, rhs))
}

/// Every set partition of `[n]` (blocks in order of their least element).
pub fn set_partitions(n: usize) -> Vec<Vec<Subset>> {
    fn go(i: usize, n: usize, cur: &mut Vec<Subset>, out: &mut Vec<Vec<Subset>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..cur.len() {
            let old = cur[k];
            cur[k] = old.union(&Subset::from_indices(n, &[i]).expect("index in range"));
            go(i + 1, n, cur, out);
            cur[k] = old;
        }
        cur.push(Subset::from_indices(n, &[i]).expect("index in range"));
        go(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// `θ(q)^n/(q^{−λ−n})_n · Φ(w; z; q^{−λ})`, the domain wall partition function.
pub fn domain_wall_from_phi<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
) -> Result<Total<T>> {
    let n = w.len() as i64;
    let pre = ratio(
        params.theta(params.q())?.powi(n as i32),
        params.pochhammer(params.q_power(-lambda - int(n))?, n)?,
        "domain wall prefactor",
    )?;
    let f = phi_total(params, w, z, params.q_power(-lambda)?)?;
    Ok(Total {
        value: pre * f.value,
        mass: pre.norm() * f.mass,
    })
}

/// `θ(q)^n/(q^{λ+2−n})_n · Φ(w; z; q^{λ+2})`, the partition function with the reflected
/// domain wall boundary.
pub fn domain_wall_dual_from_phi<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
) -> Result<Total<T>> {
    let n = w.len() as i64;
    let pre = ratio(
        params.theta(params.q())?.powi(n as i32),
        params.pochhammer(params.q_power(lambda + int(2 - n))?, n)?,
        "domain wall prefactor",
    )?;
    let f = phi_total(params, w, z, params.q_power(lambda + int(2))?)?;
    Ok(Total {
        value: pre * f.value,
        mass: pre.norm() * f.mass,
    })
}

/// Residual of the domain wall partition function against [`domain_wall_from_phi`].
pub fn domain_wall_residual<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
) -> Result<T> {
    let z_lat = partition_function_total(params, lambda, w, z, &Boundary::domain_wall(w.len()))?;
    Ok(between(z_lat, domain_wall_from_phi(params, lambda, w, z)?))
}

/// Residual of the reflected domain wall partition function against
/// [`domain_wall_dual_from_phi`].
pub fn domain_wall_dual_residual<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
) -> Result<T> {
    let b = Boundary::domain_wall_dual(w.len());
    let z_lat = partition_function_total(params, lambda, w, z, &b)?;
    Ok(between(
        z_lat,
        domain_wall_dual_from_phi(params, lambda, w, z)?,
    ))
}

fn signs(plus: usize, minus: usize) -> Vec<Sign> {
    let mut v = vec![Sign::Plus; plus];
    v.extend(std::iter::repeat(Sign::Minus).take(minus));
    v
}

/// `C_{S,T,z}(λ)` from a lattice: columns `(z_T, z_{T^c})` with top `(+, −)`, rows
/// `(z_S, z_{S^c})` with left `(+, −)`, bottom and right all `+`, divided by `A_{T,z}(λ)`.
pub fn coeff_c_lattice<T: Real>(
    params: &EllipticParams<T>,
    s: &Subset,
    t: &Subset,
    z: &[Complex<T>],
    lambda: Complex<T>,
) -> Result<Complex<T>> {
    let big_n = z.len();
    let (sc, tc) = (s.complement(), t.complement());
    let cols = [t.restrict(z), tc.restrict(z)].concat();
    let rows = [s.restrict(z), sc.restrict(z)].concat();
    let b = Boundary::new(
        vec![Sign::Plus; big_n],
        signs(t.len(), tc.len()),
        signs(s.len(), sc.len()),
        vec![Sign::Plus; big_n],
    )?;
    let zz = partition_function_total(params, lambda, &cols, &rows, &b)?.value;
    ratio(zz, coeff_a(params, t, z, lambda)?, "C from the lattice")
}

/// `D_{S,T,z}(λ)` from a lattice: columns `(z_{S^c}, z_S)` with top `(−, +)`, rows
/// `(z_{T^c}, z_T)` with left `(−, +)`, bottom and right all `+`, divided by `A_{T,z}(λ)`.
pub fn coeff_d_lattice<T: Real>(
    params: &EllipticParams<T>,
    s: &Subset,
    t: &Subset,
    z: &[Complex<T>],
    lambda: Complex<T>,
) -> Result<Complex<T>> {
    let big_n = z.len();
    let (sc, tc) = (s.complement(), t.complement());
    let cols = [sc.restrict(z), s.restrict(z)].concat();
    let rows = [tc.restrict(z), t.restrict(z)].concat();
    let mut top = vec![Sign::Minus; sc.len()];
    top.extend(vec![Sign::Plus; s.len()]);
    let mut left = vec![Sign::Minus; tc.len()];
    left.extend(vec![Sign::Plus; t.len()]);
    let b = Boundary::new(vec![Sign::Plus; big_n], top, left, vec![Sign::Plus; big_n])?;
    let zz = partition_function_total(params, lambda, &cols, &rows, &b)?.value;
    ratio(zz, coeff_a(params, t, z, lambda)?, "D from the lattice")
}

/// Residual of `Φ` under swapping `w_i` and `w_j`.
pub fn w_transposition_residual<T: Real>(
    params: &EllipticParams<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
    a: Complex<T>,
    i: usize,
    j: usize,
) -> Result<T> {
    let mut swapped = w.to_vec();
    swapped.swap(i, j);
    Ok(between(
        phi_total(params, w, z, a)?,
        phi_total(params, &swapped, z, a)?,
    ))
}

/// `Φ` evaluated with `z_2 = z_1 + h`, for probing the removable singularity at `z_1 = z_2`.
pub fn phi_near_coincidence<T: Real>(
    params: &EllipticParams<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
    a: Complex<T>,
    h: Complex<T>,
) -> Result<Complex<T>> {
    if z.len() < 2 {
        return Err(Error::Domain("need at least two z parameters".into()));
    }
    let mut zz = z.to_vec();
    zz[1] = zz[0] + h;
    phi(params, w, &zz, a)
}
