//! Identities satisfied by the 6j-symbols: unitarity, the dynamical Yang–Baxter
//! (hexagon) relation, the symmetries under complementation and λ-reflection,
//! the `V = ∅` summation and the trivial vanishing conditions.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::{admissible_indices, r6j_total, Method, Shift, SixJIndex};
use crate::error::Result;
use crate::numerics::{int, ratio, Accumulator, EllipticParams, Real, Total};
use crate::residual::{against_mass, between, max_residual};
use crate::subset::Subset;
use crate::weight::{coeff_g, cross_ti, cross_tq, phi};

/// Memoized 6j-symbols for a fixed base λ and a few spectral vectors, keyed by
/// the vector pair, an integer shift of λ and the four subsets.
struct Table<'a, T: Real> {
    params: &'a EllipticParams<T>,
    lambda: Complex<T>,
    vectors: Vec<&'a [Complex<T>]>,
    cache: HashMap<(usize, usize, i64, [u64; 4]), Complex<T>>,
}

impl<'a, T: Real> Table<'a, T> {
    fn new(
        params: &'a EllipticParams<T>,
        lambda: Complex<T>,
        vectors: Vec<&'a [Complex<T>]>,
    ) -> Self {
        Self {
            params,
            lambda,
            vectors,
            cache: HashMap::new(),
        }
    }

    /// `R_{SU}^{TV}(λ+shift; vectors[a]; vectors[b])`.
    fn get(
        &mut self,
        a: usize,
        b: usize,
        shift: i64,
        s: Subset,
        t: Subset,
        u: Subset,
        v: Subset,
    ) -> Result<Complex<T>> {
        let key = (a, b, shift, [s.bits(), t.bits(), u.bits(), v.bits()]);
        if let Some(&r) = self.cache.get(&key) {
            return Ok(r);
        }
        let idx = SixJIndex::new(
            s,
            t,
            u,
            v,
            self.vectors[a].to_vec(),
            self.vectors[b].to_vec(),
            self.lambda + int(shift),
        )?;
        let r = r6j_total(self.params, &idx, Method::Mcmt)?.value;
        self.cache.insert(key, r);
        Ok(r)
    }
}

/// Largest residual of `Σ_{X,Y} R_{SU}^{XY}(λ; w; z) R_{YX}^{VT}(λ; z; w) = δ_{ST} δ_{UV}`
/// over all `S, T ⊆ [M]`, `U, V ⊆ [N]` with `|S|+|U| = |T|+|V|`.
pub fn unitarity_residual<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
) -> Result<T> {
    let (m, n) = (w.len(), z.len());
    let mut table = Table::new(params, lambda, vec![w, z]);
    let mut worst = T::zero();
    for [s, t, u, v] in admissible_indices(m, n) {
        let mut acc = Accumulator::new();
        for x in Subset::all(m) {
            for y in Subset::all(n) {
                if x.len() + y.len() != s.len() + u.len() {
                    continue;
                }
                let a = table.get(0, 1, 0, s, x, u, y)?;
                if a.is_zero() {
                    continue;
                }
                acc.add(a * table.get(1, 0, 0, y, v, x, t)?);
            }
        }
        let expect = if s == t && u == v {
            Complex::one()
        } else {
            Complex::zero()
        };
        worst = max_residual(worst, against_mass(acc.value(), expect, acc.mass()));
    }
    Ok(worst)
}

/// Largest residual of the dynamical Yang–Baxter relation for 6j-symbols with
/// spectral vectors `u` (size L), `w` (size M), `z` (size N):
///
/// `Σ R_{RT}^{XY}(λ+N−2|V|; u; w) R_{XV}^{QZ}(λ; u; z) R_{YZ}^{SU}(λ+L−2|Q|; w; z)
///  = Σ R_{TV}^{YZ}(λ; w; z) R_{RZ}^{XU}(λ+M−2|Y|; u; z) R_{XY}^{QS}(λ; u; w)`
///
/// over all admissible outer indices.
pub fn qdyb_residual<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    u: &[Complex<T>],
    w: &[Complex<T>],
    z: &[Complex<T>],
) -> Result<T> {
    let (l, m, n) = (u.len(), w.len(), z.len());
    let mut table = Table::new(params, lambda, vec![u, w, z]);
    let mut worst = T::zero();
    let sub_l: Vec<_> = Subset::all(l).collect();
    let sub_m: Vec<_> = Subset::all(m).collect();
    let sub_n: Vec<_> = Subset::all(n).collect();
    for &qs in &sub_l {
        for &rs in &sub_l {
            for &s in &sub_m {
                for &t in &sub_m {
                    for &uu in &sub_n {
                        for &v in &sub_n {
                            if qs.len() + s.len() + uu.len() != rs.len() + t.len() + v.len() {
                                continue;
                            }
                            let mut lhs = Accumulator::new();
                            let mut rhs = Accumulator::new();
                            for &x in &sub_l {
                                for &y in &sub_m {
                                    for &zs in &sub_n {
                                        if x.len() + y.len() == rs.len() + t.len()
                                            && y.len() + zs.len() == s.len() + uu.len()
                                        {
                                            let shift = n as i64 - 2 * v.len() as i64;
                                            let a = table.get(0, 1, shift, rs, x, t, y)?;
                                            if !a.is_zero() {
                                                let b = table.get(0, 2, 0, x, qs, v, zs)?;
                                                let shift = l as i64 - 2 * qs.len() as i64;
                                                let c = table.get(1, 2, shift, y, s, zs, uu)?;
                                                lhs.add(a * b * c);
                                            }
                                        }
                                        if x.len() + y.len() == qs.len() + s.len()
                                            && y.len() + zs.len() == t.len() + v.len()
                                        {
                                            let a = table.get(1, 2, 0, t, y, v, zs)?;
                                            if !a.is_zero() {
                                                let shift = m as i64 - 2 * y.len() as i64;
                                                let b = table.get(0, 2, shift, rs, x, zs, uu)?;
                                                let c = table.get(0, 1, 0, x, qs, y, s)?;
                                                rhs.add(a * b * c);
                                            }
                                        }
                                    }
                                }
                            }
                            worst = max_residual(worst, between(lhs.total(), rhs.total()));
                        }
                    }
                }
            }
        }
    }
    Ok(worst)
}

/// The symmetries of the 6j-symbols, and the summation formula at `V = ∅`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// `R_{SU}^{TV}(λ; w; z) = R_{U^c S^c}^{V^c T^c}(λ+M+N−2L; z^{−1}; w^{−1})`.
    OpFlip,
    /// `R_{SU}^{TV}(λ; w; z) = g · R_{V^c T^c}^{U^c S^c}(−λ−2; z^{−1}; w^{−1})`.
    AntipodeFlip,
    /// `R_{SU}^{TV}(λ; w; z) = g · R_{TV}^{SU}(−λ−2+2L−M−N; w; z)`.
    Combined,
    /// The `V = ∅` sum against its closed form.
    VemptySummation,
}

impl Symmetry {
    pub const ALL: [Symmetry; 4] = [
        Symmetry::OpFlip,
        Symmetry::AntipodeFlip,
        Symmetry::Combined,
        Symmetry::VemptySummation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Symmetry::OpFlip => "op_flip",
            Symmetry::AntipodeFlip => "antipode_flip",
            Symmetry::Combined => "combined",
            Symmetry::VemptySummation => "vempty_summation",
        }
    }
}

fn inverted<T: Real>(v: &[Complex<T>]) -> Vec<Complex<T>> {
    v.iter().map(|x| x.inv()).collect()
}

/// `G_{U,z}(λ+N−2|U|) G_{S,w}(λ+M+N−2L) / (G_{T,w}(λ+M−2|T|) G_{V,z}(λ+M+N−2L))`.
pub fn symmetry_factor<T: Real>(
    params: &EllipticParams<T>,
    idx: &SixJIndex<T>,
    l: usize,
) -> Result<Complex<T>> {
    let (m, n, l) = (idx.m() as i64, idx.n() as i64, l as i64);
    let lam = idx.lambda;
    let at = |k: i64| lam + int::<T>(k);
    let num = coeff_g(params, &idx.u, &idx.z, at(n - 2 * idx.u.len() as i64))?
        * coeff_g(params, &idx.s, &idx.w, at(m + n - 2 * l))?;
    let den = coeff_g(params, &idx.t, &idx.w, at(m - 2 * idx.t.len() as i64))?
        * coeff_g(params, &idx.v, &idx.z, at(m + n - 2 * l))?;
    ratio(num, den, "symmetry factor")
}

/// Residual of one symmetry at one index. For [`Symmetry::VemptySummation`] the index
/// must have `V = ∅` (otherwise the residual is 0 by convention, nothing being claimed).
pub fn symmetry_residual<T: Real>(
    params: &EllipticParams<T>,
    kind: Symmetry,
    idx: &SixJIndex<T>,
) -> Result<T> {
    let Some(l) = idx.level() else {
        return Ok(T::zero());
    };
    if kind == Symmetry::VemptySummation {
        if !idx.v.is_empty() {
            return Ok(T::zero());
        }
        let (lhs, rhs) = vempty_summation(params, idx)?;
        return Ok(between(lhs, Total::exact(rhs)));
    }
    let base = r6j_total(params, idx, Method::Mcmt)?;
    let (m, n) = (idx.m() as i64, idx.n() as i64);
    let li = l as i64;
    let (sc, tc, uc, vc) = (
        idx.s.complement(),
        idx.t.complement(),
        idx.u.complement(),
        idx.v.complement(),
    );
    let (zi, wi) = (inverted(&idx.z), inverted(&idx.w));
    let other = match kind {
        Symmetry::OpFlip => {
            let o = SixJIndex::new(uc, vc, sc, tc, zi, wi, idx.lambda + int(m + n - 2 * li))?;
            r6j_total(params, &o, Method::Mcmt)?
        }
        Symmetry::AntipodeFlip => {
            let o = SixJIndex::new(vc, uc, tc, sc, zi, wi, -idx.lambda - int(2))?;
            scaled(
                r6j_total(params, &o, Method::Mcmt)?,
                symmetry_factor(params, idx, l)?,
            )
        }
        Symmetry::Combined => {
            let o = SixJIndex::new(
                idx.t,
                idx.s,
                idx.v,
                idx.u,
                idx.w.clone(),
                idx.z.clone(),
                -idx.lambda + int(-2 + 2 * li - m - n),
            )?;
            scaled(
                r6j_total(params, &o, Method::Mcmt)?,
                symmetry_factor(params, idx, l)?,
            )
        }
        Symmetry::VemptySummation => unreachable!(),
    };
    Ok(between(base, other))
}

fn scaled<T: Real>(t: Total<T>, f: Complex<T>) -> Total<T> {
    Total {
        value: t.value * f,
        mass: t.mass * f.norm(),
    }
}

/// Largest [`symmetry_residual`] over all admissible indices at the given data.
pub fn symmetry_max<T: Real>(
    params: &EllipticParams<T>,
    kind: Symmetry,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
) -> Result<T> {
    let mut worst = T::zero();
    for [s, t, u, v] in admissible_indices(w.len(), z.len()) {
        if kind == Symmetry::VemptySummation && !v.is_empty() {
            continue;
        }
        let idx = SixJIndex::new(s, t, u, v, w.to_vec(), z.to_vec(), lambda)?;
        worst = max_residual(worst, symmetry_residual(params, kind, &idx)?);
    }
    Ok(worst)
}

/// The double-subset sum of the `V = ∅` summation formula, and its closed form
/// (zero unless `S ⊆ T`).
pub fn vempty_summation<T: Real>(
    params: &EllipticParams<T>,
    idx: &SixJIndex<T>,
) -> Result<(Total<T>, Complex<T>)> {
    let sh = Shift {
        p: params,
        lam: idx.lambda,
    };
    let q = params.q();
    let (w, z) = (&idx.w[..], &idx.z[..]);
    let (m, n) = (idx.m() as i64, idx.n() as i64);
    let (s, t, u) = (&idx.s, &idx.t, &idx.u);
    let (sc, tc, uc) = (s.complement(), t.complement(), u.complement());
    let (ns, nt, nu) = (s.len() as i64, t.len() as i64, u.len() as i64);
    let th_q = params.theta(q)?;
    let scale = |v: Vec<Complex<T>>| -> Vec<Complex<T>> { v.into_iter().map(|x| x * q).collect() };

    let mut acc = Accumulator::new();
    for x in uc.subsets() {
        let want = n + ns - x.len() as i64;
        for y in Subset::all(idx.m()).filter(|y| y.len() as i64 == want) {
            let (xc, yc) = (x.complement(), y.complement());
            let (scy, tcy) = (sc.intersection(&y), tc.intersection(&y));
            let mut term = th_q.powi((scy.len() + tcy.len()) as i32);
            term = term * cross_tq(params, &uc.difference(&x).restrict(z), &x.restrict(z))?;
            term = term * cross_tq(params, &yc.restrict(w), &y.restrict(w))?;
            term = term * cross_tq(params, &scale(yc.restrict(w)), &x.restrict(z))?;
            let zq: Vec<_> = uc
                .intersection(&xc)
                .restrict(z)
                .into_iter()
                .map(|v| v / q)
                .collect();
            term = term * cross_tq(params, &zq, &y.restrict(w))?;
            term = term
                * ratio(
                    sh.poch_up(2 - nt + tcy.len() as i64, n + ns - tcy.len() as i64)?,
                    sh.poch_down(-m - n + nt + nu, scy.len() as i64)?,
                    "summation term",
                )?;
            let mut first = xc.restrict(z);
            first.extend(scale(s.intersection(&yc).restrict(w)));
            term = term
                * phi(
                    params,
                    &first,
                    &scale(scy.restrict(w)),
                    sh.down(-m - n + nt + nu + scy.len() as i64)?,
                )?;
            let mut first = uc.difference(&x).restrict(z);
            first.extend(scale(t.intersection(&yc).restrict(w)));
            term = term
                * phi(
                    params,
                    &first,
                    &scale(tcy.restrict(w)),
                    sh.up(2 - nt + tcy.len() as i64)?,
                )?;
            acc.add(term);
        }
    }
    let lhs = acc.total();
    if !s.is_subset_of(t) {
        return Ok((lhs, Complex::zero()));
    }
    let ts = t.difference(s);
    let sign = if nu % 2 == 0 {
        Complex::one()
    } else {
        -Complex::<T>::one()
    };
    let mut r = sign * params.q_int((m - nt) * ns - nu * (nu + 1) / 2) * th_q.powi(nu as i32);
    r = r * ratio(
        sh.poch_up(1 - nt, m - nt)? * sh.poch_up(2 + m - 2 * nt, n + ns)?,
        sh.poch_up(1 + n - 2 * nu, m - ns)?,
        "summation closed form",
    )?;
    r = r * cross_ti(params, &s.restrict(w), &tc.restrict(w))?;
    r = r * cross_tq(params, &tc.restrict(w), z)?;
    r = r * cross_tq(params, &ts.restrict(w), &u.restrict(z))?;
    r = r * phi(params, &ts.restrict(w), &u.restrict(z), sh.up(2 + n - nu)?)?;
    Ok((lhs, r))
}

/// Why a 6j-symbol vanishes identically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vanishing {
    /// `|S| + |U| ≠ |T| + |V|`.
    Parity,
    /// `|V| < |S∖T|`.
    VSmall,
    /// `|U| < |T∖S|`.
    USmall,
    /// `|S^c| < |U∖V|`.
    ScSmall,
    /// `|T^c| < |V∖U|`.
    TcSmall,
    /// `w_j = q w_i` with `(i, j) ∈ T×T^c` but not in `S×S^c` (0-based indices).
    WCoincidence(usize, usize),
    /// `z_j = q z_i` with `(i, j) ∈ V×V^c` but not in `U×U^c` (0-based indices).
    ZCoincidence(usize, usize),
}

impl fmt::Display for Vanishing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vanishing::Parity => write!(f, "|S|+|U| != |T|+|V|"),
            Vanishing::VSmall => write!(f, "|V| < |S\\T|"),
            Vanishing::USmall => write!(f, "|U| < |T\\S|"),
            Vanishing::ScSmall => write!(f, "|S^c| < |U\\V|"),
            Vanishing::TcSmall => write!(f, "|T^c| < |V\\U|"),
            Vanishing::WCoincidence(i, j) => write!(f, "w_{} = q w_{}", j + 1, i + 1),
            Vanishing::ZCoincidence(i, j) => write!(f, "z_{} = q z_{}", j + 1, i + 1),
        }
    }
}

fn coincident<T: Real>(params: &EllipticParams<T>, a: Complex<T>, b: Complex<T>) -> bool {
    let target = params.q() * a;
    (b - target).norm()
        <= crate::numerics::real::<T>(crate::series::MATCH_TOL) * (b.norm() + target.norm())
}

/// The first trivial vanishing condition that applies, if any. `None` does not
/// mean the symbol is nonzero.
pub fn vanishes_trivially<T: Real>(
    params: &EllipticParams<T>,
    idx: &SixJIndex<T>,
) -> Option<Vanishing> {
    let (s, t, u, v) = (&idx.s, &idx.t, &idx.u, &idx.v);
    if idx.level().is_none() {
        return Some(Vanishing::Parity);
    }
    if v.len() < s.difference(t).len() {
        return Some(Vanishing::VSmall);
    }
    if u.len() < t.difference(s).len() {
        return Some(Vanishing::USmall);
    }
    if s.complement().len() < u.difference(v).len() {
        return Some(Vanishing::ScSmall);
    }
    if t.complement().len() < v.difference(u).len() {
        return Some(Vanishing::TcSmall);
    }
    for i in t.iter() {
        for j in t.complement().iter() {
            if coincident(params, idx.w[i], idx.w[j]) && !(s.contains(i) && !s.contains(j)) {
                return Some(Vanishing::WCoincidence(i, j));
            }
        }
    }
    for i in v.iter() {
        for j in v.complement().iter() {
            if coincident(params, idx.z[i], idx.z[j]) && !(u.contains(i) && !u.contains(j)) {
                return Some(Vanishing::ZCoincidence(i, j));
            }
        }
    }
    None
}
