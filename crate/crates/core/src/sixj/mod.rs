//! Generalized elliptic 6j-symbols `R_{SU}^{TV}(λ; w; z)`.
//!
//! Three explicit subset-sum formulas ([`Method::Mcmt`], [`Method::Rat1`],
//! [`Method::Rat2`]), the lattice pairing they are derived from
//! ([`Method::LatticeOracle`]) and two reductions valid on a specialized
//! family of spectral parameters (see [`special`]).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{partition_function_total, Boundary, Sign};
use crate::numerics::{int, ratio, Accumulator, EllipticParams, Real, Total};
use crate::subset::Subset;
use crate::weight::{coeff_a, cross_ti, cross_tq, phi};

pub mod identities;
pub mod special;

pub use special::Specialization;

/// Index data `(S, T, U, V; λ; w; z)` of a 6j-symbol; `S, T ⊆ [M]`, `U, V ⊆ [N]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SixJIndex<T> {
    pub s: Subset,
    pub t: Subset,
    pub u: Subset,
    pub v: Subset,
    pub w: Vec<Complex<T>>,
    pub z: Vec<Complex<T>>,
    pub lambda: Complex<T>,
    /// Present when the spectral parameters come from a [`Specialization`];
    /// needed by the specialized methods.
    pub specialization: Option<Box<Specialization<T>>>,
}

impl<T: Real> SixJIndex<T> {
    pub fn new(
        s: Subset,
        t: Subset,
        u: Subset,
        v: Subset,
        w: Vec<Complex<T>>,
        z: Vec<Complex<T>>,
        lambda: Complex<T>,
    ) -> Result<Self> {
        if s.ambient() != w.len() || t.ambient() != w.len() {
            return Err(Error::Domain(format!(
                "S and T must be subsets of [{}]",
                w.len()
            )));
        }
        if u.ambient() != z.len() || v.ambient() != z.len() {
            return Err(Error::Domain(format!(
                "U and V must be subsets of [{}]",
                z.len()
            )));
        }
        Ok(Self {
            s,
            t,
            u,
            v,
            w,
            z,
            lambda,
            specialization: None,
        })
    }

    pub fn m(&self) -> usize {
        self.w.len()
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    /// `L = |S| + |U|` when it equals `|T| + |V|`, otherwise `None` (the symbol is 0).
    pub fn level(&self) -> Option<usize> {
        let l = self.s.len() + self.u.len();
        (l == self.t.len() + self.v.len()).then_some(l)
    }

    pub fn with_lambda(&self, lambda: Complex<T>) -> Self {
        Self {
            lambda,
            specialization: None,
            ..self.clone()
        }
    }
}

/// Evaluation route for [`r6j`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Mcmt,
    Rat1,
    Rat2,
    LatticeOracle,
    SpecializedAhc,
    SpecializedIri,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Mcmt,
        Method::Rat1,
        Method::Rat2,
        Method::LatticeOracle,
        Method::SpecializedAhc,
        Method::SpecializedIri,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Mcmt => "mcmt",
            Method::Rat1 => "rat1",
            Method::Rat2 => "rat2",
            Method::LatticeOracle => "lattice_oracle",
            Method::SpecializedAhc => "specialized_ahc",
            Method::SpecializedIri => "specialized_iri",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown 6j method `{s}`")))
    }
}

/// Shorthands for `q^{±λ+k}` and Pochhammers thereof.
pub(crate) struct Shift<'a, T> {
    pub p: &'a EllipticParams<T>,
    pub lam: Complex<T>,
}

impl<T: Real> Shift<'_, T> {
    /// `q^{λ+k}`
    pub fn up(&self, k: i64) -> Result<Complex<T>> {
        self.p.q_power(self.lam + int(k))
    }

    /// `q^{−λ+k}`
    pub fn down(&self, k: i64) -> Result<Complex<T>> {
        self.p.q_power(-self.lam + int(k))
    }

    /// `(q^{λ+k})_n`
    pub fn poch_up(&self, k: i64, n: i64) -> Result<Complex<T>> {
        self.p.pochhammer(self.up(k)?, n)
    }

    /// `(q^{−λ+k})_n`
    pub fn poch_down(&self, k: i64, n: i64) -> Result<Complex<T>> {
        self.p.pochhammer(self.down(k)?, n)
    }
}

pub(crate) fn scale<T: Real>(v: &[Complex<T>], f: Complex<T>) -> Vec<Complex<T>> {
    v.iter().map(|&x| x * f).collect()
}

pub(crate) fn cat<T: Copy>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = a.to_vec();
    out.extend_from_slice(b);
    out
}

fn sign<T: Real>(k: usize) -> Complex<T> {
    if k % 2 == 0 {
        Complex::one()
    } else {
        -Complex::<T>::one()
    }
}

fn len(s: &Subset) -> i64 {
    s.len() as i64
}

/// The 6j-symbol with the absolute mass of the sum that produced it.
/// A parity-violating index gives an exact zero.
pub fn r6j_total<T: Real>(
    params: &EllipticParams<T>,
    idx: &SixJIndex<T>,
    method: Method,
) -> Result<Total<T>> {
    let Some(l) = idx.level() else {
        return Ok(Total::exact(Complex::zero()));
    };
    match method {
        Method::Mcmt => mcmt(params, idx, l),
        Method::Rat1 => rat1(params, idx, l),
        Method::Rat2 => rat2(params, idx, l),
        Method::LatticeOracle => lattice_oracle(params, idx),
        Method::SpecializedAhc | Method::SpecializedIri => {
            let sp = idx.specialization.as_deref().ok_or_else(|| {
                Error::Domain(format!(
                    "{method} needs an index built by Specialization::index"
                ))
            })?;
            if method == Method::SpecializedAhc {
                sp.ahc(params)
            } else {
                sp.iri(params)
            }
        }
    }
}

/// `R_{SU}^{TV}(λ; w; z)` by the chosen method.
pub fn r6j<T: Real>(
    params: &EllipticParams<T>,
    idx: &SixJIndex<T>,
    method: Method,
) -> Result<Complex<T>> {
    Ok(r6j_total(params, idx, method)?.value)
}

fn mcmt<T: Real>(params: &EllipticParams<T>, idx: &SixJIndex<T>, l: usize) -> Result<Total<T>> {
    let sh = Shift {
        p: params,
        lam: idx.lambda,
    };
    let (w, z) = (&idx.w[..], &idx.z[..]);
    let (m, n, l) = (idx.m() as i64, idx.n() as i64, l as i64);
    let (s, t, u, v) = (&idx.s, &idx.t, &idx.u, &idx.v);
    let (sc, tc, vc) = (s.complement(), t.complement(), v.complement());
    let th_q = params.theta(params.q())?;

    let pre = ratio(
        sh.poch_up(2 + m + n - 2 * l, len(s))?,
        sh.poch_up(2 + m - 2 * len(t), len(t))? * sh.poch_up(2 + m + n - 2 * l, len(v))?,
        "6j prefactor",
    )?;
    let uv = u.intersection(v);
    let mut acc = Accumulator::new();
    for x in sc.intersection(&tc).subsets() {
        let ny = l - m + len(&x);
        if ny < 0 {
            continue;
        }
        for y in uv.subsets().filter(|y| len(y) == ny) {
            let scx = sc.difference(&x);
            let tcx = tc.difference(&x);
            let uy = u.difference(&y);
            let vy = v.difference(&y);
            let ny_ = len(&y);
            let mut term = th_q.powi((len(u) + len(v) - 2 * ny_) as i32);
            term = term
                * ratio(
                    sh.poch_up(2 + n - len(u) - ny_, ny_)?,
                    sh.poch_down(2 * len(t) - m, len(v) - ny_)?,
                    "6j term",
                )?;
            term = term * cross_tq(params, &t.restrict(w), &tcx.restrict(w))?;
            term = term * cross_tq(params, &scx.restrict(w), &x.restrict(w))?;
            term = term * cross_tq(params, &vy.restrict(z), &vc.restrict(z))?;
            term = term * cross_tq(params, &y.restrict(z), &uy.restrict(z))?;
            term = term * cross_tq(params, &y.restrict(z), &x.restrict(w))?;
            term = term
                * cross_ti(
                    params,
                    &x.complement().restrict(w),
                    &y.complement().restrict(z),
                )?;
            term = term * cross_tq(params, &scx.restrict(w), &uy.restrict(z))?;
            term = term * cross_tq(params, &tcx.restrict(w), &vy.restrict(z))?;
            term = term
                * phi(
                    params,
                    &scx.restrict(w),
                    &uy.restrict(z),
                    sh.up(2 + n - len(u) - ny_)?,
                )?;
            term = term
                * phi(
                    params,
                    &tcx.restrict(w),
                    &vy.restrict(z),
                    sh.down(len(t) - len(&x))?,
                )?;
            acc.add(term);
        }
    }
    Ok(acc.scaled(pre))
}

fn rat1<T: Real>(params: &EllipticParams<T>, idx: &SixJIndex<T>, l: usize) -> Result<Total<T>> {
    let sh = Shift {
        p: params,
        lam: idx.lambda,
    };
    let q = params.q();
    let qi = q.inv();
    let (w, z) = (&idx.w[..], &idx.z[..]);
    let (m, n, l) = (idx.m() as i64, idx.n() as i64, l as i64);
    let (s, t, u, v) = (&idx.s, &idx.t, &idx.u, &idx.v);
    let (sc, tc, uc, vc) = (
        s.complement(),
        t.complement(),
        u.complement(),
        v.complement(),
    );
    let (ns, nt, nu, nv) = (len(s), len(t), len(u), len(v));
    let th_q = params.theta(q)?;

    let mut pre = sign::<T>((nu + nv) as usize)
        * params.q_int(nv * (nv - 1) / 2 + n * (m - l) + nu * (nu + 1) / 2);
    pre = pre * cross_tq(params, &v.restrict(z), &vc.restrict(z))? * cross_ti(params, w, z)?;
    pre = pre
        * ratio(
            sh.poch_up(1 + n - 2 * nu, nu)?,
            sh.poch_up(1 + m - 2 * nt - nv, nv)?
                * sh.poch_up(2 + m - 2 * nt, nt)?
                * sh.poch_up(2 + m - 2 * nt, n - nv)?,
            "6j prefactor",
        )?;
    let st = s.intersection(t);
    let sctc = sc.intersection(&tc);
    let mut acc = Accumulator::new();
    for x in st.subsets() {
        let want = ns + n - nv - len(&x);
        for y in Subset::all(idx.n()).filter(|y| len(y) == want) {
            let yc = y.complement();
            let (uy, vy) = (u.intersection(&y), v.intersection(&y));
            let mut term = th_q.powi((len(&uy) + len(&vy)) as i32);
            term = term * cross_tq(params, &x.restrict(w), &s.difference(&x).restrict(w))?;
            term = term * cross_tq(params, &t.difference(&x).restrict(w), &tc.restrict(w))?;
            term = term * cross_tq(params, &scale(&x.restrict(w), q), &yc.restrict(z))?;
            let zy_q = scale(&y.restrict(z), qi);
            term = term * cross_ti(params, &zy_q, &sctc.restrict(w))?;
            term = term * cross_tq(params, &zy_q, &st.difference(&x).restrict(w))?;
            term = term * cross_tq(params, &y.restrict(z), &yc.restrict(z))?;
            term = term
                * ratio(
                    sh.poch_up(2 + m - 2 * nt - nv + len(&vy), n + ns - nv - len(&vy))?,
                    sh.poch_down(-n + nu, len(&uy))?,
                    "6j term",
                )?;
            let z_ucyc = scale(&uc.intersection(&yc).restrict(z), qi);
            term = term
                * phi(
                    params,
                    &scale(&uy.restrict(z), qi),
                    &cat(&t.difference(&x).restrict(w), &z_ucyc),
                    sh.down(-n + nu + len(&uy))?,
                )?;
            let z_vcyc = scale(&vc.intersection(&yc).restrict(z), qi);
            term = term
                * phi(
                    params,
                    &scale(&vy.restrict(z), qi),
                    &cat(&s.difference(&x).restrict(w), &z_vcyc),
                    sh.up(2 + m - 2 * nt - nv + len(&vy))?,
                )?;
            acc.add(term);
        }
    }
    Ok(acc.scaled(pre))
}

fn rat2<T: Real>(params: &EllipticParams<T>, idx: &SixJIndex<T>, _l: usize) -> Result<Total<T>> {
    let sh = Shift {
        p: params,
        lam: idx.lambda,
    };
    let q = params.q();
    let qi = q.inv();
    let (w, z) = (&idx.w[..], &idx.z[..]);
    let (m, n) = (idx.m() as i64, idx.n() as i64);
    let (s, t, u, v) = (&idx.s, &idx.t, &idx.u, &idx.v);
    let (sc, tc, uc, vc) = (
        s.complement(),
        t.complement(),
        u.complement(),
        v.complement(),
    );
    let (ns, nt, nu, nv) = (len(s), len(t), len(u), len(v));
    let th_q = params.theta(q)?;

    let mut pre = sign::<T>((ns + nt) as usize)
        * params.q_int(ns * (ns - 1) / 2 + m * (nu - nt) + nt * (nt + 1) / 2);
    pre = pre * cross_tq(params, &t.restrict(w), &tc.restrict(w))? * cross_ti(params, w, z)?;
    pre = pre
        * ratio(
            sh.poch_up(1 + n - 2 * nu, m - ns)?,
            sh.poch_up(1 - nt, m - nt)?
                * sh.poch_up(2 + m - 2 * nt, nt)?
                * sh.poch_up(2 + m - 2 * nt, n - nv)?,
            "6j prefactor",
        )?;
    let ucvc = uc.intersection(&vc);
    let uv = u.intersection(v);
    let mut acc = Accumulator::new();
    for x in ucvc.subsets() {
        let want = n + ns - nv - len(&x);
        for y in Subset::all(idx.m()).filter(|y| len(y) == want) {
            let yc = y.complement();
            let (scy, tcy) = (sc.intersection(&y), tc.intersection(&y));
            let mut term = th_q.powi((len(&scy) + len(&tcy)) as i32);
            term = term * cross_tq(params, &uc.difference(&x).restrict(z), &x.restrict(z))?;
            term = term * cross_tq(params, &v.restrict(z), &vc.difference(&x).restrict(z))?;
            term = term * cross_tq(params, &scale(&yc.restrict(w), q), &x.restrict(z))?;
            term = term * cross_ti(params, &scale(&uv.restrict(z), qi), &y.restrict(w))?;
            term = term
                * cross_tq(
                    params,
                    &scale(&ucvc.difference(&x).restrict(z), qi),
                    &y.restrict(w),
                )?;
            term = term * cross_tq(params, &yc.restrict(w), &y.restrict(w))?;
            term = term
                * ratio(
                    sh.poch_up(2 - nt + len(&tcy), n + ns - nv - len(&tcy))?,
                    sh.poch_down(-m - n + ns + 2 * nu, len(&scy))?,
                    "6j term",
                )?;
            term = term
                * phi(
                    params,
                    &cat(
                        &vc.difference(&x).restrict(z),
                        &scale(&s.intersection(&yc).restrict(w), q),
                    ),
                    &scale(&scy.restrict(w), q),
                    sh.down(-m - n + ns + 2 * nu + len(&scy))?,
                )?;
            term = term
                * phi(
                    params,
                    &cat(
                        &uc.difference(&x).restrict(z),
                        &scale(&t.intersection(&yc).restrict(w), q),
                    ),
                    &scale(&tcy.restrict(w), q),
                    sh.up(2 - nt + len(&tcy))?,
                )?;
            acc.add(term);
        }
    }
    Ok(acc.scaled(pre))
}

/// The `(M+N)`-site lattice pairing: columns `(w_T, w_{T^c}, z_V, z_{V^c})` with top
/// boundary `+` on `T` and `V`, rows `(z_{U^c}, z_U, w_{S^c}, w_S)` with left boundary
/// `+` on `U` and `S`, bottom and right all `+`; divided by `A_{T,w}(λ) A_{V,z}(λ+M−2|T|)`.
fn lattice_oracle<T: Real>(params: &EllipticParams<T>, idx: &SixJIndex<T>) -> Result<Total<T>> {
    let (w, z) = (&idx.w[..], &idx.z[..]);
    let (s, t, u, v) = (&idx.s, &idx.t, &idx.u, &idx.v);
    let (sc, tc, uc, vc) = (
        s.complement(),
        t.complement(),
        u.complement(),
        v.complement(),
    );
    let k = idx.m() + idx.n();
    let run = |len: usize, sg: Sign| vec![sg; len];

    let cols = [t.restrict(w), tc.restrict(w), v.restrict(z), vc.restrict(z)].concat();
    let top = [
        run(t.len(), Sign::Plus),
        run(tc.len(), Sign::Minus),
        run(v.len(), Sign::Plus),
        run(vc.len(), Sign::Minus),
    ]
    .concat();
    let rows = [uc.restrict(z), u.restrict(z), sc.restrict(w), s.restrict(w)].concat();
    let left = [
        run(uc.len(), Sign::Minus),
        run(u.len(), Sign::Plus),
        run(sc.len(), Sign::Minus),
        run(s.len(), Sign::Plus),
    ]
    .concat();
    let boundary = Boundary::new(run(k, Sign::Plus), top, left, run(k, Sign::Plus))?;
    let zz = partition_function_total(params, idx.lambda, &cols, &rows, &boundary)?;
    let shift = int::<T>(idx.m() as i64 - 2 * t.len() as i64);
    let den = coeff_a(params, t, w, idx.lambda)? * coeff_a(params, v, z, idx.lambda + shift)?;
    let f = ratio(Complex::one(), den, "lattice oracle normalization")?;
    Ok(Total {
        value: zz.value * f,
        mass: zz.mass * f.norm(),
    })
}

/// Closed form of `R_{SU}^{T∅}`: nonzero only when `S ⊆ T` and `|T∖S| = |U|`, where it is
/// `θ(q)^{|U|} ∏_{T∖S,U} θ(qw/z)/θ(w/z) ∏_{T∖S,T^c} θ(qw/w)/θ(w/w) ∏_{T,[N]} θ(w/z)/θ(qw/z)
///  (q^{λ+2+M+N−2|T|})_{|S|} / (q^{λ+2+M−2|T|})_{|T|} Φ(w_{T∖S}; z_U; q^{λ+2+N−|U|})`.
pub fn r6j_rese<T: Real>(params: &EllipticParams<T>, idx: &SixJIndex<T>) -> Result<Complex<T>> {
    if !idx.v.is_empty() {
        return Err(Error::Domain("the closed form needs V = ∅".into()));
    }
    let (s, t, u) = (&idx.s, &idx.t, &idx.u);
    if !s.is_subset_of(t) || t.difference(s).len() != u.len() {
        return Ok(Complex::zero());
    }
    let sh = Shift {
        p: params,
        lam: idx.lambda,
    };
    let (w, z) = (&idx.w[..], &idx.z[..]);
    let (m, n) = (idx.m() as i64, idx.n() as i64);
    let ts = t.difference(s);
    let mut r = params.theta(params.q())?.powi(u.len() as i32);
    r = r * cross_tq(params, &ts.restrict(w), &u.restrict(z))?;
    r = r * cross_tq(params, &ts.restrict(w), &t.complement().restrict(w))?;
    r = r * cross_ti(params, &t.restrict(w), z)?;
    r = r * ratio(
        sh.poch_up(2 + m + n - 2 * len(t), len(s))?,
        sh.poch_up(2 + m - 2 * len(t), len(t))?,
        "closed-form 6j",
    )?;
    Ok(r * phi(
        params,
        &ts.restrict(w),
        &u.restrict(z),
        sh.up(2 + n - len(u))?,
    )?)
}

/// All `(S, T, U, V)` with `S, T ⊆ [M]`, `U, V ⊆ [N]` and `|S|+|U| = |T|+|V|`.
pub fn admissible_indices(m: usize, n: usize) -> Vec<[Subset; 4]> {
    let mut out = Vec::new();
    for s in Subset::all(m) {
        for t in Subset::all(m) {
            for u in Subset::all(n) {
                for v in Subset::all(n) {
                    if s.len() + u.len() == t.len() + v.len() {
                        out.push([s, t, u, v]);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::cplx;

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("foo".parse::<Method>().is_err());
    }

    #[test]
    fn parity_gives_exact_zero() {
        let p = EllipticParams::<f64>::new(cplx(0.1, 0.0), cplx(0.5, 0.2)).unwrap();
        let idx = SixJIndex::new(
            Subset::full(1),
            Subset::empty(1),
            Subset::empty(1),
            Subset::empty(1),
            vec![cplx(1.1, 0.2)],
            vec![cplx(0.7, -0.4)],
            cplx(0.3, 0.1),
        )
        .unwrap();
        for m in [
            Method::Mcmt,
            Method::Rat1,
            Method::Rat2,
            Method::LatticeOracle,
        ] {
            assert_eq!(r6j(&p, &idx, m).unwrap(), Complex::zero());
        }
    }
}
