//! A biorthogonal system of `V_n^n` functions on the grid `0 ≤ y_i ≤ N_i`, and
//! the pair of inverse lower-triangular matrices behind it.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{ratio, Accumulator, EllipticParams, Real, Total};
use crate::residual::{against_mass, max_residual};
use crate::series::identities::Rkt;
use crate::series::{box_points, v_box};

/// Parameters `(a, b, c; x; N)` of the biorthogonal system.
#[derive(Clone, Debug, PartialEq)]
pub struct BiorthoParams<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub x: Vec<Complex<T>>,
    pub nn: Vec<usize>,
}

impl<T: Real> BiorthoParams<T> {
    pub fn new(
        a: Complex<T>,
        b: Complex<T>,
        c: Complex<T>,
        x: Vec<Complex<T>>,
        nn: Vec<usize>,
    ) -> Result<Self> {
        if x.len() != nn.len() {
            return Err(Error::Domain("one bound N_i per x_i is needed".into()));
        }
        Ok(Self { a, b, c, x, nn })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    fn total_n(&self) -> i64 {
        self.nn.iter().sum::<usize>() as i64
    }

    /// All grid points in lexicographic order.
    pub fn grid(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        box_points(&self.nn, |y| out.push(y.to_vec()));
        out
    }

    fn check(&self, y: &[usize]) -> Result<()> {
        if y.len() != self.n() || y.iter().zip(&self.nn).any(|(a, b)| a > b) {
            return Err(Error::Domain(format!(
                "{y:?} is not a grid point of {:?}",
                self.nn
            )));
        }
        Ok(())
    }
}

fn abs_sum(v: &[usize]) -> i64 {
    v.iter().sum::<usize>() as i64
}

/// `f_u(y) = V_n^n(a/b; aq^{|y|}, cq^{|u|}, aq^{1+N_i}x_i/b; 1, aq^{1−|N|}/(b²c), q^{−y_i}/x_i, q^{−u_i}/x_i; x)`.
pub fn f_fn<T: Real>(
    params: &EllipticParams<T>,
    bp: &BiorthoParams<T>,
    u: &[usize],
    y: &[usize],
) -> Result<Complex<T>> {
    bp.check(u)?;
    bp.check(y)?;
    let (a, b, c) = (bp.a, bp.b, bp.c);
    let nn = bp.total_n();
    let mut bs = vec![a * params.q_int(abs_sum(y)), c * params.q_int(abs_sum(u))];
    bs.extend(
        bp.x.iter()
            .zip(&bp.nn)
            .map(|(&xi, &ni)| a * params.q_int(1 + ni as i64) * xi / b),
    );
    let mut cs = vec![Complex::one(), a * params.q_int(1 - nn) / (b * b * c)];
    cs.extend(
        bp.x.iter()
            .zip(y)
            .map(|(&xi, &yi)| params.q_int(-(yi as i64)) / xi),
    );
    cs.extend(
        bp.x.iter()
            .zip(u)
            .map(|(&xi, &ui)| params.q_int(-(ui as i64)) / xi),
    );
    let bounds: Vec<_> = u.iter().zip(y).map(|(&a, &b)| a.min(b)).collect();
    Ok(v_box(params, a / b, &bs, &cs, &bp.x, &bounds)?.value)
}

/// `g_u(y) = V_n^n(q^{−|N|}b/a; q^{−|y|−|N|}/a, q^{−|u|−|N|}/c, q^{1−|N|}b/(ax_i);
/// q, q^{|N|}b²c/a, q^{y_i}x_i, q^{u_i}x_i; q^{−N_i}/x_i)`.
pub fn g_fn<T: Real>(
    params: &EllipticParams<T>,
    bp: &BiorthoParams<T>,
    u: &[usize],
    y: &[usize],
) -> Result<Complex<T>> {
    bp.check(u)?;
    bp.check(y)?;
    let (a, b, c) = (bp.a, bp.b, bp.c);
    let nn = bp.total_n();
    let qn = |k: i64| params.q_int(k);
    let big_a = qn(-nn) * b / a;
    let mut bs = vec![qn(-abs_sum(y) - nn) / a, qn(-abs_sum(u) - nn) / c];
    bs.extend(bp.x.iter().map(|&xi| qn(1 - nn) * b / (a * xi)));
    let mut cs = vec![params.q(), qn(nn) * b * b * c / a];
    cs.extend(bp.x.iter().zip(y).map(|(&xi, &yi)| qn(yi as i64) * xi));
    cs.extend(bp.x.iter().zip(u).map(|(&xi, &ui)| qn(ui as i64) * xi));
    let z: Vec<_> =
        bp.x.iter()
            .zip(&bp.nn)
            .map(|(&xi, &ni)| qn(-(ni as i64)) / xi)
            .collect();
    let bounds: Vec<_> = (0..bp.n()).map(|i| bp.nn[i] - u[i].max(y[i])).collect();
    Ok(v_box(params, big_a, &bs, &cs, &z, &bounds)?.value)
}

/// The alternative `V_n^n` form of `g_u(y)`:
/// `V(q^{−|u|−|y|−|N|−1}/(bc); q^{−|y|−|N|}/a, q^{−|u|−|N|}/c, q^{−|u|−|y|−|N|+N_i}x_i/(bc);
/// q^{−1}, aq^{−|N|}/(b²c), q^{−y_i}/x_i, q^{−u_i}/x_i; x)`.
pub fn g_alt_fn<T: Real>(
    params: &EllipticParams<T>,
    bp: &BiorthoParams<T>,
    u: &[usize],
    y: &[usize],
) -> Result<Complex<T>> {
    bp.check(u)?;
    bp.check(y)?;
    let (a, b, c) = (bp.a, bp.b, bp.c);
    let nn = bp.total_n();
    let (su, sy) = (abs_sum(u), abs_sum(y));
    let qn = |k: i64| params.q_int(k);
    let big_a = qn(-su - sy - nn - 1) / (b * c);
    let mut bs = vec![qn(-sy - nn) / a, qn(-su - nn) / c];
    bs.extend(
        bp.x.iter()
            .zip(&bp.nn)
            .map(|(&xi, &ni)| qn(-su - sy - nn + ni as i64) * xi / (b * c)),
    );
    let mut cs = vec![params.q().inv(), a * qn(-nn) / (b * b * c)];
    cs.extend(bp.x.iter().zip(y).map(|(&xi, &yi)| qn(-(yi as i64)) / xi));
    cs.extend(bp.x.iter().zip(u).map(|(&xi, &ui)| qn(-(ui as i64)) / xi));
    let bounds: Vec<_> = u.iter().zip(y).map(|(&a, &b)| a.min(b)).collect();
    Ok(v_box(params, big_a, &bs, &cs, &bp.x, &bounds)?.value)
}

/// The factor `E_u(y)` with `g_u(y) = E_u(y) · g_alt_u(y)`, obtained from the
/// rank-exchange transformation of the series defining `g_u`. It depends on `y`.
pub fn g_alt_factor<T: Real>(
    params: &EllipticParams<T>,
    bp: &BiorthoParams<T>,
    u: &[usize],
    y: &[usize],
) -> Result<Complex<T>> {
    bp.check(u)?;
    bp.check(y)?;
    let (a, b, c) = (bp.a, bp.b, bp.c);
    let nn = bp.total_n();
    let qn = |k: i64| params.q_int(k);
    Rkt {
        a: qn(-nn) * b / a,
        b: qn(-abs_sum(y) - nn) / a,
        c: qn(-abs_sum(u) - nn) / c,
        d: params.q(),
        e: qn(nn) * b * b * c / a,
        w: bp.x.clone(),
        z: bp
            .x
            .iter()
            .zip(&bp.nn)
            .map(|(&xi, &ni)| qn(-(ni as i64)) / xi)
            .collect(),
        nn: bp.nn.iter().zip(y).map(|(&ni, &yi)| ni - yi).collect(),
        mm: u.to_vec(),
    }
    .prefactor(params)
}

/// The weight `w(y)`:
/// `Δ(xq^y)/Δ(x) q^{|y|} θ(aq^{2|y|})/θ(a) (a)_{|y|}/(aq^{1+|N|})_{|y|} ∏_{i,j} (q^{−N_j}x_i/x_j)_{y_i}/(qx_i/x_j)_{y_i}
///  ∏_i θ(bq^{|y|−y_i}/x_i)(b/x_i)_{|y|}(q^{|N|}ax_i/b)_{y_i} / (θ(b/x_i)(bq^{1−N_i}/x_i)_{|y|}(aqx_i/b)_{y_i})`.
pub fn weight<T: Real>(
    params: &EllipticParams<T>,
    bp: &BiorthoParams<T>,
    y: &[usize],
) -> Result<Complex<T>> {
    bp.check(y)?;
    let (a, b) = (bp.a, bp.b);
    let q = params.q();
    let nn = bp.total_n();
    let yy = abs_sum(y);
    let x = &bp.x;
    let mut num = params.delta_ratio(x, y)?
        * params.q_int(yy)
        * params.theta(a * params.q_int(2 * yy))?
        * params.pochhammer(a, yy)?;
    let mut den = params.theta(a)? * params.pochhammer(a * params.q_int(1 + nn), yy)?;
    for i in 0..x.len() {
        let yi = y[i] as i64;
        for j in 0..x.len() {
            num = num * params.pochhammer(params.q_int(-(bp.nn[j] as i64)) * x[i] / x[j], yi)?;
            den = den * params.pochhammer(q * x[i] / x[j], yi)?;
        }
        num = num
            * params.theta(b * params.q_int(yy - yi) / x[i])?
            * params.pochhammer(b / x[i], yy)?
            * params.pochhammer(params.q_int(nn) * a * x[i] / b, yi)?;
        den = den
            * params.theta(b / x[i])?
            * params.pochhammer(b * params.q_int(1 - bp.nn[i] as i64) / x[i], yy)?
            * params.pochhammer(a * q * x[i] / b, yi)?;
    }
    ratio(num, den, "weight")
}

/// The norm `Γ_u` appearing on the diagonal of the biorthogonality relation.
pub fn gamma<T: Real>(
    params: &EllipticParams<T>,
    bp: &BiorthoParams<T>,
    u: &[usize],
) -> Result<Complex<T>> {
    bp.check(u)?;
    let (a, b, c) = (bp.a, bp.b, bp.c);
    let q = params.q();
    let nn = bp.total_n();
    let su = abs_sum(u);
    let x = &bp.x;
    let qn = |k: i64| params.q_int(k);
    let mut num = c.powi(nn as i32) * qn(nn * nn - su);
    let mut den = params.delta_ratio(x, u)?;
    for i in 0..x.len() {
        let ui = u[i] as i64;
        for j in 0..x.len() {
            num = num * params.pochhammer(q * x[i] / x[j], ui)?;
            den = den * params.pochhammer(qn(-(bp.nn[j] as i64)) * x[i] / x[j], ui)?;
        }
    }
    num = num
        * params.pochhammer(a * q, nn)?
        * params.pochhammer(qn(-su - nn) / c, nn - su)?
        * params.pochhammer(qn(1 - 2 * su) / c, su)?;
    den = den * params.pochhammer_prod(&[a * q / b, b * c * qn(nn)], nn)?;
    for i in 0..x.len() {
        let (ui, ni) = (u[i] as i64, bp.nn[i] as i64);
        let r = a * x[i] / (b * c);
        num = num * params.theta(qn(-su) * r)?;
        den = den * params.theta(qn(-su + ui) * r)?;
        num = num * params.pochhammer_prod(&[x[i], a * qn(1 - nn) * x[i] / (b * b * c)], ni)?;
        den = den * params.pochhammer_prod(&[x[i] / b, qn(-su) * r], ni)?;
        num = num * params.pochhammer(qn(ui + nn) * a * x[i] / b, ni - ui)?;
        den = den * params.pochhammer(qn(1 + ui) * a * x[i] / b, ni - ui)?;
    }
    ratio(num, den, "norm")
}

/// Tables of `w(y)`, `f_u(y)`, `g_u(y)` and `Γ_u` over the grid.
struct Tables<T: Real> {
    grid: Vec<Vec<usize>>,
    w: Vec<Complex<T>>,
    f: Vec<Vec<Complex<T>>>,
    g: Vec<Vec<Complex<T>>>,
    gamma: Vec<Complex<T>>,
}

impl<T: Real> Tables<T> {
    fn new(params: &EllipticParams<T>, bp: &BiorthoParams<T>) -> Result<Self> {
        let grid = bp.grid();
        let w = grid
            .iter()
            .map(|y| weight(params, bp, y))
            .collect::<Result<Vec<_>>>()?;
        let mut f = Vec::new();
        let mut g = Vec::new();
        for u in &grid {
            f.push(
                grid.iter()
                    .map(|y| f_fn(params, bp, u, y))
                    .collect::<Result<Vec<_>>>()?,
            );
            g.push(
                grid.iter()
                    .map(|y| g_fn(params, bp, u, y))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let gamma = grid
            .iter()
            .map(|u| gamma(params, bp, u))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            grid,
            w,
            f,
            g,
            gamma,
        })
    }

    fn residual(&self, iu: usize, iv: usize) -> T {
        let mut acc = Accumulator::new();
        for iy in 0..self.grid.len() {
            acc.add(self.w[iy] * self.f[iu][iy] * self.g[iv][iy]);
        }
        let expect = if iu == iv {
            self.gamma[iu]
        } else {
            Complex::zero()
        };
        let den = self.gamma[iu].norm().max(self.gamma[iv].norm());
        against_mass(acc.value(), expect, den.max(acc.mass()))
    }
}

/// `|Σ_y w(y) f_u(y) g_v(y) − δ_{uv} Γ_u| / max(|Γ_u|, |Γ_v|, Σ_y |w f_u g_v|)`.
pub fn biortho_residual<T: Real>(
    params: &EllipticParams<T>,
    bp: &BiorthoParams<T>,
    u: &[usize],
    v: &[usize],
) -> Result<T> {
    bp.check(u)?;
    bp.check(v)?;
    let mut acc = Accumulator::new();
    for y in bp.grid() {
        acc.add(weight(params, bp, &y)? * f_fn(params, bp, u, &y)? * g_fn(params, bp, v, &y)?);
    }
    let gu = gamma(params, bp, u)?;
    let gv = gamma(params, bp, v)?;
    let expect = if u == v { gu } else { Complex::zero() };
    Ok(against_mass(
        acc.value(),
        expect,
        gu.norm().max(gv.norm()).max(acc.mass()),
    ))
}

/// Largest [`biortho_residual`] over all pairs of grid points.
pub fn biortho_max<T: Real>(params: &EllipticParams<T>, bp: &BiorthoParams<T>) -> Result<T> {
    let t = Tables::new(params, bp)?;
    let mut worst = T::zero();
    for iu in 0..t.grid.len() {
        for iv in 0..t.grid.len() {
            worst = max_residual(worst, t.residual(iu, iv));
        }
    }
    Ok(worst)
}

/// Which matrix of the inversion pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    A,
    B,
}

/// `A_{mk}(a, b) = (abq^{2|k|})_{|m|−|k|} ∏_i (aq^{|k|−k_i}/x_i)_{|m|−|k|}
///  / ∏_i [(bx_iq^{1+k_i+|k|})_{m_i−k_i} ∏_j (q^{1+k_i−k_j}x_i/x_j)_{m_i−k_i}]`, zero unless `k ≤ m`.
fn a_entry<T: Real>(
    params: &EllipticParams<T>,
    m: &[usize],
    k: &[usize],
    a: Complex<T>,
    b: Complex<T>,
    x: &[Complex<T>],
) -> Result<Complex<T>> {
    if k.iter().zip(m).any(|(ki, mi)| ki > mi) {
        return Ok(Complex::zero());
    }
    let (sm, sk) = (abs_sum(m), abs_sum(k));
    let len = sm - sk;
    let mut num = params.pochhammer(a * b * params.q_int(2 * sk), len)?;
    let mut den = Complex::<T>::one();
    for i in 0..x.len() {
        let ki = k[i] as i64;
        let d = m[i] as i64 - ki;
        num = num * params.pochhammer(a * params.q_int(sk - ki) / x[i], len)?;
        den = den * params.pochhammer(b * x[i] * params.q_int(1 + ki + sk), d)?;
        for j in 0..x.len() {
            den = den * params.pochhammer(params.q_int(1 + ki - k[j] as i64) * x[i] / x[j], d)?;
        }
    }
    ratio(num, den, "matrix entry A")
}

/// `B_{kl}(a, b) = (−1)^{|k|−|l|} q^{C(|k|−|l|, 2)} θ(abq^{2|l|})/θ(abq^{2|k|}) ∏_i θ(aq^{|l|−l_i}/x_i)/θ(aq^{|k|−k_i}/x_i)
///  (abq^{1+|l|+|k|})_{|k|−|l|} ∏_i (aq^{1+|l|−k_i}/x_i)_{|k|−|l|}
///  / ∏_i [(bx_iq^{l_i+|k|})_{k_i−l_i} ∏_j (q^{1+l_i−l_j}x_i/x_j)_{k_i−l_i}]`, zero unless `l ≤ k`.
fn b_entry<T: Real>(
    params: &EllipticParams<T>,
    k: &[usize],
    l: &[usize],
    a: Complex<T>,
    b: Complex<T>,
    x: &[Complex<T>],
) -> Result<Complex<T>> {
    if l.iter().zip(k).any(|(li, ki)| li > ki) {
        return Ok(Complex::zero());
    }
    let (sk, sl) = (abs_sum(k), abs_sum(l));
    let d = sk - sl;
    let sign = if d % 2 == 0 {
        Complex::one()
    } else {
        -Complex::<T>::one()
    };
    let ab = a * b;
    let mut num = sign * params.q_int(d * (d - 1) / 2) * params.theta(ab * params.q_int(2 * sl))?;
    let mut den = params.theta(ab * params.q_int(2 * sk))?;
    for i in 0..x.len() {
        num = num * params.theta(a * params.q_int(sl - l[i] as i64) / x[i])?;
        den = den * params.theta(a * params.q_int(sk - k[i] as i64) / x[i])?;
    }
    num = num * params.pochhammer(ab * params.q_int(1 + sl + sk), d)?;
    for i in 0..x.len() {
        let (ki, li) = (k[i] as i64, l[i] as i64);
        num = num * params.pochhammer(a * params.q_int(1 + sl - ki) / x[i], d)?;
        den = den * params.pochhammer(b * x[i] * params.q_int(li + sk), ki - li)?;
        for j in 0..x.len() {
            den = den
                * params.pochhammer(params.q_int(1 + li - l[j] as i64) * x[i] / x[j], ki - li)?;
        }
    }
    ratio(num, den, "matrix entry B")
}

/// An entry of `A(a, b)` or `B(a, b)`; row index first.
pub fn inv_matrix_entry<T: Real>(
    params: &EllipticParams<T>,
    kind: MatrixKind,
    row: &[usize],
    col: &[usize],
    a: Complex<T>,
    b: Complex<T>,
    x: &[Complex<T>],
) -> Result<Complex<T>> {
    if row.len() != x.len() || col.len() != x.len() {
        return Err(Error::Domain(
            "multi-indices must have one entry per x_i".into(),
        ));
    }
    match kind {
        MatrixKind::A => a_entry(params, row, col, a, b, x),
        MatrixKind::B => b_entry(params, row, col, a, b, x),
    }
}

/// Largest entry of `AB − I` and `BA − I` over the box `0 ≤ k_i ≤ bound_i`.
pub fn inversion_residual<T: Real>(
    params: &EllipticParams<T>,
    bound: &[usize],
    a: Complex<T>,
    b: Complex<T>,
    x: &[Complex<T>],
) -> Result<T> {
    if bound.len() != x.len() {
        return Err(Error::Domain("one bound per x_i is needed".into()));
    }
    let mut pts = Vec::new();
    box_points(bound, |k| pts.push(k.to_vec()));
    let n = pts.len();
    let mut ma = vec![vec![Complex::zero(); n]; n];
    let mut mb = vec![vec![Complex::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            ma[i][j] = a_entry(params, &pts[i], &pts[j], a, b, x)?;
            mb[i][j] = b_entry(params, &pts[i], &pts[j], a, b, x)?;
        }
    }
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j {
                Complex::one()
            } else {
                Complex::zero()
            };
            let mut ab = Accumulator::new();
            let mut ba = Accumulator::new();
            for k in 0..n {
                ab.add(ma[i][k] * mb[k][j]);
                ba.add(mb[i][k] * ma[k][j]);
            }
            worst = max_residual(
                worst,
                against_mass(ab.value(), expect, T::one().max(ab.mass())),
            );
            worst = max_residual(
                worst,
                against_mass(ba.value(), expect, T::one().max(ba.mass())),
            );
        }
    }
    Ok(worst)
}

/// `max_y |r(y) − r(0)| / |r(0)|` for `r(y) = g_u(y) / g_alt_u(y)`: zero exactly when the
/// two forms differ by a `y`-independent factor.
pub fn g_alt_ratio_residual<T: Real>(
    params: &EllipticParams<T>,
    bp: &BiorthoParams<T>,
    u: &[usize],
) -> Result<T> {
    let grid = bp.grid();
    let ratios = grid
        .iter()
        .map(|y| {
            ratio(
                g_fn(params, bp, u, y)?,
                g_alt_fn(params, bp, u, y)?,
                "alternative form",
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let r0 = ratios[0];
    let mut worst = T::zero();
    for r in &ratios {
        worst = max_residual(worst, (*r - r0).norm() / r0.norm());
    }
    Ok(worst)
}

/// `max_y |g_u(y) − E_u(y) g_alt_u(y)| / max(|g_u(y)|, |E_u(y) g_alt_u(y)|)` with the
/// explicit factor [`g_alt_factor`].
pub fn g_alt_factor_residual<T: Real>(
    params: &EllipticParams<T>,
    bp: &BiorthoParams<T>,
    u: &[usize],
) -> Result<T> {
    let mut worst = T::zero();
    for y in bp.grid() {
        let g = g_fn(params, bp, u, &y)?;
        let alt = g_alt_factor(params, bp, u, &y)? * g_alt_fn(params, bp, u, &y)?;
        worst = max_residual(worst, against_mass(g, alt, T::zero()));
    }
    Ok(worst)
}

/// The weights `C_s` of the matrix-inversion route:
/// `q^{2Σ_{i<j}s_is_j} ∏_i x_i^{−2s_i} (b²c/(qa))^{|s|} Δ(x)/Δ(xq^s) (a, c)_{2|s|}/(aq/b, q^{|N|}bc)_{|s|}
///  ∏_i (ax_i/b, aq^{1+N_i}x_i/b)_{|s|} (b/x_i, bc/(ax_i))_{|s|−s_i} (x_i, aq^{1−|N|}x_i/(b²c))_{s_i}
///  / ((ax_i/b, aqx_i/b)_{|s|+s_i} ∏_j (qx_i/x_j, q^{−N_j}x_i/x_j)_{s_i})`.
pub fn c_weight<T: Real>(
    params: &EllipticParams<T>,
    bp: &BiorthoParams<T>,
    s: &[usize],
) -> Result<Complex<T>> {
    bp.check(s)?;
    let (a, b, c) = (bp.a, bp.b, bp.c);
    let q = params.q();
    let x = &bp.x;
    let n = x.len();
    let nn = bp.total_n();
    let ss = abs_sum(s);
    let qn = |k: i64| params.q_int(k);
    let mut cross = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            cross += (s[i] * s[j]) as i64;
        }
    }
    let mut num = qn(2 * cross)
        * (b * b * c / (q * a)).powi(ss as i32)
        * params.pochhammer_prod(&[a, c], 2 * ss)?;
    let mut den =
        params.delta_ratio(x, s)? * params.pochhammer_prod(&[a * q / b, qn(nn) * b * c], ss)?;
    for i in 0..n {
        let si = s[i] as i64;
        den = den * x[i].powi(2 * si as i32);
        num = num
            * params
                .pochhammer_prod(&[a * x[i] / b, a * qn(1 + bp.nn[i] as i64) * x[i] / b], ss)?
            * params.pochhammer_prod(&[b / x[i], b * c / (a * x[i])], ss - si)?
            * params.pochhammer_prod(&[x[i], a * qn(1 - nn) * x[i] / (b * b * c)], si)?;
        den = den * params.pochhammer_prod(&[a * x[i] / b, a * q * x[i] / b], ss + si)?;
        for j in 0..n {
            den = den
                * params.pochhammer_prod(
                    &[q * x[i] / x[j], qn(-(bp.nn[j] as i64)) * x[i] / x[j]],
                    si,
                )?;
        }
    }
    ratio(num, den, "inversion weight")
}

/// The biorthogonality relation rebuilt from the inversion pair: with
/// `F(u, y) = Σ_s C_s A_{us}(cb/a, a/b) A_{ys}(b, a/b)` and
/// `G(v, y) = Σ_t B_{N−t,v}(cb/a, a/b) B_{N−t,y}(b, a/b) / C_{N−t}`,
/// the largest entry of `Σ_y F(u, y) G(v, y) − δ_{uv}`.
pub fn cs_route_residual<T: Real>(params: &EllipticParams<T>, bp: &BiorthoParams<T>) -> Result<T> {
    let (a, b, c) = (bp.a, bp.b, bp.c);
    let (a1, b1) = (c * b / a, a / b);
    let (a2, b2) = (b, a / b);
    let x = &bp.x;
    let grid = bp.grid();
    let g = grid.len();
    let cs = grid
        .iter()
        .map(|s| c_weight(params, bp, s))
        .collect::<Result<Vec<_>>>()?;
    let comp: Vec<Vec<usize>> = grid
        .iter()
        .map(|t| t.iter().zip(&bp.nn).map(|(&ti, &ni)| ni - ti).collect())
        .collect();
    let index_of = |p: &[usize]| grid.iter().position(|q| q == p).expect("grid point");
    let mut f = vec![vec![Complex::zero(); g]; g];
    let mut gg = vec![vec![Complex::zero(); g]; g];
    for iu in 0..g {
        for iy in 0..g {
            let mut acc = Accumulator::new();
            for (is, s) in grid.iter().enumerate() {
                acc.add(
                    cs[is]
                        * a_entry(params, &grid[iu], s, a1, b1, x)?
                        * a_entry(params, &grid[iy], s, a2, b2, x)?,
                );
            }
            f[iu][iy] = acc.value();
            let mut acc = Accumulator::new();
            for nt in &comp {
                let cn = cs[index_of(nt)];
                let v = b_entry(params, nt, &grid[iu], a1, b1, x)?
                    * b_entry(params, nt, &grid[iy], a2, b2, x)?;
                acc.add(ratio(v, cn, "inversion weight")?);
            }
            gg[iu][iy] = acc.value();
        }
    }
    let mut worst = T::zero();
    for iu in 0..g {
        for iv in 0..g {
            let mut acc = Accumulator::new();
            for iy in 0..g {
                acc.add(f[iu][iy] * gg[iv][iy]);
            }
            let expect = if iu == iv {
                Complex::one()
            } else {
                Complex::zero()
            };
            worst = max_residual(
                worst,
                against_mass(acc.value(), expect, T::one().max(acc.mass())),
            );
        }
    }
    Ok(worst)
}

/// The one-variable `f_u(y)` written as a terminating very-well-poised `_{12}V_{11}`.
pub fn f_one_variable<T: Real>(
    params: &EllipticParams<T>,
    bp: &BiorthoParams<T>,
    u: usize,
    y: usize,
) -> Result<Total<T>> {
    if bp.n() != 1 {
        return Err(Error::Domain("one-variable form needs n = 1".into()));
    }
    let (a, b, c) = (bp.a, bp.b, bp.c);
    let x = bp.x[0];
    let nn = bp.nn[0] as i64;
    let qn = |k: i64| params.q_int(k);
    let (lo, hi) = (u.min(y), u.max(y));
    let bs = [
        a * qn(y as i64),
        c * qn(u as i64),
        a * qn(1 + nn) * x / b,
        x,
        a * qn(1 - nn) * x / (b * b * c),
        qn(-(hi as i64)),
    ];
    crate::series::very_well_poised(params, a * x / b, lo, &bs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::cplx;
    use crate::residual::relative;

    #[test]
    fn trivial_values() {
        let p = EllipticParams::<f64>::new(cplx(0.1, 0.05), cplx(0.5, 0.3)).unwrap();
        let bp = BiorthoParams::new(
            cplx(0.7, 0.2),
            cplx(1.3, -0.4),
            cplx(0.9, 0.6),
            vec![cplx(1.1, 0.3)],
            vec![2],
        )
        .unwrap();
        for y in 0..=2 {
            assert!(relative(f_fn(&p, &bp, &[0], &[y]).unwrap(), Complex::one()) < 1e-14);
            assert!(relative(f_fn(&p, &bp, &[y], &[0]).unwrap(), Complex::one()) < 1e-14);
        }
        assert!(relative(weight(&p, &bp, &[0]).unwrap(), Complex::one()) < 1e-14);
        let x = [cplx(1.1, 0.3)];
        for k in 0..3 {
            for kind in [MatrixKind::A, MatrixKind::B] {
                let v = inv_matrix_entry(&p, kind, &[k], &[k], cplx(0.4, 0.1), cplx(1.2, 0.2), &x)
                    .unwrap();
                assert!(relative(v, Complex::one()) < 1e-14);
            }
        }
        let v = inv_matrix_entry(
            &p,
            MatrixKind::A,
            &[0],
            &[1],
            cplx(0.4, 0.1),
            cplx(1.2, 0.2),
            &x,
        )
        .unwrap();
        assert_eq!(v, Complex::zero());
    }
}
