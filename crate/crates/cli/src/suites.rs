//! The randomized verification suites. Each trial draws its own parameters and
//! returns the largest residual of the identities it checks.

use std::sync::OnceLock;

use elliptic_sixj::biortho::{
    biortho_max, cs_route_residual, g_alt_factor_residual, g_alt_ratio_residual,
    inversion_residual, BiorthoParams,
};
use elliptic_sixj::lattice::all_sign_vectors;
use elliptic_sixj::lattice::identities::{
    coincident_delta, crossing, max_over_boundaries, splitting_horizontal, splitting_vertical,
    square_lattice,
};
use elliptic_sixj::residual::{against_mass, max_residual, relative};
use elliptic_sixj::series::identities::{
    bailey_residual, composition_transform_residual, jackson_box_residual, jackson_multi_residual,
    jackson_residual, Rkt,
};
use elliptic_sixj::sixj::identities::{qdyb_residual, symmetry_max, unitarity_residual, Symmetry};
use elliptic_sixj::sixj::special::{compositions, Specialization};
use elliptic_sixj::sixj::{admissible_indices, r6j_rese, r6j_total, Method, SixJIndex};
use elliptic_sixj::weight::identities::{
    decomposition_residual, domain_wall_dual_residual, domain_wall_residual, geometric_w_residual,
    geometric_z_residual, phi_symmetry_residual, set_partitions, PhiSymmetry,
};
use elliptic_sixj::{Boundary, Error, Params, Subset, C64};

use crate::config::Caps;
use crate::sampler::{guard_cross, guard_ratios, guard_values, Reject, Sampler};

/// Why a trial produced no residual.
#[derive(Clone, Debug, PartialEq)]
pub enum TrialError {
    /// Non-generic draw; the trial is retried with a fresh substream.
    Reject(String),
    /// An evaluation failed for a reason resampling cannot fix.
    Fatal(String),
}

impl From<Reject> for TrialError {
    fn from(r: Reject) -> Self {
        TrialError::Reject(r.0)
    }
}

impl From<Error> for TrialError {
    fn from(e: Error) -> Self {
        match e {
            Error::Singular(_) | Error::Numeric(_) => TrialError::Reject(e.to_string()),
            Error::Domain(_) | Error::Capacity { .. } => TrialError::Fatal(e.to_string()),
        }
    }
}

type Trial = fn(&mut Sampler, &Caps, usize) -> Result<f64, TrialError>;

pub struct Suite {
    pub id: &'static str,
    /// Plain description of what is checked.
    pub identity: &'static str,
    pub trials: usize,
    pub tolerance: f64,
    pub run: Trial,
}

pub static SUITES: &[Suite] = &[
    Suite {
        id: "theta_kernel",
        identity: "theta inversion and quasi-periodicity, Pochhammer splitting, p = 0 limit",
        trials: 1000,
        tolerance: 1e-11,
        run: theta_kernel,
    },
    Suite {
        id: "domain_wall",
        identity: "domain-wall partition function against the weight function and its dual form",
        trials: 200,
        tolerance: 1e-8,
        run: domain_wall,
    },
    Suite {
        id: "lattice_splitting",
        identity: "vertical and horizontal splitting of 2x2 and 2x3 lattices, all boundaries",
        trials: 10,
        tolerance: 1e-9,
        run: lattice_splitting,
    },
    Suite {
        id: "lattice_delta",
        identity: "partition function at coincident spectral parameters is a product of deltas",
        trials: 6,
        tolerance: 1e-9,
        run: lattice_delta,
    },
    Suite {
        id: "lattice_crossing",
        identity: "crossing symmetry of the 2x2 partition function",
        trials: 10,
        tolerance: 1e-9,
        run: lattice_crossing,
    },
    Suite {
        id: "lattice_square",
        identity: "square lattice with domain-wall-like south and east edges reduces to the m x n lattice",
        trials: 8,
        tolerance: 1e-9,
        run: lattice_square,
    },
    Suite {
        id: "phi_symmetry",
        identity: "inversion and both crossing symmetries of the weight function",
        trials: 30,
        tolerance: 1e-10,
        run: phi_symmetry,
    },
    Suite {
        id: "phi_geometric",
        identity: "weight function factors on geometric progressions in z or in w",
        trials: 20,
        tolerance: 1e-10,
        run: phi_geometric,
    },
    Suite {
        id: "phi_decomposition",
        identity: "weight function decomposition over every set partition of [3]",
        trials: 10,
        tolerance: 1e-10,
        run: phi_decomposition,
    },
    Suite {
        id: "sixj_agreement",
        identity: "three explicit 6j formulas against the lattice oracle, all indices with M, N <= 2",
        trials: 5,
        tolerance: 1e-7,
        run: sixj_agreement,
    },
    Suite {
        id: "sixj_formulas_3",
        identity: "the three explicit 6j formulas agree at M = N = 3",
        trials: 2,
        tolerance: 1e-7,
        run: sixj_formulas_3,
    },
    Suite {
        id: "qdyb",
        identity: "dynamical Yang-Baxter (hexagon) relation for 6j-symbols at sizes (1,1,1) and (2,1,1)",
        trials: 4,
        tolerance: 1e-7,
        run: qdyb,
    },
    Suite {
        id: "unitarity",
        identity: "6j unitarity at (M, N) = (1,1), (2,1), (2,2)",
        trials: 6,
        tolerance: 1e-8,
        run: unitarity,
    },
    Suite {
        id: "sixj_symmetry",
        identity: "index-flip, antipode and combined symmetries of 6j-symbols",
        trials: 8,
        tolerance: 1e-8,
        run: sixj_symmetry,
    },
    Suite {
        id: "vempty_closed_form",
        identity: "closed product form of 6j-symbols with V empty",
        trials: 10,
        tolerance: 1e-8,
        run: vempty_closed_form,
    },
    Suite {
        id: "vempty_summation",
        identity: "summation formula for 6j-symbols with V empty at M = 2, N = 1",
        trials: 5,
        tolerance: 1e-8,
        run: vempty_summation,
    },
    Suite {
        id: "ft_jackson",
        identity: "terminating very-well-poised 10V9 summation, N <= 4",
        trials: 100,
        tolerance: 1e-9,
        run: ft_jackson,
    },
    Suite {
        id: "bailey",
        identity: "terminating 12V11 transformation, N <= 3",
        trials: 100,
        tolerance: 1e-9,
        run: bailey,
    },
    Suite {
        id: "jackson_multi",
        identity: "multivariable Jackson summation over a simplex, n <= 3, N_i <= 2",
        trials: 100,
        tolerance: 1e-9,
        run: jackson_multi,
    },
    Suite {
        id: "jackson_box",
        identity: "multivariable Jackson summation over a box, n <= 2, N_i <= 3",
        trials: 100,
        tolerance: 1e-9,
        run: jackson_box,
    },
    Suite {
        id: "composition_transform",
        identity: "transformation between compositions of m and n variables, m, n <= 3, N <= 4",
        trials: 100,
        tolerance: 1e-9,
        run: composition_transform,
    },
    Suite {
        id: "rank_exchange",
        identity: "V_n^m to V_m^n rank-exchange transformation, m, n <= 2, boxes <= 2",
        trials: 100,
        tolerance: 1e-8,
        run: rank_exchange,
    },
    Suite {
        id: "specialization",
        identity: "specialized 6j-symbols as two V series agree with the explicit formula and with each other",
        trials: 100,
        tolerance: 1e-8,
        run: specialization,
    },
    Suite {
        id: "biortho",
        identity: "biorthogonality on the full grid, n = 1 (N <= 4) and n = 2 (N = (2,1), (2,2), (3,1))",
        trials: 14,
        tolerance: 1e-8,
        run: biortho,
    },
    Suite {
        id: "inversion",
        identity: "the two triangular matrices are mutually inverse on the same boxes",
        trials: 14,
        tolerance: 1e-9,
        run: inversion,
    },
    Suite {
        id: "g_alt_ratio",
        identity: "g_u(y) over its alternative series is independent of y",
        trials: 14,
        tolerance: 1e-8,
        run: g_alt_ratio,
    },
    Suite {
        id: "g_alt_factor",
        identity: "g_u(y) equals its alternative series times the explicit rank-exchange factor",
        trials: 14,
        tolerance: 1e-8,
        run: g_alt_factor,
    },
    Suite {
        id: "cs_route",
        identity: "biorthogonality rebuilt from the matrix inversion, n = 1, N <= 2",
        trials: 10,
        tolerance: 1e-8,
        run: cs_route,
    },
];

pub fn ids() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.id).collect()
}

pub fn find(id: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.id == id)
}

fn theta_kernel(s: &mut Sampler, _: &Caps, _: usize) -> Result<f64, TrialError> {
    let p = s.params()?;
    let x = s.free();
    let (j, k) = (s.int(0..=4) as i64, s.int(0..=8) as i64 - 4);
    guard_values(&p, "x", &[x], k.min(0)..=j + k.max(0))?;
    let th = p.theta(x)?;
    let mut worst = relative(p.theta(p.p() / x)?, th);
    worst = max_residual(worst, relative(p.theta(p.p() * x)?, -th / x));
    let split = p.pochhammer(x, j)? * p.pochhammer(p.q_int(j) * x, k)?;
    worst = max_residual(worst, relative(p.pochhammer(x, j + k)?, split));
    let flat = Params::new(C64::new(0.0, 0.0), p.q())?;
    worst = max_residual(worst, relative(flat.theta(x)?, C64::new(1.0, 0.0) - x));
    Ok(worst)
}

fn domain_wall(s: &mut Sampler, caps: &Caps, trial: usize) -> Result<f64, TrialError> {
    let n = 1 + trial % caps.domain_wall_n;
    let p = s.params()?;
    let lam = s.lambda();
    let (w, z) = (s.spectral(n), s.spectral(n));
    guard_cross(&p, &w, &z, -1..=1)?;
    guard_ratios(&p, "z", &z, 0..=1)?;
    guard_values(&p, "q^λ", &[p.q_power(lam)?], -6..=6)?;
    Ok(max_residual(
        domain_wall_residual(&p, lam, &w, &z)?,
        domain_wall_dual_residual(&p, lam, &w, &z)?,
    ))
}

fn lattice_data(
    s: &mut Sampler,
    m: usize,
    n: usize,
) -> Result<(Params, C64, Vec<C64>, Vec<C64>), TrialError> {
    let p = s.params()?;
    let lam = s.lambda();
    let (w, z) = (s.spectral(m), s.spectral(n));
    guard_cross(&p, &w, &z, -1..=1)?;
    guard_values(&p, "q^λ", &[p.q_power(lam)?], -6..=6)?;
    Ok((p, lam, w, z))
}

fn lattice_splitting(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let (m, n) = if trial % 2 == 0 { (2, 2) } else { (2, 3) };
    let (p, lam, w, z) = lattice_data(s, m, n)?;
    let mut worst = 0.0;
    for at in 0..=m {
        worst = max_residual(
            worst,
            max_over_boundaries(m, n, |b| splitting_vertical(&p, lam, &w, &z, b, at))?,
        );
    }
    for at in 0..=n {
        worst = max_residual(
            worst,
            max_over_boundaries(m, n, |b| splitting_horizontal(&p, lam, &w, &z, b, at))?,
        );
    }
    Ok(worst)
}

fn lattice_delta(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let n = 1 + trial % 3;
    let p = s.params()?;
    let lam = s.lambda();
    let z = s.spectral(n);
    guard_ratios(&p, "z", &z, -1..=1)?;
    guard_values(&p, "q^λ", &[p.q_power(lam)?], -6..=6)?;
    let mut worst = 0.0;
    for bottom in all_sign_vectors(n) {
        for top in all_sign_vectors(n) {
            for left in all_sign_vectors(n) {
                for right in all_sign_vectors(n) {
                    let b = Boundary::new(bottom.clone(), top.clone(), left.clone(), right)?;
                    worst = max_residual(worst, coincident_delta(&p, lam, &z, &b)?);
                }
            }
        }
    }
    Ok(worst)
}

fn lattice_crossing(s: &mut Sampler, _: &Caps, _: usize) -> Result<f64, TrialError> {
    let (p, lam, w, z) = lattice_data(s, 2, 2)?;
    Ok(max_over_boundaries(2, 2, |b| crossing(&p, lam, &w, &z, b))?)
}

fn lattice_square(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let (m, n) = [(1, 1), (2, 1), (1, 2), (2, 2)][trial % 4];
    let (p, lam, w, z) = lattice_data(s, m, n)?;
    guard_ratios(&p, "w", &w, -1..=1)?;
    guard_ratios(&p, "z", &z, -1..=1)?;
    let mut worst = 0.0;
    for a in all_sign_vectors(m) {
        for c in all_sign_vectors(m) {
            for b in all_sign_vectors(n) {
                for d in all_sign_vectors(n) {
                    worst = max_residual(worst, square_lattice(&p, lam, &w, &z, &a, &b, &c, &d)?);
                }
            }
        }
    }
    Ok(worst)
}

fn phi_data(s: &mut Sampler, n: usize) -> Result<(Params, Vec<C64>, Vec<C64>, C64), TrialError> {
    let p = s.params()?;
    let (w, z, a) = (s.spectral(n), s.spectral(n), s.free());
    guard_cross(&p, &w, &z, -1..=1)?;
    guard_ratios(&p, "z", &z, -1..=1)?;
    guard_ratios(&p, "w", &w, -1..=1)?;
    Ok((p, w, z, a))
}

fn phi_symmetry(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let (p, w, z, a) = phi_data(s, 1 + trial % 3)?;
    let mut worst = 0.0;
    for kind in [
        PhiSymmetry::ZwInversion,
        PhiSymmetry::Crossing1,
        PhiSymmetry::Crossing2,
    ] {
        worst = max_residual(worst, phi_symmetry_residual(&p, kind, &w, &z, a)?);
    }
    Ok(worst)
}

fn phi_geometric(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let n = 1 + trial % 4;
    let p = s.params()?;
    let (w, a, zeta) = (s.spectral(n), s.free(), s.free());
    guard_cross(&p, &w, &[zeta], -(n as i64)..=n as i64)?;
    guard_ratios(&p, "w", &w, -1..=1)?;
    Ok(max_residual(
        geometric_z_residual(&p, &w, zeta, a)?,
        geometric_w_residual(&p, zeta, &w, a)?,
    ))
}

fn phi_decomposition(s: &mut Sampler, _: &Caps, _: usize) -> Result<f64, TrialError> {
    let (p, w, z, a) = phi_data(s, 3)?;
    let mut worst = 0.0;
    for blocks in set_partitions(3) {
        worst = max_residual(worst, decomposition_residual(&p, &w, &z, a, &blocks)?);
    }
    Ok(worst)
}

fn sixj_data(
    s: &mut Sampler,
    m: usize,
    n: usize,
) -> Result<(Params, Vec<C64>, Vec<C64>, C64), TrialError> {
    let p = s.params()?;
    let (w, z, lam) = (s.spectral(m), s.spectral(n), s.lambda());
    guard_cross(&p, &w, &z, -2..=2)?;
    guard_ratios(&p, "w", &w, -2..=2)?;
    guard_ratios(&p, "z", &z, -2..=2)?;
    let span = 4 + 2 * (m + n) as i64;
    guard_values(&p, "q^λ", &[p.q_power(lam)?], -span..=span)?;
    Ok((p, w, z, lam))
}

fn against(a: &elliptic_sixj::Total<f64>, b: &elliptic_sixj::Total<f64>) -> f64 {
    against_mass(a.value, b.value, a.mass.max(b.mass))
}

fn sixj_agreement(s: &mut Sampler, caps: &Caps, _: usize) -> Result<f64, TrialError> {
    let mut worst = 0.0;
    for m in 0..=caps.sixj_size {
        for n in 0..=caps.sixj_size {
            let (p, w, z, lam) = sixj_data(s, m, n)?;
            for [ss, t, u, v] in admissible_indices(m, n) {
                let idx = SixJIndex::new(ss, t, u, v, w.clone(), z.clone(), lam)?;
                let oracle = r6j_total(&p, &idx, Method::LatticeOracle)?;
                for method in [Method::Mcmt, Method::Rat1, Method::Rat2] {
                    worst = max_residual(worst, against(&r6j_total(&p, &idx, method)?, &oracle));
                }
            }
        }
    }
    Ok(worst)
}

fn sixj_formulas_3(s: &mut Sampler, _: &Caps, _: usize) -> Result<f64, TrialError> {
    let (p, w, z, lam) = sixj_data(s, 3, 3)?;
    let mut worst = 0.0;
    for [ss, t, u, v] in admissible_indices(3, 3) {
        let idx = SixJIndex::new(ss, t, u, v, w.clone(), z.clone(), lam)?;
        let base = r6j_total(&p, &idx, Method::Mcmt)?;
        for method in [Method::Rat1, Method::Rat2] {
            worst = max_residual(worst, against(&base, &r6j_total(&p, &idx, method)?));
        }
    }
    Ok(worst)
}

fn qdyb(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let l = 1 + trial % 2;
    let (p, w, z, lam) = sixj_data(s, 1, 1)?;
    let u = s.spectral(l);
    guard_cross(&p, &u, &w, -2..=2)?;
    guard_cross(&p, &u, &z, -2..=2)?;
    guard_ratios(&p, "u", &u, -2..=2)?;
    Ok(qdyb_residual(&p, lam, &u, &w, &z)?)
}

fn unitarity(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let (m, n) = [(1, 1), (2, 1), (2, 2)][trial % 3];
    let (p, w, z, lam) = sixj_data(s, m, n)?;
    Ok(unitarity_residual(&p, lam, &w, &z)?)
}

fn sixj_symmetry(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let (m, n) = [(1, 1), (2, 1), (1, 2), (2, 2)][trial % 4];
    let (p, w, z, lam) = sixj_data(s, m, n)?;
    let mut worst = 0.0;
    for kind in [Symmetry::OpFlip, Symmetry::AntipodeFlip, Symmetry::Combined] {
        worst = max_residual(worst, symmetry_max(&p, kind, lam, &w, &z)?);
    }
    Ok(worst)
}

fn vempty_closed_form(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let (m, n) = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)][trial % 5];
    let (p, w, z, lam) = sixj_data(s, m, n)?;
    let mut worst = 0.0;
    for [ss, t, u, v] in admissible_indices(m, n) {
        if !v.is_empty() {
            continue;
        }
        let idx = SixJIndex::new(ss, t, u, v, w.clone(), z.clone(), lam)?;
        let a = r6j_total(&p, &idx, Method::Mcmt)?;
        worst = max_residual(worst, against_mass(a.value, r6j_rese(&p, &idx)?, a.mass));
    }
    Ok(worst)
}

fn vempty_summation(s: &mut Sampler, _: &Caps, _: usize) -> Result<f64, TrialError> {
    let (p, w, z, lam) = sixj_data(s, 2, 1)?;
    Ok(symmetry_max(&p, Symmetry::VemptySummation, lam, &w, &z)?)
}

fn series_free(s: &mut Sampler, p: &Params, count: usize) -> Result<Vec<C64>, TrialError> {
    let v = s.spectral(count);
    guard_values(p, "a", &v, -4..=4)?;
    Ok(v)
}

fn ft_jackson(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let p = s.params()?;
    let v = series_free(s, &p, 4)?;
    Ok(jackson_residual(&p, v[0], trial % 5, v[1], v[2], v[3])?)
}

fn bailey(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let p = s.params()?;
    let v = series_free(s, &p, 6)?;
    Ok(bailey_residual(
        &p,
        v[0],
        trial % 4,
        v[1],
        v[2],
        v[3],
        v[4],
        v[5],
    )?)
}

fn jackson_multi(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let n = 1 + trial % 3;
    let p = s.params()?;
    let nn: Vec<usize> = (0..n).map(|_| s.int(0..=2)).collect();
    let v = series_free(s, &p, 4)?;
    let z = s.spectral(n);
    guard_ratios(&p, "z", &z, -3..=3)?;
    Ok(jackson_multi_residual(&p, v[0], v[1], v[2], v[3], &z, &nn)?)
}

fn jackson_box(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let n = 1 + trial % 2;
    let p = s.params()?;
    let nn: Vec<usize> = (0..n).map(|_| s.int(0..=3)).collect();
    let v = series_free(s, &p, 4)?;
    let z = s.spectral(n);
    guard_ratios(&p, "z", &z, -4..=4)?;
    Ok(jackson_box_residual(&p, v[0], v[1], v[2], v[3], &z, &nn)?)
}

fn composition_transform(s: &mut Sampler, _: &Caps, _: usize) -> Result<f64, TrialError> {
    let (m, n, total) = (s.int(1..=3), s.int(1..=3), s.int(0..=4));
    let p = s.params()?;
    let z = s.spectral(n);
    let w = s.spectral(m);
    let a = series_free(s, &p, m + n - 1)?;
    guard_ratios(&p, "z", &z, -4..=4)?;
    guard_ratios(&p, "w", &w, -4..=4)?;
    Ok(composition_transform_residual(&p, total, &z, &w, &a)?)
}

fn rank_exchange(s: &mut Sampler, _: &Caps, _: usize) -> Result<f64, TrialError> {
    let (m, n) = (s.int(0..=2), s.int(1..=2));
    let nn: Vec<usize> = (0..n).map(|_| s.int(0..=2)).collect();
    let mm: Vec<usize> = (0..m).map(|_| s.int(0..=2)).collect();
    let p = s.params()?;
    let v = series_free(s, &p, 4)?;
    let (w, z) = (s.spectral(m), s.spectral(n));
    guard_ratios(&p, "z", &z, -3..=3)?;
    guard_ratios(&p, "w", &w, -3..=3)?;
    guard_cross(&p, &w, &z, -3..=3)?;
    let t = Rkt::solved(&p, v[0], v[1], v[2], v[3], w, z, nn, mm)?;
    Ok(t.residual(&p)?)
}

type Shape = (usize, usize, usize, Subset, Subset, Vec<usize>, Vec<usize>);

/// Every specialization shape with `M, N ≤ 3`.
fn specialization_shapes() -> &'static [Shape] {
    static SHAPES: OnceLock<Vec<Shape>> = OnceLock::new();
    SHAPES.get_or_init(|| {
        let mut out = Vec::new();
        for m in 1..=3 {
            for n in 1..=3 {
                for s in 0..=m {
                    for u in Subset::all(n) {
                        for v in Subset::all(n) {
                            if s + u.len() < v.len() || s + u.len() > m + v.len() {
                                continue;
                            }
                            let nuv = u.intersection(&v).len();
                            let nc = u.complement().intersection(&v.complement()).len();
                            let ks: Vec<Vec<usize>> = (usize::from(nuv > 0)..=nuv)
                                .flat_map(|k| compositions(nuv, k))
                                .collect();
                            let ls: Vec<Vec<usize>> = (usize::from(nc > 0)..=nc)
                                .flat_map(|k| compositions(nc, k))
                                .collect();
                            for k in &ks {
                                for l in &ls {
                                    out.push((m, n, s, u, v, k.clone(), l.clone()));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    })
}

fn specialization(s: &mut Sampler, _: &Caps, _: usize) -> Result<f64, TrialError> {
    let shapes = specialization_shapes();
    let (m, _, ss, u, v, k, l) = shapes[s.int(0..=shapes.len() - 1)].clone();
    let t = ss + u.len() - v.len();
    let p = s.params()?;
    let lam = s.lambda();
    let omega = s.free();
    let (eta, xi) = (s.spectral(k.len()), s.spectral(l.len()));
    let free = s.spectral(u.ambient() - k.iter().sum::<usize>() - l.iter().sum::<usize>());
    let span = 12;
    guard_values(&p, "q^λ", &[p.q_power(lam)?], -span..=span)?;
    let z_all: Vec<C64> = eta
        .iter()
        .chain(xi.iter().map(|x| x.inv()).collect::<Vec<_>>().iter())
        .chain(&free)
        .copied()
        .collect();
    guard_cross(&p, &[omega], &z_all, -span..=span)?;
    guard_ratios(&p, "z", &z_all, -span..=span)?;
    let has_k = !k.is_empty();
    let sp = Specialization::new(m, ss, t, u, v, k, l, omega, eta, xi, free, lam)?;
    let idx = sp.index(&p)?;
    let base = r6j_total(&p, &idx, Method::Mcmt)?;
    let mut worst = 0.0;
    for method in [Method::SpecializedAhc, Method::SpecializedIri] {
        worst = max_residual(worst, against(&base, &r6j_total(&p, &idx, method)?));
    }
    worst = max_residual(worst, sp.series_residual(&p)?);
    if has_k {
        worst = max_residual(worst, sp.rkt_residual(&p)?);
        worst = max_residual(worst, sp.partner_residual(&p)?);
    }
    Ok(worst)
}

fn biortho_shape(caps: &Caps, trial: usize) -> Vec<usize> {
    let mut shapes: Vec<Vec<usize>> = (1..=caps.biortho_n1).map(|n| vec![n]).collect();
    shapes.extend([vec![2, 1], vec![2, 2], vec![3, 1]]);
    shapes[trial % shapes.len()].clone()
}

fn biortho_data(
    s: &mut Sampler,
    nn: Vec<usize>,
) -> Result<(Params, BiorthoParams<f64>), TrialError> {
    let p = s.params()?;
    let (a, b, c) = (s.free(), s.free(), s.free());
    let x = s.spectral(nn.len());
    let span = 2 * nn.iter().sum::<usize>() as i64 + 2;
    guard_values(
        &p,
        "a",
        &[a, b, c, a / b, b * c / a, a * b, a * b * c],
        -span..=span,
    )?;
    guard_values(&p, "x", &x, -span..=span)?;
    guard_ratios(&p, "x", &x, -span..=span)?;
    let x_ab: Vec<C64> = x
        .iter()
        .flat_map(|&xi| [a * xi / b, b * xi, a / xi, b / xi])
        .collect();
    guard_values(&p, "x", &x_ab, -span..=span)?;
    Ok((p, BiorthoParams::new(a, b, c, x, nn)?))
}

fn biortho(s: &mut Sampler, caps: &Caps, trial: usize) -> Result<f64, TrialError> {
    let (p, bp) = biortho_data(s, biortho_shape(caps, trial))?;
    Ok(biortho_max(&p, &bp)?)
}

fn inversion(s: &mut Sampler, caps: &Caps, trial: usize) -> Result<f64, TrialError> {
    let (p, bp) = biortho_data(s, biortho_shape(caps, trial))?;
    Ok(inversion_residual(&p, &bp.nn, bp.a, bp.b, &bp.x)?)
}

fn g_alt_ratio(s: &mut Sampler, caps: &Caps, trial: usize) -> Result<f64, TrialError> {
    let (p, bp) = biortho_data(s, biortho_shape(caps, trial))?;
    let mut worst = 0.0;
    for u in bp.grid() {
        worst = max_residual(worst, g_alt_ratio_residual(&p, &bp, &u)?);
    }
    Ok(worst)
}

fn g_alt_factor(s: &mut Sampler, caps: &Caps, trial: usize) -> Result<f64, TrialError> {
    let (p, bp) = biortho_data(s, biortho_shape(caps, trial))?;
    let mut worst = 0.0;
    for u in bp.grid() {
        worst = max_residual(worst, g_alt_factor_residual(&p, &bp, &u)?);
    }
    Ok(worst)
}

fn cs_route(s: &mut Sampler, _: &Caps, trial: usize) -> Result<f64, TrialError> {
    let (p, bp) = biortho_data(s, vec![1 + trial % 2])?;
    Ok(cs_route_residual(&p, &bp)?)
}
