mod common;

use common::*;
use elliptic_sixj::residual::{against_mass, relative};
use elliptic_sixj::sixj::identities::*;
use elliptic_sixj::sixj::special::compositions;
use elliptic_sixj::sixj::*;
use elliptic_sixj::{cplx, Error, Params, Subset, C64};
use num_traits::Zero;

fn index(
    m: usize,
    n: usize,
    s: &[usize],
    t: &[usize],
    u: &[usize],
    v: &[usize],
    w: &[C64],
    z: &[C64],
    lam: C64,
) -> SixJIndex<f64> {
    SixJIndex::new(
        Subset::from_indices(m, s).unwrap(),
        Subset::from_indices(m, t).unwrap(),
        Subset::from_indices(n, u).unwrap(),
        Subset::from_indices(n, v).unwrap(),
        w.to_vec(),
        z.to_vec(),
        lam,
    )
    .unwrap()
}

fn four_way(p: &Params, m: usize, n: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let (w, z, lam) = (spectral(&mut r, m), spectral(&mut r, n), lambda(&mut r));
    let mut worst = 0.0f64;
    for [s, t, u, v] in admissible_indices(m, n) {
        let idx = SixJIndex::new(s, t, u, v, w.clone(), z.clone(), lam).unwrap();
        let oracle = r6j_total(p, &idx, Method::LatticeOracle).unwrap();
        for method in [Method::Mcmt, Method::Rat1, Method::Rat2] {
            let x = r6j_total(p, &idx, method).unwrap();
            let res = against_mass(x.value, oracle.value, x.mass.max(oracle.mass));
            worst = worst.max(res);
        }
    }
    worst
}

#[test]
fn four_methods_agree_up_to_two() {
    let p = canonical();
    for m in 0..=2 {
        for n in 0..=2 {
            let res = four_way(&p, m, n, 100 + (3 * m + n) as u64);
            assert!(res < 1e-9, "M={m} N={n}: {res}");
        }
    }
}

#[test]
fn explicit_formulas_agree_at_three() {
    let p = canonical();
    let mut r = rng(7);
    let (w, z, lam) = (spectral(&mut r, 3), spectral(&mut r, 3), lambda(&mut r));
    let mut worst = 0.0f64;
    for (i, [s, t, u, v]) in admissible_indices(3, 3).into_iter().enumerate() {
        if i % 17 != 0 {
            continue;
        }
        let idx = SixJIndex::new(s, t, u, v, w.clone(), z.clone(), lam).unwrap();
        let a = r6j_total(&p, &idx, Method::Mcmt).unwrap();
        for m in [Method::Rat1, Method::Rat2] {
            let b = r6j_total(&p, &idx, m).unwrap();
            worst = worst.max(against_mass(a.value, b.value, a.mass.max(b.mass)));
        }
    }
    assert!(worst < 1e-8, "{worst}");
    let idx = index(3, 3, &[0], &[1], &[2], &[2], &w, &z, lam);
    assert!(matches!(
        r6j(&p, &idx, Method::LatticeOracle),
        Err(Error::Capacity { .. })
    ));
}

#[test]
fn one_by_one_common_value() {
    let p = canonical();
    let w = [cplx(1.2, 0.3)];
    let z = [cplx(0.6, -0.5)];
    let lam = cplx(0.37, 0.21);
    let idx = index(1, 1, &[0], &[], &[], &[0], &w, &z, lam);
    let oracle = r6j(&p, &idx, Method::LatticeOracle).unwrap();
    assert!(oracle.norm() > 1e-3);
    for m in [Method::Mcmt, Method::Rat1, Method::Rat2] {
        assert!(relative(r6j(&p, &idx, m).unwrap(), oracle) < 1e-12);
    }
}

#[test]
fn closed_form_without_v() {
    let p = canonical();
    let mut r = rng(9);
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)] {
        let (w, z, lam) = (spectral(&mut r, m), spectral(&mut r, n), lambda(&mut r));
        for [s, t, u, v] in admissible_indices(m, n) {
            if !v.is_empty() {
                continue;
            }
            let idx = SixJIndex::new(s, t, u, v, w.clone(), z.clone(), lam).unwrap();
            let a = r6j_total(&p, &idx, Method::Mcmt).unwrap();
            let b = r6j_rese(&p, &idx).unwrap();
            assert!(
                against_mass(a.value, b, a.mass) < 1e-10,
                "{s:?} {t:?} {u:?}"
            );
        }
    }
    // S = T, U = V = ∅ has no Φ factor
    let (w, z, lam) = (spectral(&mut r, 2), spectral(&mut r, 2), lambda(&mut r));
    let idx = index(2, 2, &[1], &[1], &[], &[], &w, &z, lam);
    assert!(r6j_rese(&p, &idx).unwrap().norm() > 0.0);
    let idx = index(2, 2, &[0], &[1], &[], &[], &w, &z, lam);
    assert_eq!(r6j_rese(&p, &idx).unwrap(), C64::zero());
}

#[test]
fn unitarity() {
    let p = canonical();
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let mut r = rng(5);
        let (w, z, lam) = (spectral(&mut r, m), spectral(&mut r, n), lambda(&mut r));
        let res = unitarity_residual(&p, lam, &w, &z).unwrap();
        assert!(res < 1e-9, "({m},{n}): {res}");
    }
    let res = unitarity_residual(&p, cplx(0.3, 0.0), &[], &[]).unwrap();
    assert_eq!(res, 0.0);
}

#[test]
fn dynamical_yang_baxter() {
    let p = canonical();
    for (l, m, n) in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2)] {
        let mut r = rng(3);
        let (u, w, z, lam) = (
            spectral(&mut r, l),
            spectral(&mut r, m),
            spectral(&mut r, n),
            lambda(&mut r),
        );
        let res = qdyb_residual(&p, lam, &u, &w, &z).unwrap();
        assert!(res < 1e-8, "({l},{m},{n}): {res}");
    }
}

#[test]
fn symmetries() {
    let p = canonical();
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let mut r = rng(21);
        let (w, z, lam) = (spectral(&mut r, m), spectral(&mut r, n), lambda(&mut r));
        for kind in Symmetry::ALL {
            let res = symmetry_max(&p, kind, lam, &w, &z).unwrap();
            assert!(res < 1e-8, "{} ({m},{n}): {res}", kind.name());
        }
    }
    let mut r = rng(2);
    let (w, z, lam) = (spectral(&mut r, 2), spectral(&mut r, 1), lambda(&mut r));
    let trivial = index(2, 1, &[1], &[1], &[], &[], &w, &z, lam);
    assert!(symmetry_residual(&p, Symmetry::Combined, &trivial).unwrap() < 1e-12);
}

#[test]
fn trivial_vanishing() {
    let p = canonical();
    let mut r = rng(31);
    let (w, z, lam) = (spectral(&mut r, 2), spectral(&mut r, 2), lambda(&mut r));
    let idx = index(2, 2, &[0], &[1], &[], &[], &w, &z, lam);
    assert_eq!(vanishes_trivially(&p, &idx), Some(Vanishing::VSmall));
    let v = r6j_total(&p, &idx, Method::Mcmt).unwrap();
    assert!(v.value.norm() <= 1e-14 * v.mass.max(1.0));

    let generic = index(2, 2, &[0], &[0, 1], &[1], &[], &w, &z, lam);
    assert_eq!(vanishes_trivially(&p, &generic), None);
    assert!(r6j(&p, &generic, Method::Mcmt).unwrap().norm() > 1e-6);

    // w_2 = q w_1 with (1, 2) ∈ S × S^c is allowed
    let q = p.q();
    let w2 = vec![w[0], q * w[0]];
    let allowed = index(2, 2, &[0], &[0], &[0], &[0], &w2, &z, lam);
    assert_eq!(vanishes_trivially(&p, &allowed), None);
    let killed = index(2, 2, &[], &[0], &[0, 1], &[0], &w2, &z, lam);
    assert_eq!(
        vanishes_trivially(&p, &killed),
        Some(Vanishing::WCoincidence(0, 1))
    );
    let v = r6j_total(&p, &killed, Method::Mcmt).unwrap();
    assert!(v.value.norm() <= 1e-12 * v.mass.max(1.0), "{:?}", v);
}

fn specializations(
    max_m: usize,
    max_n: usize,
) -> Vec<(usize, usize, usize, Subset, Subset, Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for n in 1..=max_n {
            for s in 0..=m {
                for u in Subset::all(n) {
                    for v in Subset::all(n) {
                        if s + u.len() < v.len() || s + u.len() > m + v.len() {
                            continue;
                        }
                        let nuv = u.intersection(&v).len();
                        let nucvc = u.complement().intersection(&v.complement()).len();
                        let ks: Vec<Vec<usize>> = (usize::from(nuv > 0)..=nuv)
                            .flat_map(|k| compositions(nuv, k))
                            .collect();
                        let ls: Vec<Vec<usize>> = (usize::from(nucvc > 0)..=nucvc)
                            .flat_map(|k| compositions(nucvc, k))
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
}

#[test]
fn specialized_reductions() {
    let p = canonical();
    let mut r = rng(8);
    let lam = cplx(0.37, 0.21);
    let mut count = 0;
    for (m, _n, s, u, v, k, l) in specializations(3, 3) {
        let t = s + u.len() - v.len();
        let (om, eta, xi) = (
            annulus(&mut r, 0.5, 2.0),
            spectral(&mut r, k.len()),
            spectral(&mut r, l.len()),
        );
        let free = spectral(
            &mut r,
            u.ambient() - k.iter().sum::<usize>() - l.iter().sum::<usize>(),
        );
        let sp = Specialization::new(m, s, t, u, v, k.clone(), l.clone(), om, eta, xi, free, lam)
            .unwrap();
        let idx = sp.index(&p).unwrap();
        let a = r6j_total(&p, &idx, Method::Mcmt).unwrap();
        for method in [Method::SpecializedAhc, Method::SpecializedIri] {
            let b = r6j_total(&p, &idx, method).unwrap();
            let res = against_mass(a.value, b.value, a.mass.max(b.mass));
            assert!(
                res < 1e-8,
                "{method} m={m} s={s} t={t} {u:?} {v:?} k={k:?} l={l:?}: {res}"
            );
        }
        assert!(sp.balance_defect(&p).unwrap() < 1e-12);
        assert!(sp.series_residual(&p).unwrap() < 1e-10);
        if !k.is_empty() {
            assert!(sp.rkt_residual(&p).unwrap() < 1e-8, "rkt k={k:?} l={l:?}");
            assert!(
                sp.partner_residual(&p).unwrap() < 1e-8,
                "partner k={k:?} l={l:?}"
            );
        }
        count += 1;
    }
    assert!(count > 100);
}

#[test]
fn specialized_methods_need_specialization() {
    let p = canonical();
    let idx = index(
        1,
        1,
        &[0],
        &[0],
        &[],
        &[],
        &[cplx(1.0, 0.2)],
        &[cplx(0.5, 0.5)],
        cplx(0.1, 0.0),
    );
    assert!(r6j(&p, &idx, Method::SpecializedAhc).is_err());
}
