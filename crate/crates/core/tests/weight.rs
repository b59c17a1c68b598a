mod common;

use common::*;
use elliptic_sixj::residual::relative;
use elliptic_sixj::weight::identities::*;
use elliptic_sixj::weight::*;
use elliptic_sixj::{Error, Subset, C64};
use num_traits::One;

#[test]
fn single_variable_value() {
    let p = canonical();
    let (w, z, a) = (C64::new(1.2, 0.3), C64::new(0.7, -0.4), C64::new(0.9, 0.5));
    let q = p.q();
    let expect = p.theta(a * w / (q * z)).unwrap() / p.theta(q * w / z).unwrap();
    assert!(relative(phi(&p, &[w], &[z], a).unwrap(), expect) < 1e-14);
    assert_eq!(phi(&p, &[], &[], a).unwrap(), C64::one());
}

#[test]
fn symmetries_of_phi() {
    let p = canonical();
    let mut r = rng(7);
    for n in 1..=3 {
        for _ in 0..5 {
            let (w, z, a) = (
                spectral(&mut r, n),
                spectral(&mut r, n),
                annulus(&mut r, 0.5, 2.0),
            );
            for kind in [
                PhiSymmetry::ZwInversion,
                PhiSymmetry::Crossing1,
                PhiSymmetry::Crossing2,
            ] {
                let res = phi_symmetry_residual(&p, kind, &w, &z, a).unwrap();
                assert!(res < 1e-10, "{kind:?} n={n}: {res}");
            }
        }
    }
}

#[test]
fn geometric_progressions_factor() {
    let p = canonical();
    let mut r = rng(8);
    for n in 1..=4 {
        let (w, a) = (spectral(&mut r, n), annulus(&mut r, 0.5, 2.0));
        let zeta = annulus(&mut r, 0.5, 2.0);
        assert!(geometric_z_residual(&p, &w, zeta, a).unwrap() < 1e-10);
        assert!(geometric_w_residual(&p, zeta, &w, a).unwrap() < 1e-10);
    }
}

#[test]
fn decomposition_over_all_partitions() {
    let p = canonical();
    let mut r = rng(9);
    let parts = set_partitions(3);
    assert_eq!(parts.len(), 5);
    let (w, z, a) = (
        spectral(&mut r, 3),
        spectral(&mut r, 3),
        annulus(&mut r, 0.5, 2.0),
    );
    for blocks in &parts {
        let res = decomposition_residual(&p, &w, &z, a, blocks).unwrap();
        assert!(res < 1e-10, "{blocks:?}: {res}");
    }
}

#[test]
fn symmetric_in_w() {
    let p = canonical();
    let mut r = rng(10);
    let (w, z, a) = (
        spectral(&mut r, 3),
        spectral(&mut r, 3),
        annulus(&mut r, 0.5, 2.0),
    );
    assert!(w_transposition_residual(&p, &w, &z, a, 0, 2).unwrap() < 1e-12);
}

#[test]
fn coincident_z_is_removable() {
    let p = canonical();
    let mut r = rng(11);
    let (w, z, a) = (
        spectral(&mut r, 2),
        spectral(&mut r, 2),
        annulus(&mut r, 0.5, 2.0),
    );
    let near = phi_near_coincidence(&p, &w, &z, a, C64::new(1e-4, 0.0)).unwrap();
    let nearer = phi_near_coincidence(&p, &w, &z, a, C64::new(1e-5, 0.0)).unwrap();
    assert!(relative(near, nearer) < 1e-4, "{near} {nearer}");
    assert!(phi_near_coincidence(&p, &w, &z, a, C64::new(0.0, 0.0)).is_err());
}

#[test]
fn coefficient_trivial_values() {
    let p = canonical();
    let mut r = rng(12);
    let (z, lam) = (spectral(&mut r, 3), lambda(&mut r));
    let empty = Subset::empty(3);
    let full = empty.complement();
    let one = C64::one();
    assert!(relative(coeff(&p, CoeffKind::A, &empty, &z, lam).unwrap(), one) < 1e-14);
    assert!(relative(coeff(&p, CoeffKind::A, &full, &z, lam).unwrap(), one) < 1e-14);
    assert!(relative(coeff(&p, CoeffKind::B, &empty, &z, lam).unwrap(), one) < 1e-14);
    let s = Subset::from_indices(3, &[1]).unwrap();
    let t = Subset::from_indices(3, &[0, 1]).unwrap();
    assert!(matches!(
        coeff_c(&p, &s, &t, &z, lam),
        Err(Error::Domain(_))
    ));
}

#[test]
fn c_and_d_agree_with_the_lattice() {
    let p = canonical();
    let mut r = rng(13);
    for n in 1..=3 {
        let (z, lam) = (spectral(&mut r, n), lambda(&mut r));
        for s in Subset::all(n) {
            for t in Subset::all(n) {
                if s.len() != t.len() {
                    continue;
                }
                let c = coeff_c(&p, &s, &t, &z, lam).unwrap();
                let cl = coeff_c_lattice(&p, &s, &t, &z, lam).unwrap();
                assert!(relative(c, cl) < 1e-10, "C {s:?} {t:?}");
                let d = coeff_d(&p, &s, &t, &z, lam).unwrap();
                let dl = coeff_d_lattice(&p, &s, &t, &z, lam).unwrap();
                assert!(relative(d, dl) < 1e-10, "D {s:?} {t:?}");
            }
        }
    }
}
