mod common;

use common::*;
use elliptic_sixj::lattice::identities::*;
use elliptic_sixj::lattice::{self, all_sign_vectors, partition_function, r_entry, Boundary, Sign};
use elliptic_sixj::weight::identities::{domain_wall_dual_residual, domain_wall_residual};
use elliptic_sixj::{cplx, C64};

#[test]
fn one_by_one_lattice_is_the_r_matrix() {
    let p = canonical();
    let lam = cplx(0.37, 0.21);
    let (w, z) = (cplx(1.3, 0.2), cplx(0.7, -0.5));
    for b in Boundary::all_balanced(1, 1) {
        let zz = partition_function(&p, lam, &[w], &[z], &b).unwrap();
        let r = r_entry(&p, b.bottom[0], b.top[0], b.left[0], b.right[0], lam, w / z).unwrap();
        assert!((zz - r).norm() < 1e-15);
    }
}

#[test]
fn mixed_entry_at_unit_spectral_parameter() {
    use Sign::*;
    let p = canonical();
    let v = r_entry(
        &p,
        Plus,
        Minus,
        Minus,
        Plus,
        cplx(0.3, 0.4),
        C64::new(1.0, 0.0),
    )
    .unwrap();
    assert!((v - C64::new(1.0, 0.0)).norm() < 1e-14);
}

#[test]
fn domain_wall_matches_weight_function() {
    let mut r = rng(1);
    for n in 1..=4 {
        let p = params(&mut r);
        let lam = lambda(&mut r);
        let (w, z) = (spectral(&mut r, n), spectral(&mut r, n));
        assert!(
            domain_wall_residual(&p, lam, &w, &z).unwrap() < 1e-11,
            "n={n}"
        );
        assert!(
            domain_wall_dual_residual(&p, lam, &w, &z).unwrap() < 1e-11,
            "n={n}"
        );
    }
}

#[test]
fn splitting_recursions() {
    let mut r = rng(2);
    let p = params(&mut r);
    let lam = lambda(&mut r);
    for (m, n) in [(2, 2), (3, 2), (2, 3)] {
        let (w, z) = (spectral(&mut r, m), spectral(&mut r, n));
        for at in 0..=m {
            let v =
                max_over_boundaries(m, n, |b| splitting_vertical(&p, lam, &w, &z, b, at)).unwrap();
            assert!(v < 1e-12, "vertical {m}x{n} at {at}: {v}");
        }
        for at in 0..=n {
            let v = max_over_boundaries(m, n, |b| splitting_horizontal(&p, lam, &w, &z, b, at))
                .unwrap();
            assert!(v < 1e-12, "horizontal {m}x{n} at {at}: {v}");
        }
    }
}

#[test]
fn coincident_parameters_give_deltas() {
    let mut r = rng(3);
    let p = params(&mut r);
    let lam = lambda(&mut r);
    for n in 1..=3 {
        let z = spectral(&mut r, n);
        for bottom in all_sign_vectors(n) {
            for top in all_sign_vectors(n) {
                for left in all_sign_vectors(n) {
                    for right in all_sign_vectors(n) {
                        let b = Boundary::new(bottom.clone(), top.clone(), left.clone(), right)
                            .unwrap();
                        assert!(coincident_delta(&p, lam, &z, &b).unwrap() < 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn closed_form_products() {
    let mut r = rng(4);
    for (m, n) in [(1, 1), (2, 3), (3, 2), (4, 4)] {
        let p = params(&mut r);
        let lam = lambda(&mut r);
        let (w, z) = (spectral(&mut r, m), spectral(&mut r, n));
        assert!(all_plus(&p, lam, &w, &z).unwrap() < 1e-13);
        assert!(plus_minus(&p, lam, &w, &z).unwrap() < 1e-12);
    }
}

#[test]
fn crossing_symmetry() {
    let mut r = rng(5);
    for (m, n) in [(1, 1), (2, 2), (2, 1), (1, 2), (2, 3), (3, 2)] {
        let p = params(&mut r);
        let lam = lambda(&mut r);
        let (w, z) = (spectral(&mut r, m), spectral(&mut r, n));
        let v = max_over_boundaries(m, n, |b| crossing(&p, lam, &w, &z, b)).unwrap();
        assert!(v < 1e-11, "{m}x{n}: {v}");
    }
}

#[test]
fn square_lattice_reduction() {
    let mut r = rng(6);
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let p = params(&mut r);
        let lam = lambda(&mut r);
        let (w, z) = (spectral(&mut r, m), spectral(&mut r, n));
        for a in all_sign_vectors(m) {
            for c in all_sign_vectors(m) {
                for b in all_sign_vectors(n) {
                    for d in all_sign_vectors(n) {
                        let v = square_lattice(&p, lam, &w, &z, &a, &b, &c, &d).unwrap();
                        assert!(v < 1e-11, "{m}x{n}: {v}");
                    }
                }
            }
        }
    }
}

#[test]
fn unbalanced_boundary_vanishes() {
    let p = canonical();
    let b = Boundary::parse("++", "+-", "+", "+").unwrap();
    let w = [cplx(1.1, 0.1), cplx(0.8, 0.3)];
    let v = partition_function(&p, cplx(0.2, 0.1), &w, &[cplx(0.9, -0.2)], &b).unwrap();
    assert_eq!(v, C64::new(0.0, 0.0));
    assert!(lattice::enumerate_states(&b).unwrap().is_empty());
}
