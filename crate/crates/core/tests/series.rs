mod common;

use common::*;
use elliptic_sixj::series::identities::*;
use elliptic_sixj::series::{v_series, v_series_total, SeriesSpec};
use elliptic_sixj::{cplx, C64};
use rand::Rng;
use rand_chacha::ChaCha20Rng;

fn free(r: &mut ChaCha20Rng) -> C64 {
    annulus(r, 0.4, 2.5)
}

#[test]
fn jackson_single_variable() {
    let mut r = rng(11);
    let p = canonical();
    for n in 0..5 {
        for _ in 0..10 {
            let res = jackson_residual(
                &p,
                free(&mut r),
                n,
                free(&mut r),
                free(&mut r),
                free(&mut r),
            )
            .unwrap();
            assert!(res < 1e-11, "N={n}: {res}");
        }
    }
}

#[test]
fn bailey_transformation() {
    let mut r = rng(12);
    for n in 0..4 {
        for _ in 0..8 {
            let p = params(&mut r);
            let v: Vec<C64> = (0..6).map(|_| free(&mut r)).collect();
            let res = bailey_residual(&p, v[0], n, v[1], v[2], v[3], v[4], v[5]).unwrap();
            assert!(res < 1e-10, "N={n}: {res}");
        }
    }
}

#[test]
fn one_variable_series_is_very_well_poised() {
    let mut r = rng(13);
    let p = canonical();
    for n in 0..4 {
        let b: Vec<C64> = (0..2).map(|_| free(&mut r)).collect();
        let c: Vec<C64> = (0..4).map(|_| free(&mut r)).collect();
        let res = one_variable_residual(&p, free(&mut r), n, &b, &c, free(&mut r)).unwrap();
        assert!(res < 1e-11, "{res}");
    }
}

#[test]
fn composition_transform() {
    let mut r = rng(14);
    let p = canonical();
    for m in 1..4 {
        for n in 1..4 {
            for total in 0..4 {
                let z: Vec<C64> = (0..n).map(|_| free(&mut r)).collect();
                let w: Vec<C64> = (0..m).map(|_| free(&mut r)).collect();
                let a: Vec<C64> = (0..m + n - 1).map(|_| free(&mut r)).collect();
                let res = composition_transform_residual(&p, total, &z, &w, &a).unwrap();
                assert!(res < 1e-10, "m={m} n={n} N={total}: {res}");
            }
        }
    }
    assert!(
        composition_transform_residual(&p, 1, &[cplx(1.0, 0.0)], &[cplx(1.2, 0.0)], &[]).is_err()
    );
}

#[test]
fn rank_exchange_transformation() {
    let mut r = rng(15);
    let p = canonical();
    for m in 0..3usize {
        for n in 1..3usize {
            for k in 0..6 {
                let nn: Vec<usize> = (0..n).map(|i| (k + i) % 3).collect();
                let mm: Vec<usize> = (0..m).map(|i| (k + 2 * i + 1) % 3).collect();
                let w = (0..m).map(|_| free(&mut r)).collect();
                let z = (0..n).map(|_| free(&mut r)).collect();
                let t = Rkt::solved(
                    &p,
                    free(&mut r),
                    free(&mut r),
                    free(&mut r),
                    free(&mut r),
                    w,
                    z,
                    nn,
                    mm,
                )
                .unwrap();
                let res = t.residual(&p).unwrap();
                assert!(res < 1e-10, "m={m} n={n}: {res}");
            }
        }
    }
}

#[test]
fn multivariable_jackson_sums() {
    let mut r = rng(16);
    let p = canonical();
    for n in 1..3 {
        for k in 0..9usize {
            let nn: Vec<usize> = (0..n).map(|i| (k / 3usize.pow(i as u32)) % 3).collect();
            let z: Vec<C64> = (0..n).map(|_| free(&mut r)).collect();
            let (a, b, c, d) = (free(&mut r), free(&mut r), free(&mut r), free(&mut r));
            let res = jackson_multi_residual(&p, a, b, c, d, &z, &nn).unwrap();
            assert!(res < 1e-10, "{nn:?}: {res}");
            let res = jackson_box_residual(&p, a, b, c, d, &z, &nn).unwrap();
            assert!(res < 1e-10, "{nn:?}: {res}");
        }
    }
}

#[test]
fn scaling_leaves_series_unchanged() {
    let mut r = rng(17);
    let p = canonical();
    for _ in 0..10 {
        let z: Vec<C64> = (0..2).map(|_| free(&mut r)).collect();
        let b = vec![free(&mut r), free(&mut r), free(&mut r)];
        let c = vec![free(&mut r), free(&mut r), free(&mut r)];
        let spec = SeriesSpec::c_terminating(&p, free(&mut r), b, c, z, vec![2, 1]).unwrap();
        let base = v_series_total(&p, &spec).unwrap();
        let t = annulus(&mut r, 0.5, 2.0);
        let other = v_series(&p, &spec.scaled(t)).unwrap();
        let res = elliptic_sixj::residual::against_mass(base.value, other, base.mass);
        assert!(res < 1e-11, "{res}");
        let normal = v_series(&p, &spec.normal_form()).unwrap();
        assert!(elliptic_sixj::residual::against_mass(base.value, normal, base.mass) < 1e-11);
    }
}

#[test]
fn unterminated_series_is_rejected() {
    let mut r = rng(18);
    let p = canonical();
    let spec = SeriesSpec::new(
        free(&mut r),
        vec![free(&mut r), free(&mut r)],
        vec![free(&mut r), free(&mut r), free(&mut r)],
        vec![free(&mut r)],
        elliptic_sixj::series::Support::boxed(vec![r.random_range(1..3)]),
    )
    .unwrap();
    assert!(v_series(&p, &spec).is_err());
}
