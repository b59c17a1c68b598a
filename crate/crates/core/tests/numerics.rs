use elliptic_sixj::residual::{max_residual, relative};
use elliptic_sixj::series::{v_series, v_series_total, SeriesSpec};
use elliptic_sixj::{Accumulator, Params, C64};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn point(lo: f64, hi: f64) -> impl Strategy<Value = C64> {
    (lo..hi, 0.0..std::f64::consts::TAU).prop_map(|(r, a)| C64::from_polar(r, a))
}

fn nomes() -> impl Strategy<Value = Params> {
    (point(0.0, 0.5), point(0.4, 0.9)).prop_map(|(p, q)| Params::new(p, q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn theta_inversion(params in nomes(), x in point(0.3, 3.0)) {
        let lhs = params.theta(params.p() / x).unwrap();
        let rhs = params.theta(x).unwrap();
        prop_assert!(relative(lhs, rhs) < 1e-11);
    }

    #[test]
    fn theta_reciprocal_flips_sign(params in nomes(), x in point(0.3, 3.0)) {
        let lhs = params.theta(x.inv()).unwrap();
        let rhs = -params.theta(x).unwrap() / x;
        prop_assert!(relative(lhs, rhs) < 1e-11);
    }

    #[test]
    fn theta_quasi_periodicity(params in nomes(), x in point(0.3, 3.0)) {
        let lhs = params.theta(params.p() * x).unwrap();
        let rhs = -params.theta(x).unwrap() / x;
        prop_assert!(relative(lhs, rhs) < 1e-11);
    }

    #[test]
    fn theta_without_nome(q in point(0.4, 0.9), x in point(0.3, 3.0)) {
        let params = Params::new(C64::zero(), q).unwrap();
        prop_assert!(relative(params.theta(x).unwrap(), C64::one() - x) < 1e-15);
    }

    #[test]
    fn pochhammer_splits(params in nomes(), x in point(0.3, 3.0), j in 0i64..5, k in -4i64..5) {
        let lhs = params.pochhammer(x, j + k).unwrap();
        let rhs = params.pochhammer(x, j).unwrap() * params.pochhammer(params.q_int(j) * x, k).unwrap();
        prop_assert!(relative(lhs, rhs) < 1e-11);
    }

    #[test]
    fn delta_ratio_at_origin(params in nomes(), z in proptest::collection::vec(point(0.5, 2.0), 0..4)) {
        let y = vec![0; z.len()];
        prop_assert!(relative(params.delta_ratio(&z, &y).unwrap(), C64::one()) < 1e-15);
    }

    #[test]
    fn series_invariant_under_scaling(
        params in nomes(),
        a in point(0.5, 2.0),
        b in proptest::collection::vec(point(0.5, 2.0), 3),
        c in proptest::collection::vec(point(0.5, 2.0), 3),
        z in proptest::collection::vec(point(0.5, 2.0), 2),
        t in point(0.5, 2.0),
        n0 in 0usize..3,
        n1 in 0usize..3,
    ) {
        let spec = SeriesSpec::c_terminating(&params, a, b, c, z, vec![n0, n1]).unwrap();
        let base = v_series_total(&params, &spec).unwrap();
        let scaled = v_series(&params, &spec.scaled(t)).unwrap();
        let res = elliptic_sixj::residual::against_mass(base.value, scaled, base.mass);
        prop_assert!(res < 1e-10, "{}", res);
    }

    #[test]
    fn accumulator_mass_bounds_value(xs in proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 0..50)) {
        let mut acc = Accumulator::<f64>::new();
        for &(re, im) in &xs {
            acc.add(C64::new(re, im));
        }
        prop_assert!(acc.value().norm() <= acc.mass() * (1.0 + 1e-12));
    }
}

#[test]
fn nan_residual_is_infinite() {
    assert!(max_residual(0.0, f64::NAN).is_infinite());
    assert_eq!(max_residual(1e-3, 2e-3), 2e-3);
}
