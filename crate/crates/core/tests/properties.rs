use gaussdist::bounds::{mean_term, overlap, proposition_bound, thermal_vacuum_bound, trace_delta, trace_delta_gauge_invariant};
use gaussdist::gaussian::{norms, validate_state, williamson, GaussianState, SymplecticForm};
use gaussdist::hat::{hat, hat_gauge_invariant};
use gaussdist::linalg::min_eigenvalue;
use gaussdist::sampling::{
    random_covariance, random_gauge_invariant_covariance, random_mean, random_pure_covariance, random_symplectic,
    rng_from_seed, CovarianceRange,
};
use gaussdist::Error;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(1000))]

    // ν is known by construction: scaling S diag(ν) Sᵀ by c scales every ν by c
    #[test]
    fn validity_matches_symplectic_spectrum(seed in any::<u64>(), modes in 1usize..=3, scale in 0.3f64..1.5) {
        let mut rng = rng_from_seed(seed);
        let s = random_symplectic(modes, 0.75, &mut rng);
        let nu: Vec<f64> = (0..modes).map(|_| rand::Rng::random_range(&mut rng, 0.5..4.0)).collect();
        let d = DMatrix::from_diagonal(&DVector::from_iterator(2 * modes, nu.iter().flat_map(|&v| [v, v])));
        let cov = &s * d * s.transpose() * scale;
        let cov = (&cov + cov.transpose()) * 0.5;
        let nu_min = nu.iter().copied().fold(f64::INFINITY, f64::min) * scale;
        prop_assume!((nu_min - 0.5).abs() > 1e-6);
        let result = validate_state(DVector::zeros(2 * modes), cov);
        if nu_min > 0.5 {
            prop_assert!(result.is_ok(), "{result:?}");
        } else {
            let is_uncertainty_violation = matches!(result, Err(Error::UncertaintyViolation { .. }));
            prop_assert!(is_uncertainty_violation, "{result:?}");
        }
    }

    #[test]
    fn williamson_round_trip(seed in any::<u64>(), modes in 1usize..=3) {
        let mut rng = rng_from_seed(seed);
        let cov = random_covariance(modes, CovarianceRange::default(), &mut rng);
        let w = williamson(&cov).unwrap();
        prop_assert!(w.symplectic_residual() <= 1e-10);
        prop_assert!(w.reconstruction_residual(&cov) <= 1e-10);
        prop_assert!(w.nu.windows(2).all(|p| p[0] <= p[1]));
        prop_assert!(w.nu.iter().all(|&v| v >= 0.5 - 1e-9));
    }

    #[test]
    fn norm_ordering(seed in any::<u64>(), modes in 1usize..=3) {
        let mut rng = rng_from_seed(seed);
        let a = random_covariance(modes, CovarianceRange::default(), &mut rng);
        let b = random_covariance(modes, CovarianceRange::default(), &mut rng);
        let n = norms(&(a - b)).unwrap();
        prop_assert!(n.op_norm <= n.hs_norm * (1.0 + 1e-12));
        prop_assert!(n.hs_norm <= n.trace_norm * (1.0 + 1e-12));
    }

    #[test]
    fn hat_residuals(seed in any::<u64>(), modes in 1usize..=3) {
        let mut rng = rng_from_seed(seed);
        let cov = random_covariance(modes, CovarianceRange::default(), &mut rng);
        let h = hat(&cov).unwrap();
        prop_assert!(h.hat_residual(&cov) <= 1e-8);
        prop_assert!(h.square_residual(&cov).unwrap() <= 1e-8);
        prop_assert!(min_eigenvalue(&(&h.hat - &cov)).unwrap() >= -1e-9);
    }

    #[test]
    fn bounds_hold_on_random_pairs(seed in any::<u64>(), modes in 1usize..=2) {
        let mut rng = rng_from_seed(seed);
        let range = CovarianceRange { nu_max: 6.0, max_squeeze: 0.75 };
        let s1 = GaussianState::new(random_mean(modes, &mut rng), random_covariance(modes, range, &mut rng)).unwrap();
        let s2 = GaussianState::new(random_mean(modes, &mut rng), random_covariance(modes, range, &mut rng)).unwrap();
        let report = proposition_bound(&s1, &s2).unwrap();
        for check in report.closed_form_checks() {
            prop_assert!(check.passed, "{check:?}");
        }
        prop_assert!(report.overlap > 0.0 && report.overlap <= 1.0);
        let td = trace_delta(s1.cov(), s2.cov()).unwrap();
        prop_assert!(td.identity_gap() <= 1e-8 * td.value.abs().max(1.0));
    }
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn gauge_invariant_reduction(seed in any::<u64>(), modes in 1usize..=3) {
        let mut rng = rng_from_seed(seed);
        let a = random_gauge_invariant_covariance(modes, 4.0, &mut rng);
        let b = random_gauge_invariant_covariance(modes, 4.0, &mut rng);
        let direct = hat_gauge_invariant(&a).unwrap();
        let general = hat(&a).unwrap().cov_upsilon;
        prop_assert!((&direct - &general).norm() <= 1e-8 * direct.norm().max(1.0));
        let td = trace_delta(&a, &b).unwrap().value;
        let reduced = trace_delta_gauge_invariant(&a, &b).unwrap();
        prop_assert!((td - reduced).abs() <= 1e-8 * td.abs().max(1.0));
    }

    // for equal pure covariances the overlap is exp(−(1/4) mᵗα⁻¹m)
    #[test]
    fn pure_displaced_overlap(seed in any::<u64>(), modes in 1usize..=3) {
        let mut rng = rng_from_seed(seed);
        let cov = random_pure_covariance(modes, 0.75, &mut rng);
        let m = random_mean(modes, &mut rng);
        let s1 = GaussianState::new(m.clone(), cov.clone()).unwrap();
        let s2 = GaussianState::new(DVector::zeros(2 * modes), cov.clone()).unwrap();
        let inv = cov.clone().try_inverse().unwrap();
        let expected = (-0.25 * m.dot(&(inv * &m))).exp();
        let got = overlap(&s1, &s2).unwrap().overlap;
        prop_assert!((got - expected).abs() <= 1e-9 * expected.max(1e-300) + 1e-15);
        let mt = mean_term(&m, &cov, &cov).unwrap();
        prop_assert!((mt.value - mt.unhatted).abs() <= 1e-9 * mt.value.max(1.0));
    }

    // the thermal-vacuum bound grows with the thermal occupation
    #[test]
    fn thermal_vacuum_monotone(seed in any::<u64>(), t1 in 0.0f64..3.0, dt in 1e-6f64..1.0) {
        let mut rng = rng_from_seed(seed);
        let modes = 1 + (seed % 2) as usize;
        let base = random_gauge_invariant_covariance(modes, 1.5, &mut rng);
        let n = 2 * modes;
        let at = |t: f64| {
            let cov = &base + DMatrix::identity(n, n) * t;
            thermal_vacuum_bound(&GaussianState::new(DVector::zeros(n), cov).unwrap()).unwrap()
        };
        let (lo, hi) = (at(t1), at(t1 + dt));
        prop_assert!(lo.bound < hi.bound);
        prop_assert!(lo.exact_bures <= hi.exact_bures + 1e-12);
        prop_assert!(lo.lambda0 >= hi.lambda0 - 1e-15);
        prop_assert!(2.0 * lo.exact_bures <= lo.bound + 1e-12);
    }
}

#[test]
fn symplectic_form_squares_to_minus_identity() {
    for modes in 1..=4 {
        let d = SymplecticForm::new(modes).unwrap();
        let sq = d.matrix() * d.matrix();
        assert_eq!(sq, -DMatrix::identity(2 * modes, 2 * modes));
    }
}
