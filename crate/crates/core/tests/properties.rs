use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use eprsteer::monogamy::{cross_variance_sums, monogamy_2, MonogamyConfig};
use eprsteer::observables::{lossy_spin_measurement, SpinDirection};
use eprsteer::sampling::{haar_pure_state, random_mixed_state};
use eprsteer::states::werner_state;
use eprsteer::steering::{conditional_stats, steering_param_2, steering_param_3, WitnessSetup};
use eprsteer::teleport::entanglement_swap;

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn direction() -> impl Strategy<Value = SpinDirection> {
    (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU)
        .prop_map(|(t, p)| SpinDirection::from_angles(t, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_undoes_tensor(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let mut r = rng(seed);
        let a = random_mixed_state(&mut r, vec![da], 2);
        let b = random_mixed_state(&mut r, vec![db], 3);
        let ab = a.tensor(&b).unwrap();
        prop_assert!(ab.partial_trace(&[0]).unwrap().rho().max_abs_diff(a.rho()) < 1e-12);
        prop_assert!(ab.partial_trace(&[1]).unwrap().rho().max_abs_diff(b.rho()) < 1e-12);
    }

    #[test]
    fn lossy_effects_are_complete(seed in any::<u64>(), dir in direction(), eta in 0.0..=1.0f64) {
        let obs = lossy_spin_measurement(dir, eta).unwrap();
        let s = random_mixed_state(&mut rng(seed), vec![2], 2);
        let p = obs.probabilities(&s).unwrap();
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(p.iter().all(|&x| x >= -1e-12));
        prop_assert!((p[1] - (1.0 - eta)).abs() < 1e-12);
    }

    #[test]
    fn s3_decreases_with_efficiency_and_purity(
        p in 0.0..=1.0f64, eb in 0.0..=1.0f64, ea in 0.05..=1.0f64,
        dp in 0.0..0.5f64, de in 0.0..0.5f64,
    ) {
        let xyz = SpinDirection::AXES;
        let base = steering_param_3(&werner_state(p).unwrap(), &xyz, ea, eb).unwrap().s3.unwrap();
        let more_eta = steering_param_3(&werner_state(p).unwrap(), &xyz, ea, (eb + de).min(1.0))
            .unwrap().s3.unwrap();
        let more_p = steering_param_3(&werner_state((p + dp).min(1.0)).unwrap(), &xyz, ea, eb)
            .unwrap().s3.unwrap();
        prop_assert!(more_eta <= base + 1e-12);
        prop_assert!(more_p <= base + 1e-12);
    }

    #[test]
    fn inference_variance_is_second_moment_minus_t(
        seed in any::<u64>(), ea in 0.0..=1.0f64, eb in 0.0..=1.0f64,
    ) {
        let s = random_mixed_state(&mut rng(seed), vec![2, 2], 2);
        let stats = conditional_stats(&s, &SpinDirection::AXES, &WitnessSetup::qubits(ea, eb)).unwrap();
        for b in &stats.blocks {
            // ⟨a²⟩ = η_A for the lossy qubit measurement.
            prop_assert!((b.second_moment() - ea).abs() < 1e-12);
            prop_assert!((b.inference_variance() - (ea - b.t_value())).abs() < 1e-12);
        }
    }

    #[test]
    fn bell_outcomes_sum_to_one(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vc = random_mixed_state(&mut r, vec![2, 2], 3);
        let ab = random_mixed_state(&mut r, vec![2, 2], 2);
        let outs = entanglement_swap(&vc, &ab).unwrap();
        let total: f64 = outs.iter().map(|o| o.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn cross_variance_sums_exceed_j(seed in any::<u64>(), mixed in any::<bool>(), ea in 0.1..=1.0f64) {
        let mut r = rng(seed);
        let s = if mixed {
            random_mixed_state(&mut r, vec![2; 4], 2)
        } else {
            haar_pure_state(&mut r, vec![2; 4])
        };
        let cfg = MonogamyConfig { eta_steered: ea, ..Default::default() };
        let (sums, j) = cross_variance_sums(&s, [0, 1, 2, 3], &SpinDirection::AXES, &cfg).unwrap();
        for v in sums {
            prop_assert!(v >= j - 1e-9, "{v} < {j}");
        }
    }

    #[test]
    fn one_steerer_excludes_the_other(seed in any::<u64>()) {
        let s = haar_pure_state(&mut rng(seed), vec![2; 3]);
        let r = monogamy_2(&s, [0, 1, 2], &[SpinDirection::X, SpinDirection::Y], &MonogamyConfig::default()).unwrap();
        if r.terms[0].value < 1.0 {
            prop_assert!(r.terms[1].value > 1.0);
        }
        if r.terms[1].value < 1.0 {
            prop_assert!(r.terms[0].value > 1.0);
        }
    }

    #[test]
    fn separable_werner_never_steers_two_setting(p in 0.0..=0.5f64, eb in 0.0..=1.0f64) {
        let r = steering_param_2(&werner_state(p).unwrap(), &[SpinDirection::X, SpinDirection::Y], eb).unwrap();
        prop_assert!(r.s2.unwrap() >= 1.0 - 1e-12);
    }
}
