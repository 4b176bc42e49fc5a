use eprsteer::mc::{
    estimate_report, sample_trials, EstimateConfig, EstimateWithError, SamplingPlan,
};
use eprsteer::states::werner_state;
use eprsteer::steering::SteeringReport;

fn within(e: Option<EstimateWithError>, exact: Option<f64>) -> bool {
    match (e, exact) {
        (Some(e), Some(x)) => (e.value - x).abs() <= 4.0 * e.standard_error + 1e-12,
        (None, None) => true,
        _ => false,
    }
}

#[test]
fn estimates_are_consistent_on_werner_grid() {
    for p in [0.8, 1.0] {
        for eta_b in [0.4, 0.8] {
            let plan = SamplingPlan::qubits(werner_state(p).unwrap(), 1.0, eta_b);
            let exact: SteeringReport = plan.exact_report().unwrap();
            let mut hits = [0usize; 5];
            for seed in 0..100u64 {
                let recs = sample_trials(&plan, 20_000, seed).unwrap();
                let est = estimate_report(
                    &recs,
                    &EstimateConfig {
                        seed: seed + 500,
                        ..Default::default()
                    },
                )
                .unwrap();
                assert_eq!(est.records_consumed, recs.len() as u64);
                let checks = [
                    within(est.s3, exact.s3),
                    within(est.s2, exact.s2),
                    within(est.wittmann_s, exact.wittmann_s),
                    within(est.wittmann_bound, exact.wittmann_bound),
                    within(Some(est.j), exact.j),
                ];
                for (h, ok) in hits.iter_mut().zip(checks) {
                    *h += ok as usize;
                }
            }
            for (name, h) in ["S3", "S2", "wittmann_S", "wittmann_bound", "J"]
                .iter()
                .zip(hits)
            {
                assert!(h >= 95, "p_s={p} eta_b={eta_b} {name}: {h}/100");
            }
        }
    }
}
