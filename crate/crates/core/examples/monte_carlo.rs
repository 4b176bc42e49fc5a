//! Sample lossy detection records, write them as CSV, read them back and
//! estimate the witnesses with bootstrap errors.
use eprsteer::mc::{
    estimate_report, read_records, sample_trials, write_records, EstimateConfig, SamplingPlan,
};
use eprsteer::states::werner_state;

fn main() -> eprsteer::Result<()> {
    let plan = SamplingPlan::qubits(werner_state(0.9)?, 1.0, 0.6);
    let exact = plan.exact_report()?;
    let records = sample_trials(&plan, 100_000, 42)?;

    let mut csv = Vec::new();
    write_records(&records, &mut csv)?;
    let records = read_records(csv.as_slice())?;

    let est = estimate_report(&records, &EstimateConfig::default())?;
    let show = |name: &str, e: Option<eprsteer::mc::EstimateWithError>, x: Option<f64>| {
        if let (Some(e), Some(x)) = (e, x) {
            println!(
                "{name:>15}: {:.5} ± {:.5}  (exact {x:.5})",
                e.value, e.standard_error
            );
        }
    };
    show("S3", est.s3, exact.s3);
    show("S2", est.s2, exact.s2);
    show("wittmann_S", est.wittmann_s, exact.wittmann_s);
    show("wittmann_bound", est.wittmann_bound, exact.wittmann_bound);
    println!("{:>15}: {}", "records", est.records_consumed);
    Ok(())
}
