//! Seeded Monte Carlo detection records and plug-in witness estimates.
//!
//! Every trial is kept, including trials where a detector did not fire
//! (outcome 0). Records are generated in fixed-size shards; shard `k` draws
//! from ChaCha20 stream `k` of the run seed, and shards are concatenated in
//! order, so the output does not depend on how many threads run them.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};
use crate::linalg::QuantumState;
use crate::observables::{outcome_index, SpinDirection};
use crate::steering::{
    joint_distribution, report_from_stats, steering_param_3_with, ConditionalStats, SettingBlock,
    SiteModel, SteeringReport, WitnessSetup,
};

/// Identifier of the pseudo-random stream, stored in record metadata.
pub const GENERATOR_ID: &str = "chacha20/seed_from_u64/stream=shard/shard_size=8192";
pub const SHARD_SIZE: u64 = 8192;
pub const DEFAULT_BOOTSTRAP: usize = 200;
pub const DEFAULT_MIN_TRIALS: usize = 1000;
pub const RECORD_HEADER: [&str; 5] = ["trial", "setting_a", "setting_b", "outcome_a", "outcome_b"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub setting_a: String,
    pub setting_b: String,
    pub outcome_a: i8,
    pub outcome_b: i8,
}

/// How settings are chosen per trial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Schedule {
    /// One setting drawn uniformly per trial, used at both sites.
    #[default]
    Paired,
    /// Each site draws its setting independently.
    Independent,
    /// Contiguous equal blocks of each setting, used at both sites.
    Blocked,
}

impl std::str::FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paired" => Ok(Schedule::Paired),
            "independent" => Ok(Schedule::Independent),
            "blocked" => Ok(Schedule::Blocked),
            other => argument(format!("unknown schedule '{other}'")),
        }
    }
}

/// State, site models and settings for a sampling run. Site A (first
/// subsystem) is the steered site.
#[derive(Clone, Debug)]
pub struct SamplingPlan {
    pub state: QuantumState,
    pub site_a: SiteModel,
    pub site_b: SiteModel,
    pub settings: Vec<SpinDirection>,
    pub schedule: Schedule,
}

impl SamplingPlan {
    pub fn qubits(state: QuantumState, eta_a: f64, eta_b: f64) -> Self {
        Self {
            state,
            site_a: SiteModel::Qubit { efficiency: eta_a },
            site_b: SiteModel::Qubit { efficiency: eta_b },
            settings: SpinDirection::AXES.to_vec(),
            schedule: Schedule::Paired,
        }
    }

    /// Cumulative joint tables over the 9 (a, b) cells, per setting pair.
    fn tables(&self) -> Result<Vec<Vec<[f64; 9]>>> {
        if self.settings.is_empty() {
            return argument("sampling plan needs at least one setting");
        }
        self.settings
            .iter()
            .map(|da| {
                let obs_a = self.site_a.observable(*da)?;
                self.settings
                    .iter()
                    .map(|db| {
                        let obs_b = self.site_b.observable(*db)?;
                        let joint = joint_distribution(&self.state, &obs_a, &obs_b)?;
                        let mut cum = [0.0; 9];
                        let mut acc = 0.0;
                        for (k, slot) in cum.iter_mut().enumerate() {
                            acc += joint[k / 3][k % 3];
                            *slot = acc;
                        }
                        Ok(cum)
                    })
                    .collect()
            })
            .collect()
    }

    /// Exact report for the aligned setting pairs this plan samples.
    pub fn exact_report(&self) -> Result<SteeringReport> {
        let setup = WitnessSetup {
            steered: self.site_a,
            steerer: self.site_b,
            strategy: Default::default(),
        };
        match self.settings.as_slice() {
            [a, b, c] => steering_param_3_with(&self.state, &[*a, *b, *c], &setup),
            _ => {
                let stats =
                    crate::steering::conditional_stats(&self.state, &self.settings, &setup)?;
                let j = crate::steering::uncertainty_bound_j(
                    &self.state,
                    &self.site_a.observable(self.settings[0])?,
                )?;
                report_from_stats(&stats, j)
            }
        }
    }
}

fn draw_cell<R: Rng>(rng: &mut R, cum: &[f64; 9]) -> (i8, i8) {
    let u: f64 = rng.random::<f64>() * cum[8];
    let k = cum.iter().position(|&c| u < c).unwrap_or(8);
    ((k / 3) as i8 - 1, (k % 3) as i8 - 1)
}

/// Draws `n` trials from the exact Born probabilities of the plan.
pub fn sample_trials(plan: &SamplingPlan, n: u64, seed: u64) -> Result<Vec<TrialRecord>> {
    if n == 0 {
        return argument("number of trials must be at least 1");
    }
    let tables = plan.tables()?;
    let labels: Vec<String> = plan.settings.iter().map(SpinDirection::label).collect();
    let k = plan.settings.len();
    let shards = n.div_ceil(SHARD_SIZE);
    let parts: Vec<Vec<TrialRecord>> = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let start = shard * SHARD_SIZE;
            let end = (start + SHARD_SIZE).min(n);
            (start..end)
                .map(|trial| {
                    let (ia, ib) = match plan.schedule {
                        Schedule::Paired => {
                            let i = rng.random_range(0..k);
                            (i, i)
                        }
                        Schedule::Independent => (rng.random_range(0..k), rng.random_range(0..k)),
                        Schedule::Blocked => {
                            let i = ((trial as u128 * k as u128) / n as u128) as usize;
                            (i, i)
                        }
                    };
                    let (outcome_a, outcome_b) = draw_cell(&mut rng, &tables[ia][ib]);
                    TrialRecord {
                        trial,
                        setting_a: labels[ia].clone(),
                        setting_b: labels[ib].clone(),
                        outcome_a,
                        outcome_b,
                    }
                })
                .collect()
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

pub fn write_records<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_HEADER)?;
    for r in records {
        w.write_record([
            r.trial.to_string(),
            r.setting_a.clone(),
            r.setting_b.clone(),
            r.outcome_a.to_string(),
            r.outcome_b.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<TrialRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().ne(RECORD_HEADER) {
        return argument(format!(
            "record header must be '{}', got '{}'",
            RECORD_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        ));
    }
    let mut out = Vec::new();
    for row in rdr.deserialize() {
        let r: TrialRecord = row?;
        if outcome_index(r.outcome_a).is_none() || outcome_index(r.outcome_b).is_none() {
            return argument(format!("trial {}: outcomes must be -1, 0 or 1", r.trial));
        }
        out.push(r);
    }
    Ok(out)
}

/// Sidecar written next to a record file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordMetadata {
    pub seed: u64,
    pub n_trials: u64,
    pub state: String,
    pub eta_a: Option<f64>,
    pub eta_b: Option<f64>,
    pub settings: Vec<String>,
    pub schedule: Schedule,
    pub generator: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithError {
    pub value: f64,
    pub standard_error: f64,
    pub n_trials: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateConfig {
    pub bootstrap: usize,
    pub seed: u64,
    /// Below this many records no verdict is emitted.
    pub min_trials: usize,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        Self {
            bootstrap: DEFAULT_BOOTSTRAP,
            seed: 0,
            min_trials: DEFAULT_MIN_TRIALS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    /// Plug-in point estimates. Verdicts are cleared below the minimum-n gate.
    pub report: SteeringReport,
    #[serde(rename = "J")]
    pub j: EstimateWithError,
    #[serde(rename = "S3")]
    pub s3: Option<EstimateWithError>,
    #[serde(rename = "S2")]
    pub s2: Option<EstimateWithError>,
    #[serde(rename = "wittmann_S")]
    pub wittmann_s: Option<EstimateWithError>,
    pub wittmann_bound: Option<EstimateWithError>,
    pub inference_variances: Vec<(String, EstimateWithError)>,
    pub records_consumed: u64,
    pub verdicts_emitted: bool,
    pub warnings: Vec<String>,
}

/// Cell counts: per aligned setting label, counts[a][b]; plus A-detections.
#[derive(Clone, Debug, Default)]
struct CountTable {
    cells: BTreeMap<(String, String), [[u64; 3]; 3]>,
}

impl CountTable {
    fn from_records(records: &[TrialRecord]) -> Self {
        let mut cells: BTreeMap<(String, String), [[u64; 3]; 3]> = BTreeMap::new();
        for r in records {
            let a = outcome_index(r.outcome_a).expect("validated outcome");
            let b = outcome_index(r.outcome_b).expect("validated outcome");
            cells
                .entry((r.setting_a.clone(), r.setting_b.clone()))
                .or_default()[a][b] += 1;
        }
        Self { cells }
    }

    fn total(&self) -> u64 {
        self.cells.values().flatten().flatten().sum()
    }

    fn flat(&self) -> Vec<u64> {
        self.cells.values().flatten().flatten().copied().collect()
    }

    fn with_flat(&self, counts: &[u64]) -> Self {
        let mut cells = self.cells.clone();
        for (table, chunk) in cells.values_mut().zip(counts.chunks(9)) {
            for (k, &c) in chunk.iter().enumerate() {
                table[k / 3][k % 3] = c;
            }
        }
        Self { cells }
    }

    fn estimate(&self) -> Result<SteeringReport> {
        let total = self.total() as f64;
        let detected: u64 = self
            .cells
            .values()
            .map(|t| t[0].iter().sum::<u64>() + t[2].iter().sum::<u64>())
            .sum();
        let f = detected as f64 / total;
        let j = f - f * f + 2.0 * f;
        let blocks: Vec<SettingBlock> = self
            .cells
            .iter()
            .filter(|((sa, sb), t)| sa == sb && t.iter().flatten().any(|&c| c > 0))
            .map(|((sa, sb), t)| {
                let joint = t.map(|row| row.map(|c| c as f64));
                SettingBlock::from_joint(sa.clone(), sb.clone(), &joint)
            })
            .collect();
        report_from_stats(&ConditionalStats { blocks }, j)
    }
}

fn multinomial<R: Rng>(rng: &mut R, n: u64, weights: &[u64]) -> Vec<u64> {
    let mut remaining_n = n;
    let mut remaining_w: u64 = weights.iter().sum();
    weights
        .iter()
        .map(|&w| {
            if remaining_n == 0 || w == 0 {
                remaining_w -= w;
                return 0;
            }
            let p = (w as f64 / remaining_w as f64).min(1.0);
            let draw = Binomial::new(remaining_n, p)
                .expect("p in [0, 1]")
                .sample(rng);
            remaining_n -= draw;
            remaining_w -= w;
            draw
        })
        .collect()
}

fn std_error(values: &[f64]) -> f64 {
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.len() < 2 {
        return 0.0;
    }
    let n = finite.len() as f64;
    let mean = finite.iter().sum::<f64>() / n;
    (finite.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

/// Plug-in witness estimates from every record, with bootstrap standard
/// errors. Bootstrap resampling of records is done on the equivalent cell
/// count table (a multinomial draw with the empirical cell frequencies).
pub fn estimate_report(records: &[TrialRecord], config: &EstimateConfig) -> Result<EstimateReport> {
    if records.is_empty() {
        return argument("no records to estimate from");
    }
    if let Some(r) = records
        .iter()
        .find(|r| outcome_index(r.outcome_a).is_none() || outcome_index(r.outcome_b).is_none())
    {
        return argument(format!("trial {}: outcomes must be -1, 0 or 1", r.trial));
    }
    let table = CountTable::from_records(records);
    let n = table.total();
    let mut report = table.estimate()?;

    let mut warnings = Vec::new();
    for ((sa, sb), t) in table.cells.iter().filter(|((sa, sb), _)| sa == sb) {
        for (b, label) in ["-1", "0", "+1"].iter().enumerate() {
            let count: u64 = (0..3).map(|a| t[a][b]).sum();
            if count < 2 {
                warnings.push(format!(
                    "setting {sa}/{sb}: conditional cell b={label} has {count} trial(s); weighted by its frequency"
                ));
            }
        }
    }

    let flat = table.flat();
    // A resample that empties a whole setting block has no estimate and is
    // left out of the spread.
    let resamples: Vec<SteeringReport> = (0..config.bootstrap as u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
            rng.set_stream(i);
            table
                .with_flat(&multinomial(&mut rng, n, &flat))
                .estimate()
                .ok()
        })
        .collect();

    let with_error = |value: f64, pick: &dyn Fn(&SteeringReport) -> Option<f64>| {
        let values: Vec<f64> = resamples.iter().filter_map(pick).collect();
        EstimateWithError {
            value,
            standard_error: std_error(&values),
            n_trials: n,
        }
    };
    let opt = |v: Option<f64>, pick: &dyn Fn(&SteeringReport) -> Option<f64>| {
        v.map(|v| with_error(v, pick))
    };

    let inference_variances = report
        .inference_variances
        .iter()
        .map(|iv| {
            (
                iv.setting.clone(),
                with_error(iv.value, &|r: &SteeringReport| {
                    r.inference_variances
                        .iter()
                        .find(|x| x.setting == iv.setting)
                        .map(|x| x.value)
                }),
            )
        })
        .collect();
    let out_j = with_error(report.j.unwrap_or(0.0), &|r| r.j);
    let s3 = opt(report.s3, &|r| r.s3);
    let s2 = opt(report.s2, &|r| r.s2);
    let wittmann_s = opt(report.wittmann_s, &|r| r.wittmann_s);
    let wittmann_bound = opt(report.wittmann_bound, &|r| r.wittmann_bound);

    let verdicts_emitted = n as usize >= config.min_trials;
    if !verdicts_emitted {
        report.verdicts = Default::default();
        warnings.push(format!(
            "{n} records is below the minimum of {}; no verdict emitted",
            config.min_trials
        ));
    }

    Ok(EstimateReport {
        report,
        j: out_j,
        s3,
        s2,
        wittmann_s,
        wittmann_bound,
        inference_variances,
        records_consumed: n,
        verdicts_emitted,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{singlet, werner_state};

    fn plan(eta_a: f64, eta_b: f64) -> SamplingPlan {
        SamplingPlan::qubits(werner_state(1.0).unwrap(), eta_a, eta_b)
    }

    #[test]
    fn zero_efficiency_never_clicks() {
        let recs = sample_trials(&plan(1.0, 0.0), 5000, 1).unwrap();
        assert!(recs.iter().all(|r| r.outcome_b == 0));
    }

    #[test]
    fn perfect_singlet_is_anticorrelated() {
        let recs = sample_trials(&plan(1.0, 1.0), 5000, 2).unwrap();
        assert!(recs
            .iter()
            .all(|r| r.outcome_a == -r.outcome_b && r.outcome_a != 0));
    }

    #[test]
    fn click_rate_matches_efficiency() {
        let n = 100_000;
        let recs = sample_trials(&plan(1.0, 0.6), n, 3).unwrap();
        for target in [-1, 1] {
            let k = recs.iter().filter(|r| r.outcome_b == target).count() as f64;
            let p = 0.3;
            let se = (p * (1.0 - p) / n as f64).sqrt();
            assert!((k / n as f64 - p).abs() < 4.0 * se);
        }
    }

    #[test]
    fn records_are_deterministic_and_indexed() {
        let a = sample_trials(&plan(0.9, 0.7), 20_000, 11).unwrap();
        let b = sample_trials(&plan(0.9, 0.7), 20_000, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().enumerate().all(|(i, r)| r.trial == i as u64));
        let c = sample_trials(&plan(0.9, 0.7), 20_000, 12).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn worker_count_does_not_change_records() {
        let p = plan(0.8, 0.8);
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = one.install(|| sample_trials(&p, 30_000, 5).unwrap());
        let b = four.install(|| sample_trials(&p, 30_000, 5).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn csv_round_trip() {
        let recs = sample_trials(&plan(0.5, 0.5), 100, 4).unwrap();
        let mut buf = Vec::new();
        write_records(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("trial,setting_a,setting_b,outcome_a,outcome_b\n"));
        assert_eq!(read_records(buf.as_slice()).unwrap(), recs);
        assert!(read_records("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn deterministic_records_give_zero_s3() {
        let recs: Vec<TrialRecord> = (0..3000u64)
            .map(|t| {
                let label = ["X", "Y", "Z"][(t % 3) as usize].to_string();
                let a = if t % 2 == 0 { 1 } else { -1 };
                TrialRecord {
                    trial: t,
                    setting_a: label.clone(),
                    setting_b: label,
                    outcome_a: a,
                    outcome_b: -a,
                }
            })
            .collect();
        let r = estimate_report(&recs, &EstimateConfig::default()).unwrap();
        assert_eq!(r.s3.unwrap().value, 0.0);
        assert_eq!(r.records_consumed, 3000);
        assert_eq!(r.report.verdicts.steering_3, Some(true));
    }

    #[test]
    fn small_samples_get_no_verdict() {
        let mut p = plan(1.0, 0.6);
        p.schedule = Schedule::Blocked;
        let recs = sample_trials(&p, 10, 9).unwrap();
        let r = estimate_report(&recs, &EstimateConfig::default()).unwrap();
        assert!(!r.verdicts_emitted);
        assert_eq!(r.report.verdicts, Default::default());
        assert!(r.s3.is_some());
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn estimate_tracks_exact_value() {
        let p = plan(1.0, 0.6);
        let recs = sample_trials(&p, 100_000, 21).unwrap();
        let r = estimate_report(
            &recs,
            &EstimateConfig {
                seed: 21,
                ..Default::default()
            },
        )
        .unwrap();
        let s3 = r.s3.unwrap();
        assert!(s3.standard_error > 0.0);
        assert!((s3.value - 0.6).abs() < 4.0 * s3.standard_error, "{s3:?}");
        let exact = p.exact_report().unwrap();
        assert!((exact.s3.unwrap() - 0.6).abs() < 1e-12);
    }

    #[test]
    fn independent_schedule_uses_aligned_pairs_only() {
        let mut p = plan(1.0, 1.0);
        p.schedule = Schedule::Independent;
        let recs = sample_trials(&p, 30_000, 8).unwrap();
        assert!(recs.iter().any(|r| r.setting_a != r.setting_b));
        let r = estimate_report(&recs, &EstimateConfig::default()).unwrap();
        assert_eq!(r.records_consumed, 30_000);
        assert!(r.s3.unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn blocked_schedule_is_contiguous() {
        let mut p = SamplingPlan::qubits(singlet(), 1.0, 1.0);
        p.schedule = Schedule::Blocked;
        let recs = sample_trials(&p, 300, 1).unwrap();
        assert!(recs[..100].iter().all(|r| r.setting_a == "X"));
        assert!(recs[100..200].iter().all(|r| r.setting_a == "Y"));
        assert!(recs[200..].iter().all(|r| r.setting_a == "Z"));
    }
}
