//! Monogamy of steering: numerical checks that
//! S_{A|B}^{(3)} + S_{A|C}^{(3)} + S_{A|D}^{(3)} ≥ 3 and
//! S_{C|B}^{(2)} + S_{C|E}^{(2)} ≥ 2 on multipartite states.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};
use crate::linalg::QuantumState;
use crate::observables::SpinDirection;
use crate::sampling::{haar_pure_state, random_mixed_state};
use crate::steering::{
    check_orthogonal, steering_param_2_with, steering_param_3_with, SiteModel, SteererStrategy,
    WitnessSetup,
};

/// Slack below which a monogamy relation counts as violated.
pub const SLACK_TOL: f64 = 1e-9;

/// Efficiencies and steerer strategy shared by every term.
#[derive(Clone, Debug, PartialEq)]
pub struct MonogamyConfig {
    /// Detection efficiency at the steered party (ignored by the two-setting
    /// relation, which assumes trusted detectors).
    pub eta_steered: f64,
    /// Detection efficiency at each steering party.
    pub eta_steerers: f64,
    pub strategy: SteererStrategy,
}

impl Default for MonogamyConfig {
    fn default() -> Self {
        Self {
            eta_steered: 1.0,
            eta_steerers: 1.0,
            strategy: SteererStrategy::Aligned,
        }
    }
}

impl MonogamyConfig {
    fn setup(&self, eta_steered: f64) -> WitnessSetup {
        WitnessSetup {
            steered: SiteModel::Qubit {
                efficiency: eta_steered,
            },
            steerer: SiteModel::Qubit {
                efficiency: self.eta_steerers,
            },
            strategy: self.strategy.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonogamyTerm {
    /// e.g. "S_{0|1}".
    pub label: String,
    pub steered: usize,
    pub steerer: usize,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonogamyReport {
    pub terms: Vec<MonogamyTerm>,
    pub sum: f64,
    pub bound: f64,
    /// sum − bound, unrounded.
    pub slack: f64,
}

impl MonogamyReport {
    fn new(terms: Vec<MonogamyTerm>, bound: f64) -> Self {
        let sum = terms.iter().map(|t| t.value).sum();
        Self {
            terms,
            sum,
            bound,
            slack: sum - bound,
        }
    }

    pub fn holds(&self) -> bool {
        self.slack >= -SLACK_TOL
    }
}

fn check_parties(state: &QuantumState, parties: &[usize]) -> Result<()> {
    let n = state.num_subsystems();
    for (i, &p) in parties.iter().enumerate() {
        if p >= n {
            return argument(format!("party index {p} out of range (have {n})"));
        }
        if state.dims()[p] != 2 {
            return argument("monogamy parties must be qubits");
        }
        if parties[..i].contains(&p) {
            return argument("monogamy parties must be distinct");
        }
    }
    Ok(())
}

/// S^{(3)} of steered party `parties[0]` by each of `parties[1..4]`, bound 3.
pub fn monogamy_3(
    state: &QuantumState,
    parties: [usize; 4],
    directions: &[SpinDirection; 3],
    config: &MonogamyConfig,
) -> Result<MonogamyReport> {
    check_parties(state, &parties)?;
    check_orthogonal(directions)?;
    let setup = config.setup(config.eta_steered);
    let a = parties[0];
    let terms = parties[1..]
        .iter()
        .map(|&x| {
            let pair = state.reduce(&[a, x])?;
            let r = steering_param_3_with(&pair, directions, &setup)?;
            Ok(MonogamyTerm {
                label: format!("S_{{{a}|{x}}}"),
                steered: a,
                steerer: x,
                value: r
                    .s3
                    .ok_or_else(|| Error::UndefinedWitness("S3 missing".into()))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MonogamyReport::new(terms, 3.0))
}

/// S^{(2)} of steered party `parties[0]` by `parties[1]` and `parties[2]`,
/// bound 2. The steered party's detectors are trusted.
pub fn monogamy_2(
    state: &QuantumState,
    parties: [usize; 3],
    directions: &[SpinDirection; 2],
    config: &MonogamyConfig,
) -> Result<MonogamyReport> {
    check_parties(state, &parties)?;
    check_orthogonal(directions)?;
    let setup = config.setup(1.0);
    let c = parties[0];
    let terms = parties[1..]
        .iter()
        .map(|&x| {
            let pair = state.reduce(&[c, x])?;
            let r = steering_param_2_with(&pair, directions, &setup)?;
            Ok(MonogamyTerm {
                label: format!("S_{{{c}|{x}}}"),
                steered: c,
                steerer: x,
                value: r.s2.expect("two blocks always give S2"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MonogamyReport::new(terms, 2.0))
}

/// The three cyclic cross sums used in the proof of the three-setting
/// relation, e.g. (Δ_inf S_{A|B}^X)² + (Δ_inf S_{A|C}^Y)² + (Δ_inf S_{A|D}^Z)²,
/// together with J. Each sum is bounded below by J.
pub fn cross_variance_sums(
    state: &QuantumState,
    parties: [usize; 4],
    directions: &[SpinDirection; 3],
    config: &MonogamyConfig,
) -> Result<([f64; 3], f64)> {
    check_parties(state, &parties)?;
    let setup = config.setup(config.eta_steered);
    let a = parties[0];
    // iv[s][θ]: inference variance of setting θ inferred by steerer s.
    let mut iv = [[0.0; 3]; 3];
    let mut j = 0.0;
    for (s, &x) in parties[1..].iter().enumerate() {
        let pair = state.reduce(&[a, x])?;
        let stats = crate::steering::conditional_stats(&pair, directions, &setup)?;
        for (t, block) in stats.blocks.iter().enumerate() {
            iv[s][t] = block.inference_variance();
        }
        j = crate::steering::uncertainty_bound_j(&pair, &setup.steered.observable(directions[0])?)?;
    }
    let mut sums = [0.0; 3];
    for (shift, sum) in sums.iter_mut().enumerate() {
        *sum = (0..3).map(|t| iv[(t + shift) % 3][t]).sum();
    }
    Ok((sums, j))
}

/// Maximum number of parties besides the steering party that can also
/// violate an m-setting witness: m − 2.
pub fn clone_count_bound(m: usize) -> Result<usize> {
    if m < 2 {
        return argument(format!("need at least two settings, got {m}"));
    }
    Ok(m - 2)
}

/// Which random states a sweep draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RandomStateKind {
    Pure,
    /// Partial trace of a Haar state with an ancilla of this dimension.
    Mixed {
        rank: usize,
    },
}

/// Which relation a sweep checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    ThreeSetting,
    TwoSetting,
}

impl Relation {
    pub fn parties(&self) -> usize {
        match self {
            Relation::ThreeSetting => 4,
            Relation::TwoSetting => 3,
        }
    }
}

/// One row of a random sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub seed: u64,
    pub sample: u64,
    pub report: MonogamyReport,
}

/// Draws `n` random states (one ChaCha20 stream per sample index, so the
/// result does not depend on the number of worker threads) and evaluates the
/// selected relation on each.
pub fn random_sweep(
    relation: Relation,
    kind: RandomStateKind,
    n: usize,
    seed: u64,
    config: &MonogamyConfig,
) -> Result<Vec<SweepRow>> {
    let k = relation.parties();
    (0..n as u64)
        .into_par_iter()
        .map(|sample| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(sample);
            let dims = vec![2; k];
            let state = match kind {
                RandomStateKind::Pure => haar_pure_state(&mut rng, dims),
                RandomStateKind::Mixed { rank } => random_mixed_state(&mut rng, dims, rank),
            };
            let report = match relation {
                Relation::ThreeSetting => {
                    monogamy_3(&state, [0, 1, 2, 3], &SpinDirection::AXES, config)?
                }
                Relation::TwoSetting => monogamy_2(
                    &state,
                    [0, 1, 2],
                    &[SpinDirection::X, SpinDirection::Y],
                    config,
                )?,
            };
            Ok(SweepRow {
                seed,
                sample,
                report,
            })
        })
        .collect()
}

/// Minimum slack over a sweep.
pub fn min_slack(rows: &[SweepRow]) -> f64 {
    rows.iter()
        .map(|r| r.report.slack)
        .fold(f64::INFINITY, f64::min)
}

/// Writes sweep rows as CSV: `seed,sample,slack,sum,<term labels…>`.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if let Some(first) = rows.first() {
        let mut header = vec![
            "seed".to_string(),
            "sample".into(),
            "slack".into(),
            "sum".into(),
        ];
        header.extend(first.report.terms.iter().map(|t| t.label.clone()));
        w.write_record(&header)?;
    }
    for row in rows {
        let mut rec = vec![
            row.seed.to_string(),
            row.sample.to_string(),
            format!("{:e}", row.report.slack),
            format!("{}", row.report.sum),
        ];
        rec.extend(row.report.terms.iter().map(|t| format!("{}", t.value)));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
