//! Inference variances and EPR-steering witnesses.
//!
//! All witnesses are evaluated from [`ConditionalStats`]: for each steered
//! setting θ, the probabilities P(b) of the steering party's outcomes and the
//! conditional mean and variance of the steered outcome given b. The
//! no-detection outcome 0 is an ordinary outcome on both sides; nothing is
//! discarded. Exact statistics come from a density matrix, empirical ones
//! from Monte Carlo records, and the same [`report_from_stats`] turns either
//! into a [`SteeringReport`].
//!
//! Witnesses computed:
//!
//! * `S3 = Σ_θ (Δ_inf S^θ)² / J` over three orthogonal settings, with
//!   `J = ⟨n²⟩ − ⟨n⟩² + 2⟨n⟩` on the steered site. Steering iff `S3 < 1`.
//! * `S2 = (Δ_inf σ^X)² + (Δ_inf σ^Y)²` for trusted (lossless) steered
//!   detectors. Steering iff `S2 < 1`.
//! * `S = Σ_θ T_θ` with `T_θ = Σ_b P(b)⟨S^θ|b⟩²`. Steering iff `S` exceeds
//!   `Σ_θ ⟨(S^θ)²⟩ − J`, which is `η²` for a single photon detected with
//!   efficiency η.

use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};
use crate::linalg::{ComplexMatrix, QuantumState};
use crate::observables::{
    lossy_spin_measurement, schwinger_measurement, LossyObservable, SpinDirection,
};

/// Tolerance on Σ_b P(b) = 1.
pub const PROB_TOL: f64 = 1e-10;

/// Pairwise orthogonality tolerance for witness settings.
pub const ORTHO_TOL: f64 = 1e-10;

/// Statistics for one steered setting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SettingBlock {
    /// Steered-side setting θ.
    pub setting: String,
    /// Setting used by the steering party to infer θ.
    pub steerer_setting: String,
    /// P(b) for b = −1, 0, +1.
    pub p_b: [f64; 3],
    /// ⟨S^θ | b⟩.
    pub mean: [f64; 3],
    /// Δ²(S^θ | b).
    pub variance: [f64; 3],
}

impl SettingBlock {
    /// Builds a block from a joint table `p[a][b]` over outcomes (−1, 0, +1).
    /// Branches with zero weight get mean and variance 0.
    pub fn from_joint(setting: String, steerer_setting: String, joint: &[[f64; 3]; 3]) -> Self {
        let mut p_b = [0.0; 3];
        let mut mean = [0.0; 3];
        let mut variance = [0.0; 3];
        let values = [-1.0, 0.0, 1.0];
        let total: f64 = joint.iter().flatten().sum();
        for b in 0..3 {
            let pb: f64 = (0..3).map(|a| joint[a][b]).sum();
            p_b[b] = if total > 0.0 { pb / total } else { 0.0 };
            if pb <= 0.0 {
                continue;
            }
            let m1: f64 = (0..3).map(|a| values[a] * joint[a][b]).sum::<f64>() / pb;
            let m2: f64 = (0..3)
                .map(|a| values[a] * values[a] * joint[a][b])
                .sum::<f64>()
                / pb;
            mean[b] = m1;
            variance[b] = (m2 - m1 * m1).max(0.0);
        }
        Self {
            setting,
            steerer_setting,
            p_b,
            mean,
            variance,
        }
    }

    /// Σ_b P(b) Δ²(S^θ|b).
    pub fn inference_variance(&self) -> f64 {
        (0..3).map(|b| self.p_b[b] * self.variance[b]).sum()
    }

    /// T_θ = Σ_b P(b) ⟨S^θ|b⟩².
    pub fn t_value(&self) -> f64 {
        (0..3)
            .map(|b| self.p_b[b] * self.mean[b] * self.mean[b])
            .sum()
    }

    /// ⟨(S^θ)²⟩, unconditional.
    pub fn second_moment(&self) -> f64 {
        self.inference_variance() + self.t_value()
    }
}

/// Conditional statistics for a list of steered settings.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConditionalStats {
    pub blocks: Vec<SettingBlock>,
}

impl ConditionalStats {
    pub fn validate(&self) -> Result<()> {
        for block in &self.blocks {
            let total: f64 = block.p_b.iter().sum();
            if (total - 1.0).abs() > PROB_TOL {
                return Err(Error::Numeric(format!(
                    "setting {}: outcome probabilities sum to {total}",
                    block.setting
                )));
            }
            if block.variance.iter().any(|v| *v < -1e-12) {
                return Err(Error::Numeric(format!(
                    "setting {}: negative conditional variance",
                    block.setting
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InferenceVariance {
    pub setting: String,
    pub value: f64,
}

/// Named verdicts; `None` when the witness was not evaluated.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub steering_3: Option<bool>,
    pub steering_2: Option<bool>,
    pub wittmann: Option<bool>,
}

/// Witness values, thresholds and verdicts for one configuration.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SteeringReport {
    pub inference_variances: Vec<InferenceVariance>,
    #[serde(rename = "J")]
    pub j: Option<f64>,
    #[serde(rename = "S3")]
    pub s3: Option<f64>,
    #[serde(rename = "S2")]
    pub s2: Option<f64>,
    #[serde(rename = "wittmann_S")]
    pub wittmann_s: Option<f64>,
    pub wittmann_bound: Option<f64>,
    pub verdicts: Verdicts,
}

/// Evaluates every witness the statistics support. Two blocks give `S2`;
/// three give `S3` and the Wittmann form as well. The `S2` verdict is only
/// issued when the steered outcomes of the first two settings are ±1 with
/// certainty (trusted detectors).
pub fn report_from_stats(stats: &ConditionalStats, j: f64) -> Result<SteeringReport> {
    if stats.blocks.len() < 2 {
        return argument(format!(
            "need at least two setting blocks, got {}",
            stats.blocks.len()
        ));
    }
    stats.validate()?;
    let blocks = &stats.blocks;
    let inference_variances: Vec<InferenceVariance> = blocks
        .iter()
        .map(|b| InferenceVariance {
            setting: b.setting.clone(),
            value: b.inference_variance(),
        })
        .collect();

    let mut report = SteeringReport {
        inference_variances,
        j: Some(j),
        ..Default::default()
    };

    let s2 = blocks[0].inference_variance() + blocks[1].inference_variance();
    report.s2 = Some(s2);
    let trusted = blocks[..2]
        .iter()
        .all(|b| (b.second_moment() - 1.0).abs() < 1e-9);
    report.verdicts.steering_2 = trusted.then_some(s2 < 1.0);

    if blocks.len() >= 3 {
        let three = &blocks[..3];
        let sum_iv: f64 = three.iter().map(SettingBlock::inference_variance).sum();
        if j > 0.0 {
            let s3 = sum_iv / j;
            report.s3 = Some(s3);
            report.verdicts.steering_3 = Some(s3 < 1.0);
        }
        let s: f64 = three.iter().map(SettingBlock::t_value).sum();
        let bound = three.iter().map(SettingBlock::second_moment).sum::<f64>() - j;
        report.wittmann_s = Some(s);
        report.wittmann_bound = Some(bound);
        report.verdicts.wittmann = Some(s > bound);
    }
    Ok(report)
}

/// Measurement model for one site.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SiteModel {
    /// Bare qubit with the lossy POVM of the given detection efficiency.
    Qubit { efficiency: f64 },
    /// One-photon-truncated mode pair (site dimension 4) measured with the
    /// projective Schwinger spin. Loss, if any, is already in the state.
    DualRail,
}

impl SiteModel {
    pub fn observable(&self, direction: SpinDirection) -> Result<LossyObservable> {
        match self {
            SiteModel::Qubit { efficiency } => lossy_spin_measurement(direction, *efficiency),
            SiteModel::DualRail => Ok(schwinger_measurement(direction)),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SiteModel::Qubit { .. } => 2,
            SiteModel::DualRail => 4,
        }
    }
}

/// How the steering party picks the setting used to infer each θ.
#[derive(Clone, Debug, PartialEq, Default)]
pub enum SteererStrategy {
    /// Same direction as the steered setting.
    #[default]
    Aligned,
    /// Whichever direction of the grid minimizes the inference variance.
    Grid(Vec<SpinDirection>),
}

impl SteererStrategy {
    pub fn grid(points: usize) -> Self {
        SteererStrategy::Grid(SpinDirection::sphere_grid(points))
    }
}

/// Site models plus steerer strategy.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessSetup {
    pub steered: SiteModel,
    pub steerer: SiteModel,
    pub strategy: SteererStrategy,
}

impl WitnessSetup {
    pub fn qubits(eta_steered: f64, eta_steerer: f64) -> Self {
        Self {
            steered: SiteModel::Qubit {
                efficiency: eta_steered,
            },
            steerer: SiteModel::Qubit {
                efficiency: eta_steerer,
            },
            strategy: SteererStrategy::Aligned,
        }
    }

    pub fn with_strategy(mut self, strategy: SteererStrategy) -> Self {
        self.strategy = strategy;
        self
    }
}

fn check_bipartite(state: &QuantumState, steered_dim: usize, steerer_dim: usize) -> Result<()> {
    if state.dims() != [steered_dim, steerer_dim] {
        return argument(format!(
            "expected a bipartite state with dims [{steered_dim}, {steerer_dim}], got {:?}",
            state.dims()
        ));
    }
    Ok(())
}

/// Unnormalized steered-site states Tr_B[(I ⊗ F_b) ρ] for b = −1, 0, +1.
fn conditional_operators(state: &QuantumState, steerer: &LossyObservable) -> [ComplexMatrix; 3] {
    let da = state.dims()[0];
    let db = state.dims()[1];
    let rho = state.rho().inner();
    let mut out = [
        ComplexMatrix::zeros(da, da),
        ComplexMatrix::zeros(da, da),
        ComplexMatrix::zeros(da, da),
    ];
    for (slot, (_, f)) in out.iter_mut().zip(steerer.effects()) {
        let f = f.inner();
        for i in 0..da {
            for j in 0..da {
                let mut acc = crate::linalg::cr(0.0);
                for k in 0..db {
                    for l in 0..db {
                        acc += rho[(i * db + k, j * db + l)] * f[(l, k)];
                    }
                }
                slot.set(i, j, acc);
            }
        }
    }
    out
}

/// Joint table `p[a][b]` of steered outcome a and steering outcome b on a
/// bipartite state (steered site first).
pub fn joint_distribution(
    state: &QuantumState,
    steered: &LossyObservable,
    steerer: &LossyObservable,
) -> Result<[[f64; 3]; 3]> {
    check_bipartite(state, steered.dim(), steerer.dim())?;
    let cond = conditional_operators(state, steerer);
    let mut p = [[0.0; 3]; 3];
    for (a, (_, e)) in steered.effects().enumerate() {
        for b in 0..3 {
            let v = e.trace_product(&cond[b]);
            if v.im.abs() > 1e-10 {
                return Err(Error::Numeric(format!(
                    "joint probability has imaginary part {:e}",
                    v.im
                )));
            }
            p[a][b] = v.re.max(0.0);
        }
    }
    Ok(p)
}

/// Σ_b P(b)·Var(a | b) with the no-detection outcome kept on both sides.
/// Zero-probability branches carry zero weight.
pub fn inference_variance(
    state: &QuantumState,
    steered: &LossyObservable,
    steerer: &LossyObservable,
) -> Result<f64> {
    let joint = joint_distribution(state, steered, steerer)?;
    Ok(SettingBlock::from_joint(String::new(), String::new(), &joint).inference_variance())
}

/// J = ⟨n²⟩ − ⟨n⟩² + 2⟨n⟩ from the steered site's measured photon-number
/// statistics. The state may be bipartite (steered site first) or the
/// steered site alone.
pub fn uncertainty_bound_j(state: &QuantumState, steered: &LossyObservable) -> Result<f64> {
    let site = if state.num_subsystems() == 1 {
        state.clone()
    } else {
        state.partial_trace(&[0])?
    };
    if site.dim() != steered.dim() {
        return Err(Error::DimensionMismatch {
            expected: steered.dim(),
            found: site.dim(),
        });
    }
    let (m1, m2) = steered.number_moments(&site)?;
    Ok(m2 - m1 * m1 + 2.0 * m1)
}

/// J for a single photon detected with efficiency η: η(3 − η).
pub fn single_photon_j(efficiency: f64) -> f64 {
    efficiency * (3.0 - efficiency)
}

fn best_block(
    state: &QuantumState,
    theta: SpinDirection,
    setup: &WitnessSetup,
) -> Result<SettingBlock> {
    let steered = setup.steered.observable(theta)?;
    let block_for = |dir: SpinDirection| -> Result<SettingBlock> {
        let steerer = setup.steerer.observable(dir)?;
        let joint = joint_distribution(state, &steered, &steerer)?;
        Ok(SettingBlock::from_joint(theta.label(), dir.label(), &joint))
    };
    match &setup.strategy {
        SteererStrategy::Aligned => block_for(theta),
        SteererStrategy::Grid(grid) => {
            let mut best: Option<SettingBlock> = None;
            for dir in std::iter::once(&theta).chain(grid.iter()) {
                let candidate = block_for(*dir)?;
                let better = best
                    .as_ref()
                    .is_none_or(|b| candidate.inference_variance() < b.inference_variance());
                if better {
                    best = Some(candidate);
                }
            }
            Ok(best.expect("at least the aligned direction"))
        }
    }
}

/// Exact conditional statistics of a bipartite state (steered site first).
pub fn conditional_stats(
    state: &QuantumState,
    directions: &[SpinDirection],
    setup: &WitnessSetup,
) -> Result<ConditionalStats> {
    check_bipartite(state, setup.steered.dim(), setup.steerer.dim())?;
    let blocks = directions
        .iter()
        .map(|d| best_block(state, *d, setup))
        .collect::<Result<Vec<_>>>()?;
    let stats = ConditionalStats { blocks };
    stats.validate()?;
    Ok(stats)
}

pub(crate) fn check_orthogonal(directions: &[SpinDirection]) -> Result<()> {
    for i in 0..directions.len() {
        for j in i + 1..directions.len() {
            if directions[i].dot(&directions[j]).abs() > ORTHO_TOL {
                return argument(format!(
                    "settings {} and {} are not orthogonal",
                    directions[i], directions[j]
                ));
            }
        }
    }
    Ok(())
}

/// Three-setting report under an arbitrary setup. Errors when J = 0.
pub fn steering_param_3_with(
    state: &QuantumState,
    directions: &[SpinDirection; 3],
    setup: &WitnessSetup,
) -> Result<SteeringReport> {
    check_orthogonal(directions)?;
    let stats = conditional_stats(state, directions, setup)?;
    let j = uncertainty_bound_j(state, &setup.steered.observable(directions[0])?)?;
    if j <= 0.0 {
        return Err(Error::UndefinedWitness(
            "J = 0: the steered site never registers a photon".into(),
        ));
    }
    report_from_stats(&stats, j)
}

/// S3 for a two-qubit state with lossy detection at both sites.
pub fn steering_param_3(
    state: &QuantumState,
    directions: &[SpinDirection; 3],
    eta_a: f64,
    eta_b: f64,
) -> Result<SteeringReport> {
    steering_param_3_with(state, directions, &WitnessSetup::qubits(eta_a, eta_b))
}

/// Two-setting report under an arbitrary setup.
pub fn steering_param_2_with(
    state: &QuantumState,
    directions: &[SpinDirection; 2],
    setup: &WitnessSetup,
) -> Result<SteeringReport> {
    check_orthogonal(directions)?;
    let stats = conditional_stats(state, directions, setup)?;
    let j = uncertainty_bound_j(state, &setup.steered.observable(directions[0])?)?;
    report_from_stats(&stats, j)
}

/// S2 with trusted (lossless, projective) steered detectors and a lossy
/// steering party.
pub fn steering_param_2(
    state: &QuantumState,
    directions: &[SpinDirection; 2],
    eta_b: f64,
) -> Result<SteeringReport> {
    steering_param_2_with(state, directions, &WitnessSetup::qubits(1.0, eta_b))
}

/// Wittmann-form witness over three orthogonal settings. Unlike
/// [`steering_param_3`] this does not fail when J = 0.
pub fn wittmann_witness(
    state: &QuantumState,
    directions: &[SpinDirection; 3],
    eta_a: f64,
    eta_b: f64,
) -> Result<SteeringReport> {
    check_orthogonal(directions)?;
    let setup = WitnessSetup::qubits(eta_a, eta_b);
    let stats = conditional_stats(state, directions, &setup)?;
    let j = uncertainty_bound_j(state, &setup.steered.observable(directions[0])?)?;
    report_from_stats(&stats, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{singlet, werner_state};

    const XYZ: [SpinDirection; 3] = SpinDirection::AXES;

    #[test]
    fn werner_inference_variance_closed_form() {
        for &p in &[0.0, 0.4, 1.0] {
            let w = werner_state(p).unwrap();
            for &ea in &[0.2, 1.0] {
                for &eb in &[0.0, 0.5, 1.0] {
                    for d in XYZ {
                        let v = inference_variance(
                            &w,
                            &lossy_spin_measurement(d, ea).unwrap(),
                            &lossy_spin_measurement(d, eb).unwrap(),
                        )
                        .unwrap();
                        assert!((v - ea * (1.0 - ea * eb * p * p)).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn perfect_singlet_has_zero_inference_variance() {
        let z = lossy_spin_measurement(SpinDirection::Z, 1.0).unwrap();
        assert!(inference_variance(&singlet(), &z, &z).unwrap().abs() < 1e-12);
    }

    #[test]
    fn uncorrelated_state_gives_eta() {
        let w = werner_state(0.0).unwrap();
        for d in XYZ {
            let v = inference_variance(
                &w,
                &lossy_spin_measurement(d, 0.35).unwrap(),
                &lossy_spin_measurement(d, 0.8).unwrap(),
            )
            .unwrap();
            assert!((v - 0.35).abs() < 1e-12);
        }
    }

    #[test]
    fn j_examples() {
        let w = werner_state(0.5).unwrap();
        for (eta, expected) in [(1.0, 2.0), (0.0, 0.0), (0.5, 1.25)] {
            let j =
                uncertainty_bound_j(&w, &lossy_spin_measurement(SpinDirection::X, eta).unwrap())
                    .unwrap();
            assert!((j - expected).abs() < 1e-12);
            assert!((single_photon_j(eta) - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn s3_examples() {
        let r = steering_param_3(&singlet(), &XYZ, 1.0, 1.0).unwrap();
        assert!(r.s3.unwrap().abs() < 1e-12);
        assert_eq!(r.verdicts.steering_3, Some(true));

        let r = steering_param_3(&werner_state(1.0).unwrap(), &XYZ, 1.0, 1.0 / 3.0).unwrap();
        assert!((r.s3.unwrap() - 1.0).abs() < 1e-12);

        let err = steering_param_3(&singlet(), &XYZ, 0.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::UndefinedWitness(_)));
    }

    #[test]
    fn s3_requires_orthogonal_settings() {
        let d = SpinDirection::normalized(1.0, 1.0, 0.0).unwrap();
        let err = steering_param_3(
            &singlet(),
            &[SpinDirection::X, d, SpinDirection::Z],
            1.0,
            1.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
    }

    #[test]
    fn s2_examples() {
        let xy = [SpinDirection::X, SpinDirection::Y];
        let r = steering_param_2(&singlet(), &xy, 1.0).unwrap();
        assert!(r.s2.unwrap().abs() < 1e-12);
        for eta_b in [0.2, 0.5, 0.7] {
            let r = steering_param_2(&singlet(), &xy, eta_b).unwrap();
            assert!((r.s2.unwrap() - 2.0 * (1.0 - eta_b)).abs() < 1e-12);
        }
        let r = steering_param_2(&werner_state(0.6).unwrap(), &xy, 0.9).unwrap();
        assert!((r.s2.unwrap() - 2.0 * (1.0 - 0.9 * 0.36)).abs() < 1e-12);
        assert_eq!(r.verdicts.steering_2, Some(false));
    }

    #[test]
    fn s2_verdict_withheld_without_trusted_detectors() {
        let r = steering_param_3(&singlet(), &XYZ, 0.5, 1.0).unwrap();
        assert!(r.s2.is_some());
        assert_eq!(r.verdicts.steering_2, None);
    }

    #[test]
    fn wittmann_examples() {
        let r = wittmann_witness(&singlet(), &XYZ, 1.0, 1.0).unwrap();
        assert!((r.wittmann_s.unwrap() - 3.0).abs() < 1e-12);
        assert!((r.wittmann_bound.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(r.verdicts.wittmann, Some(true));

        let mixed = QuantumState::maximally_mixed(vec![2, 2]).unwrap();
        let r = wittmann_witness(&mixed, &XYZ, 1.0, 1.0).unwrap();
        assert!(r.wittmann_s.unwrap().abs() < 1e-12);
        assert_eq!(r.verdicts.wittmann, Some(false));

        for (p, ea, eb) in [(0.9, 0.7, 0.5), (1.0, 0.3, 0.2), (0.7, 1.0, 0.9)] {
            let r = wittmann_witness(&werner_state(p).unwrap(), &XYZ, ea, eb).unwrap();
            assert!((r.wittmann_s.unwrap() - 3.0 * ea * ea * eb * p * p).abs() < 1e-12);
            assert!((r.wittmann_bound.unwrap() - ea * ea).abs() < 1e-12);
            assert_eq!(r.verdicts.wittmann.unwrap(), eb > 1.0 / (3.0 * p * p));
        }
    }

    #[test]
    fn report_from_stats_examples() {
        let setup = WitnessSetup::qubits(1.0, 1.0);
        let stats = conditional_stats(&werner_state(1.0).unwrap(), &XYZ, &setup).unwrap();
        let r = report_from_stats(&stats, 2.0).unwrap();
        assert!(r.s3.unwrap().abs() < 1e-12);

        // Blind steering party: conditioning on a constant outcome.
        let setup = WitnessSetup::qubits(0.8, 0.0);
        let w = werner_state(0.9).unwrap();
        let stats = conditional_stats(&w, &XYZ, &setup).unwrap();
        for (block, d) in stats.blocks.iter().zip(XYZ) {
            let a = lossy_spin_measurement(d, 0.8).unwrap();
            let op = &a.effect(1).unwrap().kron(&ComplexMatrix::identity(2))
                - &a.effect(-1).unwrap().kron(&ComplexMatrix::identity(2));
            let mean = w.expectation(&op).unwrap();
            let var = 0.8 - mean * mean;
            assert!((block.inference_variance() - var).abs() < 1e-12);
        }

        let one = ConditionalStats {
            blocks: stats.blocks[..1].to_vec(),
        };
        assert!(matches!(
            report_from_stats(&one, 1.0),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn grid_strategy_never_worse_than_aligned() {
        let w = werner_state(0.8).unwrap();
        let aligned = steering_param_3(&w, &XYZ, 0.9, 0.7).unwrap();
        let setup = WitnessSetup::qubits(0.9, 0.7).with_strategy(SteererStrategy::grid(40));
        let grid = steering_param_3_with(&w, &XYZ, &setup).unwrap();
        assert!(grid.s3.unwrap() <= aligned.s3.unwrap() + 1e-12);
    }

    #[test]
    fn report_serializes_with_stable_names() {
        let r = steering_param_3(&singlet(), &XYZ, 1.0, 1.0).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in [
            "inference_variances",
            "J",
            "S3",
            "S2",
            "wittmann_S",
            "wittmann_bound",
            "verdicts",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}
