//! Scenario configuration (TOML) and parameter sweeps.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bounds::{bisect_threshold, SettingEnsemble, Threshold, SCAN_TOL};
use crate::error::{Error, Result};
use crate::linalg::QuantumState;
use crate::mc::Schedule;
use crate::observables::SpinDirection;
use crate::states::{bell_state, werner_state, BellKind};
use crate::steering::{
    steering_param_2, steering_param_3_with, wittmann_witness, SteererStrategy, SteeringReport,
    WitnessSetup,
};

fn field<T>(name: &str, msg: impl std::fmt::Display) -> Result<T> {
    Err(Error::Config(format!("{name}: {msg}")))
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) || v.is_nan() {
        return field(name, format!("must lie in [0, 1], got {v}"));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateName {
    Werner,
    Singlet,
    Bell,
    MaximallyMixed,
}

/// A named two-qubit state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub name: StateName,
    /// Singlet weight, Werner only.
    #[serde(default)]
    pub p_s: Option<f64>,
    /// Bell state ("psi-", "psi+", "phi-", "phi+"), `bell` only.
    #[serde(default)]
    pub bell: Option<String>,
}

impl Default for StateSpec {
    fn default() -> Self {
        Self::werner(1.0)
    }
}

impl StateSpec {
    pub fn werner(p_s: f64) -> Self {
        Self {
            name: StateName::Werner,
            p_s: Some(p_s),
            bell: None,
        }
    }

    pub fn singlet() -> Self {
        Self {
            name: StateName::Singlet,
            p_s: None,
            bell: None,
        }
    }

    pub fn validate(&self, prefix: &str) -> Result<()> {
        match self.name {
            StateName::Werner => match self.p_s {
                Some(p) => check_unit(&format!("{prefix}.p_s"), p),
                None => field(&format!("{prefix}.p_s"), "required for a werner state"),
            },
            StateName::Bell => match &self.bell {
                Some(b) => b
                    .parse::<BellKind>()
                    .map(|_| ())
                    .or_else(|e| field(&format!("{prefix}.bell"), e)),
                None => field(&format!("{prefix}.bell"), "required for a bell state"),
            },
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<QuantumState> {
        match self.name {
            StateName::Werner => werner_state(self.p_s.unwrap_or(1.0)),
            StateName::Singlet => Ok(bell_state(BellKind::PsiMinus)),
            StateName::Bell => Ok(bell_state(self.bell_kind()?)),
            StateName::MaximallyMixed => QuantumState::maximally_mixed(vec![2, 2]),
        }
    }

    fn bell_kind(&self) -> Result<BellKind> {
        self.bell.as_deref().unwrap_or("psi-").parse()
    }

    pub fn describe(&self) -> String {
        match self.name {
            StateName::Werner => format!("werner(p_s={})", self.p_s.unwrap_or(1.0)),
            StateName::Singlet => "singlet".into(),
            StateName::Bell => format!("bell({})", self.bell.as_deref().unwrap_or("psi-")),
            StateName::MaximallyMixed => "maximally-mixed".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Efficiencies {
    pub eta_a: f64,
    pub eta_b: f64,
}

impl Default for Efficiencies {
    fn default() -> Self {
        Self {
            eta_a: 1.0,
            eta_b: 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    ThreeSetting,
    TwoSetting,
    Wittmann,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WitnessConfig {
    pub witnesses: Vec<WitnessKind>,
    /// Steered settings, e.g. ["X", "Y", "Z"] or ["0.6,0.8,0"].
    pub directions: Vec<String>,
    /// Points of the steerer search grid; absent means aligned settings.
    pub steerer_grid: Option<usize>,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self {
            witnesses: vec![
                WitnessKind::ThreeSetting,
                WitnessKind::TwoSetting,
                WitnessKind::Wittmann,
            ],
            directions: vec!["X".into(), "Y".into(), "Z".into()],
            steerer_grid: None,
        }
    }
}

impl WitnessConfig {
    pub fn parsed_directions(&self) -> Result<Vec<SpinDirection>> {
        self.directions
            .iter()
            .enumerate()
            .map(|(i, d)| {
                d.parse::<SpinDirection>()
                    .or_else(|e| field(&format!("witness.directions[{i}]"), e))
            })
            .collect()
    }

    pub fn strategy(&self) -> SteererStrategy {
        match self.steerer_grid {
            Some(n) => SteererStrategy::grid(n),
            None => SteererStrategy::Aligned,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    EtaA,
    EtaB,
    #[serde(rename = "p_s")]
    PS,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::EtaA => "eta_a",
            SweepParameter::EtaB => "eta_b",
            SweepParameter::PS => "p_s",
        }
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eta_a" => Ok(SweepParameter::EtaA),
            "eta_b" => Ok(SweepParameter::EtaB),
            "p_s" => Ok(SweepParameter::PS),
            other => field("sweep.parameter", format!("unknown parameter '{other}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub parameter: SweepParameter,
    #[serde(default)]
    pub start: Option<f64>,
    #[serde(default)]
    pub stop: Option<f64>,
    #[serde(default)]
    pub step: Option<f64>,
    /// Explicit grid; overrides start/stop/step.
    #[serde(default)]
    pub values: Option<Vec<f64>>,
}

impl SweepConfig {
    pub fn range(parameter: SweepParameter, start: f64, stop: f64, step: f64) -> Self {
        Self {
            parameter,
            start: Some(start),
            stop: Some(stop),
            step: Some(step),
            values: None,
        }
    }

    pub fn grid(&self) -> Result<Vec<f64>> {
        let grid = match &self.values {
            Some(v) => v.clone(),
            None => {
                let (Some(start), Some(stop), Some(step)) = (self.start, self.stop, self.step)
                else {
                    return field("sweep", "give either values or start, stop and step");
                };
                if step <= 0.0 || step.is_nan() {
                    return field("sweep.step", format!("must be positive, got {step}"));
                }
                if stop < start {
                    return field(
                        "sweep.stop",
                        format!("must be ≥ start ({start}), got {stop}"),
                    );
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                (0..count).map(|i| start + i as f64 * step).collect()
            }
        };
        if grid.is_empty() {
            return field("sweep", "grid is empty");
        }
        for (i, v) in grid.iter().enumerate() {
            check_unit(&format!("sweep.values[{i}]"), *v)?;
        }
        Ok(grid)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TeleportConfig {
    pub source_vc: StateSpec,
    pub source_ab: StateSpec,
    pub eta_c: f64,
    pub eta_b: f64,
    /// Vacuum amplitude of the parametric source; set to run the Fock-space
    /// swap instead of the ideal qubit swap.
    pub c0: Option<f64>,
    /// Apply Pauli corrections to every Bell outcome.
    pub correct: bool,
}

impl Default for TeleportConfig {
    fn default() -> Self {
        Self {
            source_vc: StateSpec::singlet(),
            source_ab: StateSpec::singlet(),
            eta_c: 1.0,
            eta_b: 1.0,
            c0: None,
            correct: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationName {
    Three,
    Two,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MonogamySection {
    pub relation: RelationName,
    pub samples: usize,
    /// Rank of random mixed states; absent means pure states.
    pub rank: Option<usize>,
    pub eta_steered: f64,
    pub eta_steerers: f64,
    pub steerer_grid: Option<usize>,
}

impl Default for MonogamySection {
    fn default() -> Self {
        Self {
            relation: RelationName::Three,
            samples: 10_000,
            rank: None,
            eta_steered: 1.0,
            eta_steerers: 1.0,
            steerer_grid: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundsSection {
    pub set: String,
}

impl Default for BoundsSection {
    fn default() -> Self {
        Self {
            set: "orthogonal3".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McSection {
    pub trials: u64,
    pub schedule: Schedule,
    pub bootstrap: usize,
    pub min_trials: usize,
}

impl Default for McSection {
    fn default() -> Self {
        Self {
            trials: 100_000,
            schedule: Schedule::Paired,
            bootstrap: crate::mc::DEFAULT_BOOTSTRAP,
            min_trials: crate::mc::DEFAULT_MIN_TRIALS,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub seed: u64,
    pub state: StateSpec,
    pub efficiency: Efficiencies,
    pub witness: WitnessConfig,
    pub sweep: Option<SweepConfig>,
    pub teleport: TeleportConfig,
    pub monogamy: MonogamySection,
    pub bounds: BoundsSection,
    pub mc: McSection,
    pub output: OutputSection,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.state.validate("state")?;
        check_unit("efficiency.eta_a", self.efficiency.eta_a)?;
        check_unit("efficiency.eta_b", self.efficiency.eta_b)?;
        if self.witness.witnesses.is_empty() {
            return field("witness.witnesses", "select at least one witness");
        }
        let dirs = self.witness.parsed_directions()?;
        let needed = if self
            .witness
            .witnesses
            .iter()
            .any(|w| *w != WitnessKind::TwoSetting)
        {
            3
        } else {
            2
        };
        if dirs.len() < needed {
            return field(
                "witness.directions",
                format!("need {needed} directions, got {}", dirs.len()),
            );
        }
        for i in 0..dirs.len() {
            for j in i + 1..dirs.len() {
                if dirs[i].dot(&dirs[j]).abs() > crate::steering::ORTHO_TOL {
                    return field(
                        "witness.directions",
                        format!("{} and {} are not orthogonal", dirs[i], dirs[j]),
                    );
                }
            }
        }
        if let Some(n) = self.witness.steerer_grid {
            if n == 0 {
                return field("witness.steerer_grid", "must be positive");
            }
        }
        if let Some(sweep) = &self.sweep {
            sweep.grid()?;
            if sweep.parameter == SweepParameter::PS && self.state.name != StateName::Werner {
                return field("sweep.parameter", "p_s sweeps need a werner state");
            }
        }
        self.teleport.source_vc.validate("teleport.source_vc")?;
        self.teleport.source_ab.validate("teleport.source_ab")?;
        check_unit("teleport.eta_c", self.teleport.eta_c)?;
        check_unit("teleport.eta_b", self.teleport.eta_b)?;
        if let Some(c0) = self.teleport.c0 {
            check_unit("teleport.c0", c0)?;
        }
        check_unit("monogamy.eta_steered", self.monogamy.eta_steered)?;
        check_unit("monogamy.eta_steerers", self.monogamy.eta_steerers)?;
        if self.monogamy.samples == 0 {
            return field("monogamy.samples", "must be positive");
        }
        if self.monogamy.rank == Some(0) {
            return field("monogamy.rank", "must be positive");
        }
        SettingEnsemble::named(&self.bounds.set).or_else(|e| field("bounds.set", e))?;
        if self.mc.trials == 0 {
            return field("mc.trials", "must be positive");
        }
        Ok(())
    }

    fn with_param(&self, parameter: SweepParameter, value: f64) -> Self {
        let mut c = self.clone();
        match parameter {
            SweepParameter::EtaA => c.efficiency.eta_a = value,
            SweepParameter::EtaB => c.efficiency.eta_b = value,
            SweepParameter::PS => c.state.p_s = Some(value),
        }
        c
    }

    fn p_s(&self) -> Option<f64> {
        (self.state.name == StateName::Werner).then(|| self.state.p_s.unwrap_or(1.0))
    }
}

/// Witness values at one configuration.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub eta_a: f64,
    pub eta_b: f64,
    pub p_s: Option<f64>,
    pub three_setting: Option<SteeringReport>,
    pub two_setting: Option<SteeringReport>,
    pub wittmann: Option<SteeringReport>,
}

/// Evaluates the selected witnesses. The two-setting witness always uses
/// trusted (lossless) steered detectors; J = 0 leaves the three-setting
/// witness unevaluated.
pub fn evaluate_point(config: &ScenarioConfig) -> Result<PointResult> {
    let state = config.state.build()?;
    let dirs = config.witness.parsed_directions()?;
    let Efficiencies { eta_a, eta_b } = config.efficiency;
    let mut out = PointResult {
        eta_a,
        eta_b,
        p_s: config.p_s(),
        ..Default::default()
    };
    for w in &config.witness.witnesses {
        match w {
            WitnessKind::ThreeSetting => {
                let setup =
                    WitnessSetup::qubits(eta_a, eta_b).with_strategy(config.witness.strategy());
                out.three_setting =
                    match steering_param_3_with(&state, &[dirs[0], dirs[1], dirs[2]], &setup) {
                        Ok(r) => Some(r),
                        Err(Error::UndefinedWitness(_)) => None,
                        Err(e) => return Err(e),
                    };
            }
            WitnessKind::TwoSetting => {
                out.two_setting = Some(steering_param_2(&state, &[dirs[0], dirs[1]], eta_b)?);
            }
            WitnessKind::Wittmann => {
                out.wittmann = Some(wittmann_witness(
                    &state,
                    &[dirs[0], dirs[1], dirs[2]],
                    eta_a,
                    eta_b,
                )?);
            }
        }
    }
    Ok(out)
}

/// Threshold of each selected witness along the swept parameter.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub parameter: String,
    pub three_setting: Option<Threshold>,
    pub two_setting: Option<Threshold>,
    pub wittmann: Option<Threshold>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<PointResult>,
    pub summary: SweepSummary,
}

pub const SWEEP_COLUMNS: [&str; 11] = [
    "kind",
    "eta_a",
    "eta_b",
    "p_s",
    "S3",
    "S2",
    "wittmann_S",
    "wittmann_bound",
    "steering_3",
    "steering_2",
    "wittmann",
];

/// One row per grid point, then a summary row of located thresholds.
pub fn run_sweep(config: &ScenarioConfig) -> Result<SweepTable> {
    config.validate()?;
    let Some(sweep) = &config.sweep else {
        return field("sweep", "no sweep section");
    };
    let grid = sweep.grid()?;
    use rayon::prelude::*;
    let rows = grid
        .par_iter()
        .map(|&v| evaluate_point(&config.with_param(sweep.parameter, v)))
        .collect::<Result<Vec<_>>>()?;

    let locate = |kind: WitnessKind| -> Result<Option<Threshold>> {
        if !config.witness.witnesses.contains(&kind) {
            return Ok(None);
        }
        let t = bisect_threshold(
            |v| {
                let mut c = config.with_param(sweep.parameter, v);
                c.witness.witnesses = vec![kind];
                let r = evaluate_point(&c)?;
                Ok(match kind {
                    WitnessKind::ThreeSetting => {
                        r.three_setting.and_then(|r| r.verdicts.steering_3)
                    }
                    WitnessKind::TwoSetting => r.two_setting.and_then(|r| r.verdicts.steering_2),
                    WitnessKind::Wittmann => r.wittmann.and_then(|r| r.verdicts.wittmann),
                }
                .unwrap_or(false))
            },
            SCAN_TOL,
        )?;
        Ok(Some(t))
    };
    let summary = SweepSummary {
        parameter: sweep.parameter.name().to_string(),
        three_setting: locate(WitnessKind::ThreeSetting)?,
        two_setting: locate(WitnessKind::TwoSetting)?,
        wittmann: locate(WitnessKind::Wittmann)?,
    };
    Ok(SweepTable { rows, summary })
}

fn num(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.10}")).unwrap_or_default()
}

fn flag(v: Option<bool>) -> String {
    v.map(|b| b.to_string()).unwrap_or_default()
}

fn threshold_cell(t: &Option<Threshold>) -> String {
    match t {
        Some(Threshold::At(v)) => format!("{v:.10}"),
        Some(Threshold::Unattainable) => "unattainable".into(),
        None => String::new(),
    }
}

/// Writes a sweep as CSV with [`SWEEP_COLUMNS`]. The summary row has kind
/// `threshold:<parameter>` and holds each witness's threshold in its value
/// column (S3, S2, wittmann_S).
pub fn write_sweep_csv<W: Write>(table: &SweepTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_COLUMNS)?;
    for r in &table.rows {
        let three = r.three_setting.as_ref();
        let two = r.two_setting.as_ref();
        let witt = r.wittmann.as_ref();
        w.write_record([
            "point".to_string(),
            format!("{:.10}", r.eta_a),
            format!("{:.10}", r.eta_b),
            num(r.p_s),
            num(three.and_then(|x| x.s3)),
            num(two.and_then(|x| x.s2)),
            num(witt.and_then(|x| x.wittmann_s)),
            num(witt.and_then(|x| x.wittmann_bound)),
            flag(three.and_then(|x| x.verdicts.steering_3)),
            flag(two.and_then(|x| x.verdicts.steering_2)),
            flag(witt.and_then(|x| x.verdicts.wittmann)),
        ])?;
    }
    let s = &table.summary;
    w.write_record([
        format!("threshold:{}", s.parameter),
        String::new(),
        String::new(),
        String::new(),
        threshold_cell(&s.three_setting),
        threshold_cell(&s.two_setting),
        threshold_cell(&s.wittmann),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
    ])?;
    w.flush()?;
    Ok(())
}
