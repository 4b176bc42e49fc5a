//! Command-line front end. The `eprsteer` binary only calls [`main_with`].

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{lhs_bound, linear_functional, NoDetectionPolicy, SettingEnsemble};
use crate::config::{
    evaluate_point, run_sweep, write_sweep_csv, PointResult, RelationName, ScenarioConfig,
    StateName, StateSpec, SweepConfig, SweepParameter,
};
use crate::error::{Error, Result};
use crate::mc::{
    estimate_report, read_records, sample_trials, write_records, EstimateConfig, RecordMetadata,
    SamplingPlan, Schedule, GENERATOR_ID,
};
use crate::monogamy::{
    min_slack, random_sweep, write_sweep_csv as write_slack_csv, MonogamyConfig, RandomStateKind,
    Relation,
};
use crate::steering::SteererStrategy;
use crate::teleport::{
    entanglement_swap_with, signature_of_state, swap_with_parametric, teleport_signature,
};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "EPRSTEER_OUT_DIR";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable summary.
    #[default]
    Table,
    /// JSON record.
    Record,
}

#[derive(Debug, Parser)]
#[command(
    name = "eprsteer",
    version,
    about = "EPR-steering witnesses under detector loss"
)]
pub struct Cli {
    /// TOML scenario file; command-line flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Where to write the command's data file. Relative paths resolve
    /// against the output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Output directory; overrides `output.dir` from the config file.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct StateArgs {
    /// werner, singlet, bell or maximally-mixed.
    #[arg(long)]
    pub state: Option<String>,
    #[arg(long)]
    pub p_s: Option<f64>,
    #[arg(long)]
    pub bell: Option<String>,
    #[arg(long)]
    pub eta_a: Option<f64>,
    #[arg(long)]
    pub eta_b: Option<f64>,
    /// Let the steering party pick the best of this many grid directions.
    #[arg(long)]
    pub steerer_grid: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the steering witnesses at one configuration.
    Steer(StateArgs),
    /// Evaluate the witnesses over a parameter grid and locate thresholds.
    Sweep {
        #[command(flatten)]
        state: StateArgs,
        /// eta_a, eta_b or p_s.
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        start: Option<f64>,
        #[arg(long)]
        stop: Option<f64>,
        #[arg(long)]
        step: Option<f64>,
    },
    /// Check a monogamy relation on random multi-qubit states.
    Monogamy {
        /// Number of random states.
        #[arg(long)]
        random: Option<usize>,
        /// three (4 qubits) or two (3 qubits).
        #[arg(long)]
        relation: Option<String>,
        /// Draw mixed states of this rank instead of pure states.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        steerer_grid: Option<usize>,
    },
    /// Entanglement-swapping teleportation and its steering signature.
    Teleport {
        #[arg(long)]
        eta_c: Option<f64>,
        #[arg(long)]
        eta_b: Option<f64>,
        /// Singlet weight of Victor–Charlie's Werner source.
        #[arg(long)]
        p_vc: Option<f64>,
        /// Singlet weight of Alice–Bob's Werner source.
        #[arg(long)]
        p_ab: Option<f64>,
        /// Use the parametric source with this vacuum amplitude.
        #[arg(long)]
        c0: Option<f64>,
        /// Apply Pauli corrections to all Bell outcomes.
        #[arg(long)]
        correct: bool,
    },
    /// Deterministic-LHS bound of a named direction set.
    Bounds {
        #[arg(long)]
        set: Option<String>,
        #[command(flatten)]
        state: StateArgs,
    },
    /// Generate a detection-record file.
    McSample {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        trials: Option<u64>,
        /// paired, independent or blocked.
        #[arg(long)]
        schedule: Option<String>,
    },
    /// Estimate the witnesses from a detection-record file.
    McEstimate {
        records: PathBuf,
        #[arg(long)]
        bootstrap: Option<usize>,
        #[arg(long)]
        min_trials: Option<usize>,
    },
}

fn parse_state_name(s: &str) -> Result<StateName> {
    match s {
        "werner" => Ok(StateName::Werner),
        "singlet" => Ok(StateName::Singlet),
        "bell" => Ok(StateName::Bell),
        "maximally-mixed" => Ok(StateName::MaximallyMixed),
        other => Err(Error::Config(format!(
            "state.name: unknown state '{other}'"
        ))),
    }
}

impl StateArgs {
    fn apply(&self, cfg: &mut ScenarioConfig) -> Result<()> {
        if let Some(name) = &self.state {
            cfg.state = StateSpec {
                name: parse_state_name(name)?,
                p_s: cfg.state.p_s,
                bell: cfg.state.bell.clone(),
            };
            if cfg.state.name == StateName::Werner && cfg.state.p_s.is_none() {
                cfg.state.p_s = Some(1.0);
            }
        }
        if let Some(p) = self.p_s {
            cfg.state.p_s = Some(p);
        }
        if let Some(b) = &self.bell {
            cfg.state.bell = Some(b.clone());
        }
        if let Some(v) = self.eta_a {
            cfg.efficiency.eta_a = v;
        }
        if let Some(v) = self.eta_b {
            cfg.efficiency.eta_b = v;
        }
        if self.steerer_grid.is_some() {
            cfg.witness.steerer_grid = self.steerer_grid;
        }
        Ok(())
    }
}

struct Context {
    cfg: ScenarioConfig,
    out: Option<PathBuf>,
    format: Format,
    out_dir: Option<PathBuf>,
}

impl Context {
    fn resolve(&self, path: &Path) -> PathBuf {
        match &self.out_dir {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.to_path_buf(),
        }
    }

    fn out_path(&self) -> Option<PathBuf> {
        self.out.as_deref().map(|p| self.resolve(p))
    }

    fn create(&self, path: &Path) -> Result<BufWriter<File>> {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent)?;
        }
        Ok(BufWriter::new(File::create(path)?))
    }

    fn write_json<T: Serialize>(&self, value: &T, stdout: &mut dyn Write) -> Result<()> {
        if let Some(path) = self.out_path() {
            let mut f = self.create(&path)?;
            serde_json::to_writer_pretty(&mut f, value)?;
            writeln!(f)?;
            f.flush()?;
        }
        if self.format == Format::Record {
            serde_json::to_writer_pretty(&mut *stdout, value)?;
            writeln!(stdout)?;
        }
        Ok(())
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing the summary or record to `stdout`.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Argument(e.to_string()))?;
    run(cli, stdout)
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    let mut cfg = match &cli.config {
        Some(path) => ScenarioConfig::load(path)?,
        None => ScenarioConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    let out_dir = cli.out_dir.clone().or_else(|| cfg.output.dir.clone());
    let ctx = Context {
        cfg,
        out: cli.out,
        format: cli.format,
        out_dir,
    };
    match cli.workers {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Argument(format!("--workers: {e}")))?;
            let mut buf: Vec<u8> = Vec::new();
            let result = pool.install(|| dispatch(ctx, cli.command, &mut buf));
            stdout.write_all(&buf)?;
            result
        }
        None => dispatch(ctx, cli.command, stdout),
    }
}

fn dispatch(mut ctx: Context, command: Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Steer(state) => {
            state.apply(&mut ctx.cfg)?;
            ctx.cfg.validate()?;
            steer(&ctx, stdout)
        }
        Command::Sweep {
            state,
            param,
            start,
            stop,
            step,
        } => {
            state.apply(&mut ctx.cfg)?;
            let mut sweep = ctx
                .cfg
                .sweep
                .clone()
                .unwrap_or_else(|| SweepConfig::range(SweepParameter::EtaB, 0.0, 1.0, 0.01));
            if let Some(p) = param {
                sweep.parameter = p.parse()?;
            }
            if start.is_some() || stop.is_some() || step.is_some() {
                sweep.values = None;
            }
            sweep.start = start.or(sweep.start);
            sweep.stop = stop.or(sweep.stop);
            sweep.step = step.or(sweep.step);
            ctx.cfg.sweep = Some(sweep);
            sweep_cmd(&ctx, stdout)
        }
        Command::Monogamy {
            random,
            relation,
            rank,
            steerer_grid,
        } => {
            let m = &mut ctx.cfg.monogamy;
            if let Some(n) = random {
                m.samples = n;
            }
            if let Some(r) = relation {
                m.relation = match r.as_str() {
                    "three" | "3" => RelationName::Three,
                    "two" | "2" => RelationName::Two,
                    other => {
                        return Err(Error::Config(format!(
                            "monogamy.relation: unknown relation '{other}'"
                        )))
                    }
                };
            }
            if rank.is_some() {
                m.rank = rank;
            }
            if steerer_grid.is_some() {
                m.steerer_grid = steerer_grid;
            }
            ctx.cfg.validate()?;
            monogamy_cmd(&ctx, stdout)
        }
        Command::Teleport {
            eta_c,
            eta_b,
            p_vc,
            p_ab,
            c0,
            correct,
        } => {
            let t = &mut ctx.cfg.teleport;
            if let Some(v) = eta_c {
                t.eta_c = v;
            }
            if let Some(v) = eta_b {
                t.eta_b = v;
            }
            if let Some(p) = p_vc {
                t.source_vc = StateSpec::werner(p);
            }
            if let Some(p) = p_ab {
                t.source_ab = StateSpec::werner(p);
            }
            if c0.is_some() {
                t.c0 = c0;
            }
            t.correct |= correct;
            ctx.cfg.validate()?;
            teleport_cmd(&ctx, stdout)
        }
        Command::Bounds { set, state } => {
            state.apply(&mut ctx.cfg)?;
            if let Some(s) = set {
                ctx.cfg.bounds.set = s;
            }
            ctx.cfg.validate()?;
            bounds_cmd(&ctx, stdout)
        }
        Command::McSample {
            state,
            trials,
            schedule,
        } => {
            state.apply(&mut ctx.cfg)?;
            if let Some(n) = trials {
                ctx.cfg.mc.trials = n;
            }
            if let Some(s) = schedule {
                ctx.cfg.mc.schedule = s
                    .parse::<Schedule>()
                    .map_err(|e| Error::Config(format!("mc.schedule: {e}")))?;
            }
            ctx.cfg.validate()?;
            mc_sample_cmd(&ctx, stdout)
        }
        Command::McEstimate {
            records,
            bootstrap,
            min_trials,
        } => {
            if let Some(b) = bootstrap {
                ctx.cfg.mc.bootstrap = b;
            }
            if let Some(m) = min_trials {
                ctx.cfg.mc.min_trials = m;
            }
            ctx.cfg.validate()?;
            mc_estimate_cmd(&ctx, &records, stdout)
        }
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_else(|| "n/a".into())
}

fn fmt_verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "steering",
        Some(false) => "no violation",
        None => "no verdict",
    }
}

fn print_point(r: &PointResult, stdout: &mut dyn Write) -> Result<()> {
    writeln!(
        stdout,
        "eta_a={:.4} eta_b={:.4} p_s={}",
        r.eta_a,
        r.eta_b,
        r.p_s
            .map(|p| format!("{p:.4}"))
            .unwrap_or_else(|| "-".into())
    )?;
    if let Some(t) = &r.three_setting {
        for iv in &t.inference_variances {
            writeln!(
                stdout,
                "  inference variance {}: {:.6}",
                iv.setting, iv.value
            )?;
        }
        writeln!(stdout, "  J = {}", fmt_opt(t.j))?;
        writeln!(
            stdout,
            "  S3 = {} ({})",
            fmt_opt(t.s3),
            fmt_verdict(t.verdicts.steering_3)
        )?;
    } else if r.eta_a == 0.0 {
        writeln!(stdout, "  S3 undefined: J = 0")?;
    }
    if let Some(t) = &r.two_setting {
        writeln!(
            stdout,
            "  S2 = {} ({})",
            fmt_opt(t.s2),
            fmt_verdict(t.verdicts.steering_2)
        )?;
    }
    if let Some(t) = &r.wittmann {
        writeln!(
            stdout,
            "  Wittmann S = {} vs bound {} ({})",
            fmt_opt(t.wittmann_s),
            fmt_opt(t.wittmann_bound),
            fmt_verdict(t.verdicts.wittmann)
        )?;
    }
    Ok(())
}

fn steer(ctx: &Context, stdout: &mut dyn Write) -> Result<()> {
    let r = evaluate_point(&ctx.cfg)?;
    if ctx.format == Format::Table {
        writeln!(stdout, "state: {}", ctx.cfg.state.describe())?;
        print_point(&r, stdout)?;
    }
    ctx.write_json(&r, stdout)
}

fn sweep_cmd(ctx: &Context, stdout: &mut dyn Write) -> Result<()> {
    let table = run_sweep(&ctx.cfg)?;
    if let Some(path) = ctx.out_path() {
        let f = ctx.create(&path)?;
        write_sweep_csv(&table, f)?;
    }
    match ctx.format {
        Format::Table => write_sweep_csv(&table, &mut *stdout)?,
        Format::Record => {
            serde_json::to_writer_pretty(&mut *stdout, &table)?;
            writeln!(stdout)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct MonogamySummary {
    relation: String,
    samples: usize,
    seed: u64,
    bound: f64,
    min_slack: f64,
    violations: usize,
}

fn monogamy_cmd(ctx: &Context, stdout: &mut dyn Write) -> Result<()> {
    let m = &ctx.cfg.monogamy;
    let relation = match m.relation {
        RelationName::Three => Relation::ThreeSetting,
        RelationName::Two => Relation::TwoSetting,
    };
    let kind = match m.rank {
        Some(rank) => RandomStateKind::Mixed { rank },
        None => RandomStateKind::Pure,
    };
    let config = MonogamyConfig {
        eta_steered: m.eta_steered,
        eta_steerers: m.eta_steerers,
        strategy: m
            .steerer_grid
            .map(SteererStrategy::grid)
            .unwrap_or(SteererStrategy::Aligned),
    };
    let rows = random_sweep(relation, kind, m.samples, ctx.cfg.seed, &config)?;
    if let Some(path) = ctx.out_path() {
        write_slack_csv(&rows, ctx.create(&path)?)?;
    }
    let summary = MonogamySummary {
        relation: format!("{:?}", m.relation).to_lowercase(),
        samples: rows.len(),
        seed: ctx.cfg.seed,
        bound: rows.first().map(|r| r.report.bound).unwrap_or(0.0),
        min_slack: min_slack(&rows),
        violations: rows.iter().filter(|r| !r.report.holds()).count(),
    };
    match ctx.format {
        Format::Table => {
            writeln!(
                stdout,
                "relation: {} (bound {}), samples: {}, seed: {}",
                summary.relation, summary.bound, summary.samples, summary.seed
            )?;
            writeln!(stdout, "min slack: {:e}", summary.min_slack)?;
            writeln!(stdout, "violations (slack < -1e-9): {}", summary.violations)?;
            let mut sorted: Vec<_> = rows.iter().collect();
            sorted.sort_by(|a, b| a.report.slack.total_cmp(&b.report.slack));
            writeln!(stdout, "sample,slack,terms")?;
            for r in sorted.iter().take(5) {
                let terms: Vec<String> = r
                    .report
                    .terms
                    .iter()
                    .map(|t| format!("{:.6}", t.value))
                    .collect();
                writeln!(
                    stdout,
                    "{},{:e},{}",
                    r.sample,
                    r.report.slack,
                    terms.join(";")
                )?;
            }
        }
        Format::Record => {
            serde_json::to_writer_pretty(&mut *stdout, &summary)?;
            writeln!(stdout)?;
        }
    }
    Ok(())
}

fn teleport_cmd(ctx: &Context, stdout: &mut dyn Write) -> Result<()> {
    let t = &ctx.cfg.teleport;
    let vc = t.source_vc.build()?;
    let report = match t.c0 {
        Some(c0) => {
            let amps = crate::states::ParametricAmplitudes::from_vacuum_amplitude(c0)?;
            let swap = swap_with_parametric(amps, &vc)?;
            if ctx.format == Format::Table {
                writeln!(
                    stdout,
                    "parametric source c0={c0}: coincidence probability {:.6}, B photon number {:.6}",
                    swap.probability, swap.b_photon_number
                )?;
            }
            signature_of_state(&swap.qubit_state, swap.probability, t.eta_c, t.eta_b)?
        }
        None => {
            let ab = t.source_ab.build()?;
            if ctx.format == Format::Table {
                for o in entanglement_swap_with(&vc, &ab, t.correct)? {
                    writeln!(
                        stdout,
                        "bell outcome {}: probability {:.6}",
                        o.bell_outcome, o.probability
                    )?;
                }
            }
            teleport_signature(&vc, &ab, t.eta_c, t.eta_b)?
        }
    };
    if ctx.format == Format::Table {
        writeln!(
            stdout,
            "certified: {}, S3={:.3}",
            report.certified,
            report.s3()
        )?;
        writeln!(stdout, "figure of merit: {:.6}", report.figure_of_merit)?;
        writeln!(
            stdout,
            "fidelity: {:.6} (> 2/3: {}, > 5/6: {})",
            report.fidelity, report.exceeds_classical, report.exceeds_cloning
        )?;
    }
    ctx.write_json(&report, stdout)
}

#[derive(Serialize)]
struct BoundsRecord {
    set: String,
    m: usize,
    bound: f64,
    signs: Vec<i8>,
    state: String,
    eta_b: f64,
    functional: f64,
    violated: bool,
}

fn bounds_cmd(ctx: &Context, stdout: &mut dyn Write) -> Result<()> {
    let ensemble = SettingEnsemble::named(&ctx.cfg.bounds.set)?;
    let bound = lhs_bound(&ensemble)?;
    let state = ctx.cfg.state.build()?;
    let eta_b = ctx.cfg.efficiency.eta_b;
    let functional = linear_functional(&state, &ensemble, eta_b, NoDetectionPolicy::DeclareZero)?;
    let record = BoundsRecord {
        set: ctx.cfg.bounds.set.clone(),
        m: ensemble.m(),
        bound: bound.value,
        signs: bound.signs.clone(),
        state: ctx.cfg.state.describe(),
        eta_b,
        functional,
        violated: bound.is_violated_by(functional),
    };
    if ctx.format == Format::Table {
        writeln!(stdout, "C_{} = {:.5}", record.m, record.bound)?;
        writeln!(
            stdout,
            "{} at eta_b={:.4}: functional {:.6} ({})",
            record.state,
            eta_b,
            functional,
            if record.violated {
                "steering"
            } else {
                "no violation"
            }
        )?;
    }
    ctx.write_json(&record, stdout)
}

fn mc_sample_cmd(ctx: &Context, stdout: &mut dyn Write) -> Result<()> {
    let cfg = &ctx.cfg;
    let mut plan = SamplingPlan::qubits(
        cfg.state.build()?,
        cfg.efficiency.eta_a,
        cfg.efficiency.eta_b,
    );
    plan.settings = cfg.witness.parsed_directions()?;
    plan.schedule = cfg.mc.schedule;
    let records = sample_trials(&plan, cfg.mc.trials, cfg.seed)?;
    let path = ctx
        .out_path()
        .unwrap_or_else(|| ctx.resolve(Path::new("records.csv")));
    write_records(&records, ctx.create(&path)?)?;
    let meta = RecordMetadata {
        seed: cfg.seed,
        n_trials: cfg.mc.trials,
        state: cfg.state.describe(),
        eta_a: Some(cfg.efficiency.eta_a),
        eta_b: Some(cfg.efficiency.eta_b),
        settings: cfg.witness.directions.clone(),
        schedule: cfg.mc.schedule,
        generator: GENERATOR_ID.to_string(),
    };
    let meta_path = metadata_path(&path);
    let mut f = ctx.create(&meta_path)?;
    serde_json::to_writer_pretty(&mut f, &meta)?;
    writeln!(f)?;
    f.flush()?;
    match ctx.format {
        Format::Table => writeln!(
            stdout,
            "wrote {} records to {} (metadata {})",
            records.len(),
            path.display(),
            meta_path.display()
        )?,
        Format::Record => {
            serde_json::to_writer_pretty(&mut *stdout, &meta)?;
            writeln!(stdout)?;
        }
    }
    Ok(())
}

/// `records.csv` → `records.csv.meta.json`.
pub fn metadata_path(records: &Path) -> PathBuf {
    let mut s = records.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn mc_estimate_cmd(ctx: &Context, records: &Path, stdout: &mut dyn Write) -> Result<()> {
    let path = ctx.resolve(records);
    let recs = read_records(BufReader::new(File::open(&path)?))?;
    let est = estimate_report(
        &recs,
        &EstimateConfig {
            bootstrap: ctx.cfg.mc.bootstrap,
            seed: ctx.cfg.seed,
            min_trials: ctx.cfg.mc.min_trials,
        },
    )?;
    if est.records_consumed != recs.len() as u64 {
        return Err(Error::Numeric(format!(
            "consumed {} of {} records",
            est.records_consumed,
            recs.len()
        )));
    }
    if ctx.format == Format::Table {
        writeln!(stdout, "records consumed: {}", est.records_consumed)?;
        for (label, e) in &est.inference_variances {
            writeln!(
                stdout,
                "  inference variance {label}: {:.6} ± {:.6}",
                e.value, e.standard_error
            )?;
        }
        writeln!(
            stdout,
            "  J = {:.6} ± {:.6}",
            est.j.value, est.j.standard_error
        )?;
        let line = |name: &str, e: &Option<crate::mc::EstimateWithError>| match e {
            Some(e) => format!("  {name} = {:.6} ± {:.6}", e.value, e.standard_error),
            None => format!("  {name} = n/a"),
        };
        writeln!(
            stdout,
            "{} ({})",
            line("S3", &est.s3),
            fmt_verdict(est.report.verdicts.steering_3)
        )?;
        writeln!(
            stdout,
            "{} ({})",
            line("S2", &est.s2),
            fmt_verdict(est.report.verdicts.steering_2)
        )?;
        writeln!(
            stdout,
            "{} vs bound {} ({})",
            line("Wittmann S", &est.wittmann_s),
            fmt_opt(est.wittmann_bound.map(|e| e.value)),
            fmt_verdict(est.report.verdicts.wittmann)
        )?;
        for w in &est.warnings {
            writeln!(stdout, "warning: {w}")?;
        }
    }
    ctx.write_json(&est, stdout)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<String> {
        let mut out = Vec::new();
        main_with(
            std::iter::once("eprsteer").chain(args.iter().copied()),
            &mut out,
        )?;
        Ok(String::from_utf8(out).unwrap())
    }

    #[test]
    fn teleport_ideal() {
        let out = run_args(&["teleport"]).unwrap();
        assert!(out.contains("certified: true, S3=0.000"), "{out}");
    }

    #[test]
    fn bounds_orthogonal3() {
        let out = run_args(&["bounds", "--set", "orthogonal3"]).unwrap();
        assert!(out.contains("C_3 = 0.57735"), "{out}");
    }

    #[test]
    fn unknown_flag_is_an_error() {
        assert!(run_args(&["steer", "--nope"]).is_err());
        assert!(run_args(&["frobnicate"]).is_err());
    }

    #[test]
    fn steer_record_is_json() {
        let out = run_args(&["--format", "record", "steer", "--eta-b", "0.6"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["three_setting"]["S3"].as_f64().unwrap() - 0.6).abs() < 1e-12);
    }
}
