//! The `ffdelay` command line: `fit`, `predict`, `simulate` and `compare`.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
//! Artifacts are staged as temporary files in the output directory and only
//! renamed into place once every artifact of the command is ready.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::estimation::{fit_variant, predict, r_squared, FitResult, ObservationSet};
use crate::io::{
    emit_params_toml, emit_prediction_csv, emit_state_csv, load_chart_options, load_config,
    parse_load_csv, parse_params_toml, parse_performance_csv, render_fit_chart, render_load_chart,
    ChartOptions, Diagnostics, PredictionTable, RunConfig,
};
use crate::model::{
    FirstOrderParams, KernelParams, LoadSeries, PerformanceParams, SingleDelayParams, StateParams,
    ThreeDelayParams, Variant,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    /// Summary on success, error description otherwise.
    pub message: String,
}

impl CommandOutcome {
    fn ok(message: String) -> Self {
        Self { exit_code: EXIT_OK, message }
    }

    fn fail(exit_code: i32, message: impl Into<String>) -> Self {
        Self { exit_code, message: message.into() }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ffdelay", version, about = "Fitness-fatigue models with delayed feedback")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fit the configured model to observed performance.
    Fit(FitArgs),
    /// Predict performance from a parameter document.
    Predict {
        #[arg(long)]
        load: PathBuf,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        horizon: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate one state equation on a load file.
    Simulate(SimulateArgs),
    /// Fit all four variants and tabulate SSE and R².
    Compare(FitArgs),
}

#[derive(Args, Debug)]
struct FitArgs {
    #[arg(long)]
    load: PathBuf,
    #[arg(long)]
    perf: PathBuf,
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Overrides `fit.seed` from the config.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    load: PathBuf,
    #[arg(long)]
    variant: String,
    /// Decay time constant (days).
    #[arg(long)]
    tau1: Option<f64>,
    /// Lag-1 time constant (days); `inf` disables it.
    #[arg(long)]
    tau2: Option<f64>,
    /// Lag-2 time constant (days).
    #[arg(long)]
    tau3: Option<f64>,
    /// Lag-3 time constant (days).
    #[arg(long)]
    tau4: Option<f64>,
    /// Kernel gain.
    #[arg(long, allow_hyphen_values = true)]
    tau5: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

/// Failure with its exit code.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_DATA, e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return CommandOutcome::fail(code, e.to_string());
        }
    };
    let result = match cli.command {
        Command::Fit(a) => cmd_fit(&a),
        Command::Predict { load, params, horizon, out } => cmd_predict(&load, &params, horizon, &out),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Compare(a) => cmd_compare(&a),
    };
    match result {
        Ok(summary) => CommandOutcome::ok(summary),
        Err(Failure(code, message)) => CommandOutcome::fail(code, message),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path)
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })
        .map_err(Failure::from)
}

fn with_path(path: &Path, e: Error) -> Failure {
    Failure(EXIT_DATA, format!("{}: {e}", path.display()))
}

fn read_load(path: &Path) -> Result<LoadSeries, Failure> {
    parse_load_csv(read(path)?).map_err(|e| with_path(path, e))
}

fn read_observations(path: &Path) -> Result<ObservationSet, Failure> {
    let obs = parse_performance_csv(read(path)?).map_err(|e| with_path(path, e))?;
    if obs.len() < 2 {
        return Err(Failure(
            EXIT_DATA,
            format!("{}: R² needs at least 2 observations, found {}", path.display(), obs.len()),
        ));
    }
    let (lo, hi) = obs.range();
    if lo == hi {
        return Err(Failure(
            EXIT_DATA,
            format!("{}: observations have zero variance, R² is undefined", path.display()),
        ));
    }
    Ok(obs)
}

fn read_config(path: &Path, seed: Option<u64>) -> Result<RunConfig, Failure> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure(EXIT_DATA, format!("{}: not valid UTF-8", path.display())))?;
    let mut config = load_config(&text).map_err(|e| with_path(path, e))?;
    if let Some(seed) = seed {
        config.fit.seed = seed;
    }
    Ok(config)
}

fn truncate(w: &LoadSeries, horizon: usize) -> Result<LoadSeries, Failure> {
    if horizon > w.len() {
        return Err(Failure(
            EXIT_DATA,
            format!("horizon {horizon} exceeds the {} days of load data", w.len()),
        ));
    }
    Ok(LoadSeries::new(w.values()[..horizon].to_vec())?)
}

/// Load data and observations cut to the configured horizon.
fn fit_inputs(args: &FitArgs) -> Result<(LoadSeries, ObservationSet, RunConfig), Failure> {
    let w = read_load(&args.load)?;
    let obs = read_observations(&args.perf)?;
    let config = read_config(&args.config, args.seed)?;
    let w = truncate(&w, config.horizon.unwrap_or(w.len()))?;
    if obs.last_day() >= w.len() {
        return Err(Failure(
            EXIT_DATA,
            format!("observation on day {} lies beyond the {}-day horizon", obs.last_day(), w.len()),
        ));
    }
    Ok((w, obs, config))
}

/// Files of one command, written all-or-nothing.
#[derive(Default)]
struct Artifacts(Vec<(&'static str, String)>);

impl Artifacts {
    fn add(&mut self, name: &'static str, contents: String) {
        self.0.push((name, contents));
    }

    fn commit(self, dir: &Path) -> Result<Vec<PathBuf>, Failure> {
        let io = |path: &Path, source| Failure::from(Error::Io { path: path.to_path_buf(), source });
        std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
        let mut staged = Vec::new();
        for (name, contents) in &self.0 {
            let mut tmp = tempfile::Builder::new()
                .prefix(&format!(".{name}."))
                .tempfile_in(dir)
                .map_err(|e| io(dir, e))?;
            tmp.write_all(contents.as_bytes()).map_err(|e| io(tmp.path(), e))?;
            staged.push((tmp, dir.join(name)));
        }
        let mut written: Vec<PathBuf> = Vec::new();
        for (tmp, target) in staged {
            if let Err(e) = tmp.persist(&target) {
                for path in &written {
                    let _ = std::fs::remove_file(path);
                }
                return Err(io(&target, e.error));
            }
            written.push(target);
        }
        Ok(written)
    }
}

fn chart_options(config: &RunConfig) -> (ChartOptions, ChartOptions) {
    let c = &config.chart;
    let fit = ChartOptions { width: c.width, height: c.height, title: c.fit_title.clone(), ..ChartOptions::default() };
    (fit, load_chart_options(c.width, c.height, &c.load_title))
}

fn diagnostics(result: &FitResult, obs: &ObservationSet) -> Diagnostics {
    Diagnostics {
        sse: result.sse,
        r2: result.r2,
        free_parameters: result.free_parameters,
        observations: obs.len(),
        starts_converged: result.starts_converged,
        best_start_index: result.best_start_index,
        underdetermined: result.underdetermined,
        non_identifiable: result.non_identifiable,
    }
}

fn warnings(result: &FitResult) -> String {
    let mut out = String::new();
    if result.underdetermined {
        out.push_str("warning: fewer observations than free parameters\n");
    }
    if result.non_identifiable {
        out.push_str("warning: no training load before the last observation; gains and time constants are not identifiable\n");
    }
    out
}

fn fmt_r2(r2: Option<f64>) -> String {
    r2.map_or_else(|| "undefined".to_string(), |v| v.to_string())
}

fn cmd_fit(args: &FitArgs) -> CmdResult {
    let (w, obs, config) = fit_inputs(args)?;
    let result = fit_variant(config.variant, &w, &obs, &config.bounds, &config.fit, &[])?;
    if result.starts_converged == 0 {
        return Err(Failure(
            EXIT_NUMERICAL,
            format!("none of the {} starts converged; raise fit.max_iterations", config.fit.starts),
        ));
    }
    let (fit_opts, load_opts) = chart_options(&config);
    let table = PredictionTable::new(&w, &result.predicted, Some(&obs))?;
    let mut artifacts = Artifacts::default();
    artifacts.add("params.toml", emit_params_toml(&result.params, Some(diagnostics(&result, &obs))));
    artifacts.add("predictions.csv", emit_prediction_csv(&table));
    artifacts.add("fit_chart.svg", render_fit_chart(&table, &fit_opts)?);
    artifacts.add("load_chart.svg", render_load_chart(&w, &load_opts)?);
    artifacts.commit(&args.out)?;

    let mut summary = format!(
        "variant: {}\nR²: {}\nSSE: {}\nconverged starts: {}/{}\n",
        config.variant,
        fmt_r2(result.r2),
        result.sse,
        result.starts_converged,
        result.starts.len()
    );
    summary.push_str(&warnings(&result));
    let _ = write!(summary, "wrote {}", args.out.display());
    Ok(summary)
}

fn cmd_predict(load: &Path, params_path: &Path, horizon: usize, out: &Path) -> CmdResult {
    let w = read_load(load)?;
    let bytes = read(params_path)?;
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure(EXIT_DATA, format!("{}: not valid UTF-8", params_path.display())))?;
    let params = parse_params_toml(&text).map_err(|e| with_path(params_path, e))?;
    let w = truncate(&w, horizon)?;
    let predicted = predict(&params, &w, horizon)?;
    let table = PredictionTable::new(&w, &predicted, None)?;
    let options = ChartOptions { title: "Predicted performance".into(), ..ChartOptions::default() };
    let mut artifacts = Artifacts::default();
    artifacts.add("predictions.csv", emit_prediction_csv(&table));
    artifacts.add("prediction_chart.svg", render_fit_chart(&table, &options)?);
    artifacts.commit(out)?;
    let (lo, hi) = predicted.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    Ok(format!("predicted {horizon} days ({lo} to {hi})\nwrote {}", out.display()))
}

fn simulate_usage(variant: Variant) -> &'static str {
    match variant {
        Variant::Classical => "usage: ffdelay simulate --variant classical --tau1 <days> --load <csv> --out <dir>",
        Variant::SingleDelay => {
            "usage: ffdelay simulate --variant single_delay --tau1 <days> --tau2 <days|inf> --load <csv> --out <dir>"
        }
        Variant::ThreeDelay => {
            "usage: ffdelay simulate --variant three_delay --tau1 <days> --tau2 <days|inf> --tau3 <days|inf> --tau4 <days|inf> --load <csv> --out <dir>"
        }
        Variant::Kernel => "usage: ffdelay simulate --variant kernel --tau1 <days> --tau5 <gain> --load <csv> --out <dir>",
    }
}

fn simulation_params(args: &SimulateArgs) -> Result<StateParams, Failure> {
    let variant: Variant = args.variant.parse().map_err(|e: Error| Failure(EXIT_USAGE, e.to_string()))?;
    let usage = |msg: String| Failure(EXIT_USAGE, format!("{msg}\n{}", simulate_usage(variant)));
    let need = |flag: &str, v: Option<f64>| v.ok_or_else(|| usage(format!("--{flag} is required for variant {variant}")));
    let domain = |e: Error| usage(e.to_string());
    let tau1 = need("tau1", args.tau1)?;
    Ok(match variant {
        Variant::Classical => StateParams::Classical(FirstOrderParams::new(tau1).map_err(domain)?),
        Variant::SingleDelay => {
            StateParams::SingleDelay(SingleDelayParams::new(tau1, need("tau2", args.tau2)?).map_err(domain)?)
        }
        Variant::ThreeDelay => StateParams::ThreeDelay(
            ThreeDelayParams::new(tau1, need("tau2", args.tau2)?, need("tau3", args.tau3)?, need("tau4", args.tau4)?)
                .map_err(domain)?,
        ),
        Variant::Kernel => StateParams::Kernel(KernelParams::new(tau1, need("tau5", args.tau5)?).map_err(domain)?),
    })
}

fn cmd_simulate(args: &SimulateArgs) -> CmdResult {
    let params = simulation_params(args)?;
    let w = read_load(&args.load)?;
    let state = params.evaluate(&w, w.len())?;
    let mut artifacts = Artifacts::default();
    artifacts.add("trajectory.csv", emit_state_csv(&w, state.values()));
    if !w.is_empty() {
        let table = PredictionTable::new(&w, state.values(), None)?;
        let options = ChartOptions {
            title: format!("{} state", params.variant()),
            y_label: "g(n)".into(),
            ..ChartOptions::default()
        };
        artifacts.add("state_chart.svg", render_fit_chart(&table, &options)?);
    }
    artifacts.commit(&args.out)?;
    let peak = state.values().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(format!("simulated {} days of {} (peak state {peak})\nwrote {}", w.len(), params.variant(), args.out.display()))
}

/// Variants in fitting order; each later fit is warm-started from the
/// nested variants fitted before it.
const COMPARE_ORDER: [Variant; 4] =
    [Variant::Classical, Variant::SingleDelay, Variant::Kernel, Variant::ThreeDelay];

/// Fits every variant on the same data. Rows follow [`Variant::ALL`].
pub fn compare_variants(
    w: &LoadSeries,
    obs: &ObservationSet,
    config: &RunConfig,
) -> crate::Result<Vec<(Variant, FitResult)>> {
    let mut fitted: Vec<(Variant, FitResult)> = Vec::new();
    for variant in COMPARE_ORDER {
        let warm: Vec<PerformanceParams> =
            fitted.iter().filter_map(|(_, r)| r.params.embed_in(variant)).collect();
        let result = fit_variant(variant, w, obs, &config.bounds, &config.fit, &warm)?;
        fitted.push((variant, result));
    }
    fitted.sort_by_key(|(v, _)| Variant::ALL.iter().position(|x| x == v));
    Ok(fitted)
}

pub fn emit_comparison_csv(rows: &[(Variant, FitResult)], obs: &ObservationSet) -> String {
    let mut out = String::from("variant,free_parameters,sse,r2,starts_converged\n");
    for (variant, r) in rows {
        let r2 = obs.sample(&r.predicted).ok().and_then(|p| r_squared(&p, obs).ok());
        let _ = writeln!(
            out,
            "{variant},{},{},{},{}",
            r.free_parameters,
            r.sse,
            r2.map(|v| v.to_string()).unwrap_or_default(),
            r.starts_converged
        );
    }
    out
}

fn cmd_compare(args: &FitArgs) -> CmdResult {
    let (w, obs, config) = fit_inputs(args)?;
    let rows = compare_variants(&w, &obs, &config)?;
    if let Some((v, _)) = rows.iter().find(|(_, r)| r.starts_converged == 0) {
        return Err(Failure(EXIT_NUMERICAL, format!("no start converged for variant {v}")));
    }
    let table = emit_comparison_csv(&rows, &obs);
    let mut artifacts = Artifacts::default();
    artifacts.add("comparison.csv", table.clone());
    artifacts.commit(&args.out)?;
    Ok(format!("{table}wrote {}", args.out.display()))
}

