//! Command-line front end.
//!
//! Exit codes: `0` on success, `1` when a computation or verification fails,
//! `2` for usage and configuration errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::correlations::{assemble_record, PipelineConfig};
use crate::error::{Error, Result};
use crate::states::{SqueezingParameter, TruncationPolicy};
use crate::sweep::config_file::ConfigFile;
use crate::sweep::verify::{run_verification, VerifyOptions};
use crate::sweep::{run_sweep, write_outputs, OutputPaths, SweepAxis, SweepConfig};

pub const WORKERS_ENV: &str = "RINDLER_CORR_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "rindler-corr",
    version,
    about = "Correlations of an entangled mode shared with accelerated observers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a grid of squeezing parameters and write CSV, metadata and plots.
    Sweep(SweepArgs),
    /// Print the record at one squeezing parameter as JSON.
    Point(PointArgs),
    /// Compare records at N0/4, N0/2, N0 and 2 N0 around the adaptive cutoff N0.
    Convergence(ConvergenceArgs),
    /// Run the oracle suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct TruncationArgs {
    /// Fixed Fock cutoff instead of the adaptive rule.
    #[arg(long, conflicts_with = "tail_eps")]
    nmax: Option<usize>,
    /// Discarded-weight budget of the adaptive rule.
    #[arg(long)]
    tail_eps: Option<f64>,
    /// Tail budget of the state used to locate the optimal measurement.
    #[arg(long)]
    search_tail_eps: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    alpha_min: Option<f64>,
    #[arg(long)]
    alpha_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Mode frequency; selects a grid uniform in acceleration.
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    accel_min: Option<f64>,
    #[arg(long)]
    accel_max: Option<f64>,
    #[command(flatten)]
    truncation: TruncationArgs,
    /// CSV path; metadata goes next to it as `<stem>.meta.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the SVG figures into DIR.
    #[arg(long, value_name = "DIR", num_args = 0..=1, default_missing_value = "plots")]
    plots: Option<PathBuf>,
    /// Worker threads, 0 for one per core.
    #[arg(long)]
    workers: Option<usize>,
    /// `key = value` file with defaults for the flags above.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PointArgs {
    #[arg(long)]
    alpha: f64,
    #[command(flatten)]
    truncation: TruncationArgs,
}

#[derive(Debug, Args)]
struct ConvergenceArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    tail_eps: Option<f64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Angular step of the exhaustive measurement grid, in degrees.
    #[arg(long, default_value_t = 1)]
    resolution: u32,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

/// Exit status and diagnostics of a failed command.
struct Failure {
    code: i32,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let code = if matches!(error, Error::Config(_)) { 2 } else { 1 };
        Failure { code, error }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Point(a) => point(a),
        Command::Convergence(a) => convergence(a),
        Command::Verify(a) => verify(a),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure { code, error }) => {
            eprintln!("error: {error}");
            code
        }
    }
}

fn pipeline(nmax: Option<usize>, tail_eps: Option<f64>, search_tail_eps: Option<f64>) -> Result<PipelineConfig> {
    let mut p = PipelineConfig::default();
    match (nmax, tail_eps) {
        (Some(_), Some(_)) => return Err(Error::Config("nmax and tail_eps are mutually exclusive".into())),
        (Some(0), None) => return Err(Error::Config("nmax must be positive".into())),
        (Some(n), None) => p.truncation = TruncationPolicy::Fixed(n),
        (None, Some(eps)) if !(eps > 0.0 && eps < 1.0) => {
            return Err(Error::Config(format!("tail_eps must lie in (0, 1), got {eps}")));
        }
        (None, Some(tail_eps)) => p.truncation = TruncationPolicy::Adaptive { tail_eps },
        (None, None) => {}
    }
    if let Some(eps) = search_tail_eps {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::Config(format!("search_tail_eps must lie in (0, 1), got {eps}")));
        }
        p.optimizer.search_tail_eps = Some(eps);
    }
    Ok(p)
}

fn squeezing(alpha: f64) -> Result<SqueezingParameter> {
    SqueezingParameter::new(alpha).map_err(|e| Error::Config(e.to_string()))
}

fn workers_from_env() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => {
            v.trim().parse().map(Some).map_err(|_| Error::Config(format!("{WORKERS_ENV}={v:?} is not a worker count")))
        }
        Err(_) => Ok(None),
    }
}

/// Flags first, then the config file, then the environment.
fn sweep_config(a: SweepArgs) -> Result<SweepConfig> {
    let file = match &a.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let f64_of =
        |flag: Option<f64>, key: &str| -> Result<Option<f64>> { flag.map_or_else(|| file.get(key), |v| Ok(Some(v))) };
    let usize_of = |flag: Option<usize>, key: &str| -> Result<Option<usize>> {
        flag.map_or_else(|| file.get(key), |v| Ok(Some(v)))
    };

    let steps = usize_of(a.steps, "steps")?.unwrap_or(SweepAxis::default().steps());
    let alpha_min = f64_of(a.alpha_min, "alpha_min")?;
    let alpha_max = f64_of(a.alpha_max, "alpha_max")?;
    let omega = f64_of(a.omega, "omega")?;
    let accel_min = f64_of(a.accel_min, "accel_min")?;
    let accel_max = f64_of(a.accel_max, "accel_max")?;

    let axis = if omega.is_some() || accel_min.is_some() || accel_max.is_some() {
        if alpha_min.is_some() || alpha_max.is_some() {
            return Err(Error::Config("alpha and acceleration ranges are mutually exclusive".into()));
        }
        match (omega, accel_min, accel_max) {
            (Some(omega), Some(accel_min), Some(accel_max)) => {
                SweepAxis::Acceleration { omega, accel_min, accel_max, steps }
            }
            _ => return Err(Error::Config("an acceleration grid needs omega, accel_min and accel_max".into())),
        }
    } else {
        let SweepAxis::Squeezing { alpha_min: lo, alpha_max: hi, .. } = SweepAxis::default() else {
            unreachable!("default axis is a squeezing grid")
        };
        SweepAxis::Squeezing { alpha_min: alpha_min.unwrap_or(lo), alpha_max: alpha_max.unwrap_or(hi), steps }
    };
    axis.validate()?;

    // a truncation flag replaces the file's truncation settings as a whole
    let (nmax, tail_eps) = if a.truncation.nmax.is_some() || a.truncation.tail_eps.is_some() {
        (a.truncation.nmax, a.truncation.tail_eps)
    } else {
        (file.get("nmax")?, file.get("tail_eps")?)
    };
    let search = f64_of(a.truncation.search_tail_eps, "search_tail_eps")?;

    let csv = a.out.or_else(|| file.raw("out").map(PathBuf::from)).unwrap_or_else(|| OutputPaths::default().csv);
    let plots = a.plots.or_else(|| file.raw("plots").map(PathBuf::from));
    let workers = match usize_of(a.workers, "workers")? {
        Some(w) => w,
        None => workers_from_env()?.unwrap_or(0),
    };

    Ok(SweepConfig { axis, pipeline: pipeline(nmax, tail_eps, search)?, output: OutputPaths { csv, plots }, workers })
}

fn sweep(a: SweepArgs) -> std::result::Result<i32, Failure> {
    let config = sweep_config(a)?;
    let result = run_sweep(&config)?;
    write_outputs(&result)?;
    let meta = &result.metadata;
    eprintln!(
        "{} records in {:.1} s on {} worker(s), max N = {}; wrote {}",
        result.records.len(),
        meta.wall_time_s,
        meta.workers,
        meta.max_truncation,
        config.output.csv.display()
    );
    if let Some(dir) = &config.output.plots {
        eprintln!("figures in {}", dir.display());
    }
    Ok(0)
}

fn point(a: PointArgs) -> std::result::Result<i32, Failure> {
    let t = &a.truncation;
    let config = pipeline(t.nmax, t.tail_eps, t.search_tail_eps)?;
    let record = assemble_record(squeezing(a.alpha)?, &config)?;
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &record).map_err(Error::from)?;
    writeln!(out).map_err(Error::from)?;
    Ok(0)
}

fn convergence(a: ConvergenceArgs) -> std::result::Result<i32, Failure> {
    let alpha = squeezing(a.alpha)?;
    let base = pipeline(None, a.tail_eps, None)?;
    let n0 = base.truncation.resolve(alpha)?;
    let mut levels: Vec<usize> = [n0 / 4, n0 / 2, n0, 2 * n0].into_iter().map(|n| n.max(1)).collect();
    levels.dedup();

    let mut out = std::io::stdout().lock();
    let w = |e: std::io::Error| Failure::from(Error::from(e));
    writeln!(out, "# alpha = {}, adaptive N0 = {n0}", a.alpha).map_err(w)?;
    writeln!(out, "{:>8}  {:>16}  {:>16}  {:>14}  largest change in", "N", "J_AR", "EF_RAntiR", "max|delta|")
        .map_err(w)?;
    let mut previous = None;
    for n in levels {
        let config = PipelineConfig { truncation: TruncationPolicy::Fixed(n), ..base };
        let r = assemble_record(alpha, &config)?;
        let (delta, name) = match &previous {
            Some(p) => {
                let (d, name) = max_change(p, &r);
                (format!("{d:.3e}"), name)
            }
            None => ("-".to_string(), "-"),
        };
        writeln!(out, "{n:>8}  {:>16.12}  {:>16.12}  {delta:>14}  {name}", r.j_ar, r.ef_rantir).map_err(w)?;
        previous = Some(r);
    }
    Ok(0)
}

fn max_change(a: &crate::CorrelationRecord, b: &crate::CorrelationRecord) -> (f64, &'static str) {
    a.measures()
        .iter()
        .zip(b.measures())
        .map(|(&(name, x), (_, y))| ((x - y).abs(), name))
        .fold((0.0, "-"), |best, c| if c.0 > best.0 { c } else { best })
}

fn verify(a: VerifyArgs) -> std::result::Result<i32, Failure> {
    if a.resolution == 0 || 180 % a.resolution != 0 {
        return Err(Error::Config(format!("resolution must divide 180, got {}", a.resolution)).into());
    }
    let opts = VerifyOptions { resolution_deg: a.resolution, ..VerifyOptions::default() };
    let report = run_verification(&opts)?;
    let mut out = std::io::stdout().lock();
    let w = |e: std::io::Error| Failure::from(Error::from(e));
    if a.json {
        serde_json::to_writer_pretty(&mut out, &report).map_err(Error::from)?;
        writeln!(out).map_err(w)?;
    } else {
        for c in &report.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(out, "{mark} {:<52} {:>10.3e} < {:.0e}", c.name, c.value, c.tolerance).map_err(w)?;
        }
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        writeln!(out, "{} checks, {failed} failed", report.checks.len()).map_err(w)?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}
