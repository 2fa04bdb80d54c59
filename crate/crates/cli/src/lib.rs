//! Command-line front end: closing radii, locus traces, curve fits, the
//! verification suite and SVG figures.
//!
//! Exit codes are 0 on success, 1 when a theorem check fails and 2 for
//! usage and input errors.

pub mod config;
pub mod plot;
pub mod tracefile;

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use poncelet_core::engine::{solve_closure_radius, FamilyConfig};
use poncelet_core::family::closure_ratio;
use poncelet_core::loci::{fit_auto, fit_circle, fit_conic, fit_line, trace_locus, FitModel, FitResult, Target};
use poncelet_core::verify::{run_suite_filtered, CheckClass, SuiteReport, SCHEMA_VERSION};
use poncelet_core::Vec2;
use serde::Serialize;
use thiserror::Error;

use config::{FileConfig, Overrides, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] poncelet_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("malformed trace {path}: {msg}")]
    Malformed { path: String, msg: String },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "poncelet", version, about = "Poncelet polygons inscribed in a parabola")]
pub struct Cli {
    /// TOML file with default settings; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Caustic radius ratio r/f that closes the family after N steps.
    Closure {
        #[arg(value_parser = clap::value_parser!(u16).range(3..))]
        n: u16,
        /// Bisection bracket on r/f.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        bracket: Option<Vec<f64>>,
    },
    /// Samples a center or centroid over the family and writes a CSV trace.
    Trace {
        #[arg(value_parser = clap::value_parser!(u16).range(3..))]
        n: u16,
        /// X1..X110 for triangles, C0, C1, C2 for any N, W for quadrilaterals.
        target: String,
        /// Use the polar polygons.
        #[arg(long)]
        polar: bool,
        #[command(flatten)]
        grid: GridArgs,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fits a line, circle or conic to a trace and prints JSON.
    Fit {
        trace: PathBuf,
        #[arg(long, value_enum, default_value_t = ModelArg::Auto)]
        model: ModelArg,
    },
    /// Runs the verification suite.
    Verify {
        /// Also write the JSON report here.
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        /// Only run checks whose name matches this glob.
        #[arg(long, value_name = "GLOB")]
        filter: Option<String>,
    },
    /// Draws traces over the parabola and caustic as SVG.
    Plot {
        #[arg(required = true)]
        traces: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Fit JSON to overlay; may be repeated.
        #[arg(long, value_name = "FILE")]
        fit: Vec<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct GridArgs {
    /// Number of starting ordinates.
    #[arg(long)]
    pub count: Option<usize>,
    /// Lower end of y1/f.
    #[arg(long, allow_negative_numbers = true)]
    pub lo: Option<f64>,
    /// Upper end of y1/f.
    #[arg(long, allow_negative_numbers = true)]
    pub hi: Option<f64>,
    /// Focal distance.
    #[arg(long)]
    pub f: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Auto,
    Line,
    Circle,
    Conic,
}

/// JSON emitted by `fit`.
#[derive(Debug, Serialize)]
pub struct FitReport {
    pub schema_version: u32,
    #[serde(flatten)]
    pub fit: FitResult,
    /// RMS residual of every model tried by `auto`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<BTreeMap<String, f64>>,
}

type Fitter = fn(&[Vec2]) -> poncelet_core::Result<FitResult>;

/// Runs one parsed invocation and returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Closure { n, bracket } => cmd_closure(n.into(), bracket.as_deref(), out),
        Command::Trace {
            n,
            target,
            polar,
            grid,
            out: path,
        } => {
            let flags = Overrides {
                f: grid.f,
                count: grid.count,
                lo: grid.lo,
                hi: grid.hi,
            };
            let run = RunConfig::resolve(n.into(), &file, flags)?;
            let csv = cmd_trace(&run, &target, polar)?;
            emit(path.as_deref(), &csv, out)
        }
        Command::Fit { trace, model } => {
            let report = cmd_fit(&trace, model, file.suite.tolerances.fit)?;
            let json = serde_json::to_string_pretty(&report).expect("fit report serializes");
            writeln!(out, "{json}").map_err(stdout_err)?;
            Ok(0)
        }
        Command::Verify { json, filter } => cmd_verify(&file, json.as_deref(), filter.as_deref(), out),
        Command::Plot { traces, out: path, fit } => {
            let svg = cmd_plot(&traces, &fit, file.f.unwrap_or(1.0))?;
            emit(Some(&path), &svg, out)
        }
    }
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::io(Path::new("<stdout>"), e)
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<u8, CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e))?,
        None => out.write_all(text.as_bytes()).map_err(stdout_err)?,
    }
    Ok(0)
}

/// Closed form of the closing ratio, where one is known.
fn closed_form(n: usize) -> Option<&'static str> {
    match n {
        3 => Some("2*(sqrt(2)-1)"),
        4 => Some("2*sqrt(sqrt(5)-2)"),
        5 => Some("positive root of x^6 + 12x^5 - 28x^4 + 32x^3 + 112x^2 - 64x - 64"),
        _ => None,
    }
}

pub fn cmd_closure(n: usize, bracket: Option<&[f64]>, out: &mut dyn Write) -> Result<u8, CliError> {
    let line = match (bracket, closed_form(n)) {
        (None, Some(form)) => format!("{form} = {}", closure_ratio(n)?),
        _ => {
            let bracket = bracket.map(|b| (b[0], b[1]));
            let sol = solve_closure_radius(1.0, n, bracket).map_err(|e| match e {
                poncelet_core::Error::BadBracket { lo, hi } => {
                    CliError::Usage(format!("bad bracket [{lo}, {hi}]: no closing radius inside (0 < lo < hi < 1 required)"))
                }
                other => other.into(),
            })?;
            let (lo, hi) = sol.bracket;
            format!("{} (bisection of the closure defect on r/f in [{lo}, {hi}])", sol.r)
        }
    };
    writeln!(out, "{line}").map_err(stdout_err)?;
    Ok(0)
}

pub fn cmd_trace(run: &RunConfig, target: &str, polar: bool) -> Result<String, CliError> {
    let target: Target = target
        .parse()
        .map_err(|e: poncelet_core::Error| CliError::Usage(format!("unsupported target {target:?}: {e}")))?;
    let family = FamilyConfig::closing(run.n, run.f)?;
    let trace = trace_locus(&family, target, polar, &run.grid).map_err(|e| match e {
        poncelet_core::Error::Unsupported(msg) => CliError::Usage(format!("unsupported target: {msg}")),
        other => other.into(),
    })?;
    Ok(tracefile::write_trace(&trace))
}

pub fn cmd_fit(path: &Path, model: ModelArg, tol: f64) -> Result<FitReport, CliError> {
    let trace = tracefile::read_trace(path)?;
    let points = trace.points();
    let (fit, residuals) = match model {
        ModelArg::Line => (fit_line(&points)?, None),
        ModelArg::Circle => (fit_circle(&points)?, None),
        ModelArg::Conic => (fit_conic(&points)?, None),
        ModelArg::Auto => {
            let (best, _) = fit_auto(&points, tol)?;
            // Keyed by the model asked for: a circle fit may degrade to a line.
            let fits: [(&str, Fitter); 3] = [("line", fit_line), ("circle", fit_circle), ("conic", fit_conic)];
            let residuals = fits
                .iter()
                .filter_map(|(name, fit)| Some((name.to_string(), fit(&points).ok()?.rms_residual)))
                .collect();
            (best, Some(residuals))
        }
    };
    Ok(FitReport {
        schema_version: SCHEMA_VERSION,
        fit,
        residuals,
    })
}

pub fn cmd_verify(
    file: &FileConfig,
    json: Option<&Path>,
    filter: Option<&str>,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let pattern = filter
        .map(glob::Pattern::new)
        .transpose()
        .map_err(|e| CliError::Usage(format!("bad filter: {e}")))?;
    let report = run_suite_filtered(&file.suite, |name| pattern.as_ref().is_none_or(|p| p.matches(name)));
    if report.checks.is_empty() {
        return Err(CliError::Usage(format!("no check matches {:?}", filter.unwrap_or(""))));
    }
    print_report(&report, out).map_err(stdout_err)?;
    if let Some(p) = json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        fs::write(p, text + "\n").map_err(|e| CliError::io(p, e))?;
    }
    Ok(if report.ok() { 0 } else { EXIT_CHECK_FAILED })
}

fn print_report(report: &SuiteReport, out: &mut dyn Write) -> io::Result<()> {
    for c in &report.checks {
        let verdict = match (c.class, c.pass) {
            (CheckClass::Theorem, true) => "PASS",
            (CheckClass::Theorem, false) => "FAIL",
            (CheckClass::Conjecture, true) => "SUPPORTED",
            (CheckClass::Conjecture, false) => "UNSUPPORTED",
        };
        writeln!(
            out,
            "{verdict:<11} {:<36} dev {:.3e} tol {:.1e} n={}",
            c.name, c.max_deviation, c.tolerance, c.samples
        )?;
    }
    let s = &report.summary;
    writeln!(
        out,
        "theorems: {} passed, {} failed; conjectures: {} supported, {} unsupported",
        s.passed, s.failed, s.conjecture_evidence.supported, s.conjecture_evidence.unsupported
    )
}

pub fn cmd_plot(traces: &[PathBuf], fits: &[PathBuf], f: f64) -> Result<String, CliError> {
    let files = traces
        .iter()
        .map(|p| {
            let t = tracefile::read_trace(p)?;
            if t.rows.is_empty() {
                return Err(CliError::Malformed {
                    path: p.display().to_string(),
                    msg: "trace has no rows".into(),
                });
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let fits = fits
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            let fit: FitResult = serde_json::from_str(&text).map_err(|e| CliError::Malformed {
                path: p.display().to_string(),
                msg: e.to_string(),
            })?;
            Ok(fit)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let layers: Vec<plot::Layer> = files
        .iter()
        .zip(traces)
        .map(|(trace, path)| {
            let name = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            let label = match &trace.target {
                Some(t) if trace.polar => format!("{t}' ({name})"),
                Some(t) => format!("{t} ({name})"),
                None => name,
            };
            plot::Layer { label, trace }
        })
        .collect();
    let fits: Vec<FitResult> = fits.into_iter().filter(|f| f.model != FitModel::None).collect();
    plot::render(&layers, &fits, f).ok_or_else(|| CliError::Usage("nothing to plot".into()))
}
