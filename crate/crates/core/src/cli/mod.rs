//! Command-line front end. `run` takes the raw arguments and writers so the
//! whole tool can be driven from tests.

pub mod commands;
mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::Value;

use crate::embedding::CoeffVector;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, parse_rational_list};

pub use commands::{exit_for_error, fmt_complex, Options, Outcome};
pub use input::{parse_coeffs, parse_complex_list, Source};

#[derive(Debug, Parser)]
#[command(name = "srcirc", version, about = "Exact unit-circle tests for self-reciprocal polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for batch input and per-n work.
    #[arg(long, global = true, env = "SRCIRC_WORKERS")]
    pub workers: Option<usize>,
    /// Write the JSON report to this file; stdout then gets one summary line
    /// per polynomial.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether all roots lie on the unit circle.
    Check(CheckArgs),
    /// Report delta_n, Delta_n and gamma_n.
    Delta(DeltaArgs),
    /// Build the step Hamiltonian.
    Hamiltonian(ScaleArgs),
    /// Evaluate E, E#, A, B (and K off the real axis) at complex points.
    Eval(EvalArgs),
    /// Rebuild the coefficients from the steps and P(1).
    Reconstruct(ReconstructArgs),
    /// Numeric roots and the nested-determinant check.
    Oracle(PolyArgs),
    /// Certified sign check of delta_n(c; t) over every t > 1.
    Certify(PolyArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PolyArgs {
    /// Half coefficient vector c_0,...,c_g (integers, p/q or decimals).
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// JSON {"g": .., "c": [..]} (or an array of them), or CSV with one
    /// polynomial per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScaleArgs {
    #[command(flatten)]
    pub source: PolyArgs,
    /// log q as a positive rational (default 2).
    #[arg(long, value_name = "RATIONAL")]
    pub log_q: Option<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub scale: ScaleArgs,
    /// Comma-separated t values above 1 for the sampled test.
    #[arg(long)]
    pub grid: Option<String>,
    /// Settle non-simple inputs with the certified symbolic check.
    #[arg(long)]
    pub certify: bool,
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    #[command(flatten)]
    pub scale: ScaleArgs,
    /// Also report delta_n(c; t) at these t values.
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub scale: ScaleArgs,
    /// Comma-separated complex points, e.g. 0,0.5+0.25i.
    #[arg(long, allow_hyphen_values = true, required = true)]
    pub z: String,
    /// Also evaluate A(a, z), B(a, z) inside step interval n ...
    #[arg(long, requires = "s")]
    pub n: Option<usize>,
    /// ... at fraction s in [0, 1) of it.
    #[arg(long, requires = "n")]
    pub s: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// gamma_1,...,gamma_2g.
    #[arg(long, allow_hyphen_values = true, requires = "p1", conflicts_with = "hamiltonian")]
    pub gamma: Option<String>,
    /// P(1).
    #[arg(long, allow_hyphen_values = true)]
    pub p1: Option<String>,
    /// JSON report written by the hamiltonian subcommand.
    #[arg(long, value_name = "PATH")]
    pub hamiltonian: Option<PathBuf>,
}

fn load(src: &PolyArgs) -> Result<Source> {
    input::load(src.coeffs.as_deref(), src.file.as_deref())
}

fn opt_rational(s: &Option<String>) -> Result<Option<crate::exact::Rational>> {
    s.as_deref().map(parse_rational).transpose()
}

type Job = Box<dyn Fn(&CoeffVector) -> Result<Outcome> + Sync>;

fn polynomial_job(cmd: &Command) -> Result<Option<(&PolyArgs, Job)>> {
    Ok(Some(match cmd {
        Command::Check(a) => {
            let mut o = Options {
                log_q: opt_rational(&a.scale.log_q)?,
                certify: a.certify,
                ..Options::default()
            };
            if let Some(g) = &a.grid {
                o.grid = Some(parse_rational_list(g)?);
            }
            (&a.scale.source, Box::new(move |c: &CoeffVector| commands::check(c, &o)) as Job)
        }
        Command::Delta(a) => {
            let mut o = Options {
                log_q: opt_rational(&a.scale.log_q)?,
                ..Options::default()
            };
            if let Some(g) = &a.grid {
                o.grid = Some(parse_rational_list(g)?);
            }
            (&a.scale.source, Box::new(move |c: &CoeffVector| commands::delta(c, &o)) as Job)
        }
        Command::Hamiltonian(a) => {
            let o = Options {
                log_q: opt_rational(&a.log_q)?,
                ..Options::default()
            };
            (&a.source, Box::new(move |c: &CoeffVector| commands::hamiltonian_cmd(c, &o)) as Job)
        }
        Command::Eval(a) => {
            let o = Options {
                log_q: opt_rational(&a.scale.log_q)?,
                z: parse_complex_list(&a.z)?,
                interval: a.n.zip(a.s),
                ..Options::default()
            };
            (&a.scale.source, Box::new(move |c: &CoeffVector| commands::eval(c, &o)) as Job)
        }
        Command::Oracle(a) => (a, Box::new(commands::oracle) as Job),
        Command::Certify(a) => (a, Box::new(commands::certify) as Job),
        Command::Reconstruct(_) => return Ok(None),
    }))
}

fn reconstruct(a: &ReconstructArgs) -> Result<Outcome> {
    let (gammas, p1) = match (&a.gamma, &a.hamiltonian) {
        (Some(g), None) => {
            let p1 = a
                .p1
                .as_deref()
                .ok_or_else(|| Error::InvalidInput("--gamma needs --p1".into()))?;
            (parse_rational_list(g)?, parse_rational(p1)?)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            let (g, e0) = commands::steps_from_json(&v)?;
            match &a.p1 {
                Some(p) => (g, parse_rational(p)?),
                None => (g, e0),
            }
        }
        _ => return Err(Error::InvalidInput("give --gamma with --p1, or --hamiltonian".into())),
    };
    commands::reconstruct(&gammas, &p1)
}

fn failed(e: &Error) -> Outcome {
    Outcome {
        json: commands::error_json(e),
        exit: exit_for_error(e),
        summary: format!("error[{}]: {e}", e.code()),
    }
}

/// Everything the command produced: the document, the exit code, and the
/// per-item summaries.
fn execute(cli: &Cli) -> Outcome {
    if let Command::Reconstruct(a) = &cli.command {
        return reconstruct(a).unwrap_or_else(|e| failed(&e));
    }
    let (src, job) = match polynomial_job(&cli.command) {
        Ok(Some(x)) => x,
        Ok(None) => unreachable!("reconstruct handled above"),
        Err(e) => return failed(&e),
    };
    match load(src) {
        Err(e) => failed(&e),
        Ok(Source::Single(c)) => job(&c).unwrap_or_else(|e| failed(&e)),
        Ok(Source::Batch(items)) => {
            let outs: Vec<Outcome> = items
                .par_iter()
                .map(|item| match item {
                    Ok(c) => job(c).unwrap_or_else(|e| failed(&e)),
                    Err(e) => failed(e),
                })
                .collect();
            Outcome {
                exit: outs.iter().map(|o| o.exit).max().unwrap_or(0),
                summary: outs.iter().map(|o| o.summary.as_str()).collect::<Vec<_>>().join("\n"),
                json: Value::Array(outs.into_iter().map(|o| o.json).collect()),
            }
        }
    }
}

fn write_json(path: &Path, v: &Value) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    std::fs::write(path, text)
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code: 0 on-circle / success, 1 fail, 2 degenerate or inconclusive, 3 input
/// error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if shown {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return if shown { 0 } else { 3 };
        }
    };
    let outcome = match cli.workers {
        Some(0) => failed(&Error::InvalidInput("--workers must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => failed(&Error::Internal(format!("thread pool: {e}"))),
        },
        None => execute(&cli),
    };
    if outcome.exit == 3 || outcome.json.get("error").is_some() {
        let _ = writeln!(err, "{}", outcome.summary);
    }
    match &cli.json {
        Some(path) => {
            if let Err(e) = write_json(path, &outcome.json) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return 3;
            }
            let _ = writeln!(out, "{}", outcome.summary);
        }
        None => {
            let text = serde_json::to_string_pretty(&outcome.json).expect("JSON values serialize");
            let _ = writeln!(out, "{text}");
        }
    }
    outcome.exit
}
