//! The `tropcon` command-line tool.
//!
//! Exit codes: 0 contained / success, 1 usage error, 2 invalid input,
//! 3 not contained (or oracle counterexample).

mod report;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::containment::{check_containment_with, CheckOptions, Verdict};
use crate::error::Error;
use crate::geometry::newton_polyhedron;
use crate::oracle::{oracle_check, OracleVerdict};
use crate::poly::{max_variable_index, ExponentMode, TropicalPolynomial};

pub use report::{NewtonJson, OracleJson, ReportJson};
use svg::{PlotError, Viewport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_CONTAINED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tropcon",
    version,
    about = "Decide containment of tropical hypersurfaces"
)]
pub struct RunConfig {
    /// Variable count for text-format inputs (default: largest index used).
    #[arg(long, global = true)]
    pub nvars: Option<usize>,

    /// Accept negative exponents.
    #[arg(long, global = true)]
    pub relaxed: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether Trop(f) is contained in Trop(g).
    Check {
        f: PathBuf,
        g: PathBuf,
        /// Search for a point of Trop(f) outside Trop(g) on failure.
        #[arg(long)]
        witness: bool,
        /// Report every failing vertex instead of the first.
        #[arg(long)]
        all: bool,
        /// Write the report here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the vertices and facets of the Newton polyhedron.
    Newton {
        f: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check containment by sampling, independently of the criterion.
    Oracle {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw the tropical curve(s) and Newton subdivision as SVG.
    Plot {
        f: PathBuf,
        g: Option<PathBuf>,
        /// xmin,ymin,xmax,ymax
        #[arg(long)]
        viewport: Option<String>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Plot(#[from] PlotError),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Reads a polynomial in either the structured JSON or the text format.
pub fn parse_input(
    text: &str,
    nvars: Option<usize>,
    mode: ExponentMode,
) -> crate::Result<TropicalPolynomial> {
    if text.trim_start().starts_with('{') {
        let f = TropicalPolynomial::from_json(text, mode)?;
        if let Some(n) = nvars.filter(|&n| n != f.n()) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.n(),
            });
        }
        return Ok(f);
    }
    let n = match nvars {
        Some(n) => n,
        None => max_variable_index(text)?.max(1),
    };
    TropicalPolynomial::parse_with_mode(text, n, mode)
}

fn load(path: &Path, cfg: &RunConfig) -> Result<TropicalPolynomial, CliError> {
    let mode = if cfg.relaxed {
        ExponentMode::Integer
    } else {
        ExponentMode::Natural
    };
    parse_input(&read(path)?, cfg.nvars, mode).map_err(|source| CliError::Input {
        path: path.to_owned(),
        source,
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Result<(), CliError> {
    match target {
        Some(path) => write_file(path, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn execute(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cfg.command {
        Command::Check {
            f,
            g,
            witness,
            all,
            json,
        } => {
            let (f, g) = (load(f, cfg)?, load(g, cfg)?);
            let options = CheckOptions {
                witness: *witness,
                all_failing: *all,
            };
            let report = check_containment_with(&f, &g, options)?;
            emit(
                out,
                json.as_deref(),
                &to_json(&ReportJson::new(&report, *all)),
            )?;
            Ok(match report.verdict {
                Verdict::Contained => EXIT_OK,
                Verdict::NotContained => EXIT_NOT_CONTAINED,
            })
        }
        Command::Newton { f, json } => {
            let f = load(f, cfg)?;
            let p = newton_polyhedron(&f);
            emit(out, json.as_deref(), &to_json(&NewtonJson::new(&p)))?;
            Ok(EXIT_OK)
        }
        Command::Oracle {
            f,
            g,
            samples,
            seed,
        } => {
            let (f, g) = (load(f, cfg)?, load(g, cfg)?);
            let verdict = oracle_check(&f, &g, *samples, *seed)?;
            emit(
                out,
                None,
                &to_json(&OracleJson::new(&verdict, f.n(), *samples, *seed)),
            )?;
            Ok(match verdict {
                OracleVerdict::AgreesContained => EXIT_OK,
                OracleVerdict::Counterexample(_) => EXIT_NOT_CONTAINED,
            })
        }
        Command::Plot {
            f,
            g,
            viewport,
            output,
        } => {
            let viewport = viewport
                .as_deref()
                .map(str::parse::<Viewport>)
                .transpose()?;
            let f = load(f, cfg)?;
            let g = g.as_deref().map(|p| load(p, cfg)).transpose()?;
            let doc = svg::render(&f, g.as_ref(), viewport)?;
            write_file(output, &doc)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the tool on explicit arguments (the first one is the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cfg, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
