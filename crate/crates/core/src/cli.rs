//! Command-line front end.
//!
//! Exit codes: 0 success, 1 audit disagrees with the published table,
//! 2 usage or parse error, 3 a combination post-condition failed, 4 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::audit::{audit_table, AuditConfig, DEFAULT_SEED};
use crate::combine::{combine_traced, verify};
use crate::consts::{AUDIT_TOL, EPS_CLAMP};
use crate::operators::{apply, OperatorId};
use crate::opinion::Opinion;
use crate::plot::{write_plot, PlotError, PlotPoint, PlotSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISCREPANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_IO: i32 = 4;

const AFTER_HELP: &str = "\
Opinions are given as `b,d,u` shorthand, inline JSON, or a path to a JSON file
holding {\"belief\": .., \"disbelief\": .., \"uncertainty\": .., \"base_rate\": ..}.

Exit codes:
  0  success
  1  audit result disagrees with the published table
  2  usage or parse error
  3  a combination result violated its post-conditions
  4  I/O error";

#[derive(Debug, Parser)]
#[command(name = "sl-trust", version, about = "Subjective Logic opinions and trust-confidence combination", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Opinion utilities.
    Opinion {
        #[command(subcommand)]
        action: OpinionAction,
    },
    /// Apply a classical operator: add, sub, mul, div, comul, codiv, discount,
    /// cfuse, afuse, cunfuse, aunfuse.
    Op {
        name: String,
        left: String,
        right: String,
    },
    /// Combine a trustworthiness opinion with a confidence opinion.
    Combine {
        trust: String,
        confidence: String,
        /// Print every intermediate quantity.
        #[arg(long)]
        trace: bool,
    },
    /// Audit the classical operators against the combination requirements.
    Audit(AuditArgs),
    /// Render opinions in the opinion triangle as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Subcommand)]
enum OpinionAction {
    /// Validate and normalize an opinion.
    Validate { opinion: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[arg(long, default_value_t = crate::audit::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, env = "SL_TRUST_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Args)]
struct PlotArgs {
    /// JSON plot specification.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// A point as `label=b,d,u` or `label=b,d,u@color`.
    #[arg(long = "point")]
    points: Vec<String>,
    /// A segment as `b,d,u:b,d,u`.
    #[arg(long = "segment")]
    segments: Vec<String>,
    /// Image width in pixels (at least 100; default 600).
    #[arg(long)]
    width: Option<u32>,
    /// Output SVG path.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

/// Reads an opinion from shorthand, inline JSON or a JSON file.
pub fn parse_opinion_arg(arg: &str) -> Result<Opinion, String> {
    let trimmed = arg.trim();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed).map_err(|e| format!("invalid opinion JSON: {e}"));
    }
    let path = Path::new(trimmed);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        return serde_json::from_str(&text).map_err(|e| format!("{}: invalid opinion JSON: {e}", path.display()));
    }
    trimmed.parse()
}

fn opinion_arg(arg: &str, what: &str) -> Result<Opinion, Failure> {
    parse_opinion_arg(arg).map_err(|e| Failure::usage(format!("{what}: {e}")))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn run_command(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Opinion {
            action: OpinionAction::Validate { opinion },
        } => {
            let o = opinion_arg(&opinion, "opinion")?;
            let report = json!({
                "opinion": o,
                "kind": o.kind(),
                "expectation": o.expectation(),
            });
            emit(out, &to_json(&report))?;
            Ok(EXIT_OK)
        }
        Command::Op { name, left, right } => {
            let op: OperatorId = name.parse().map_err(|e: crate::operators::UnknownOperator| Failure::usage(e.to_string()))?;
            let left = opinion_arg(&left, "left")?;
            let right = opinion_arg(&right, "right")?;
            let text = match apply(op, &left, &right) {
                Ok(w) => to_json(&w),
                Err(u) => to_json(&json!({ "undefined": u.reason })),
            };
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Combine {
            trust,
            confidence,
            trace,
        } => {
            let t = opinion_arg(&trust, "trust")?;
            let c = opinion_arg(&confidence, "confidence")?;
            let tr = combine_traced(&t, &c);
            verify(&t, &tr.result, EPS_CLAMP).map_err(|e| Failure {
                code: EXIT_INVARIANT,
                message: e.to_string(),
            })?;
            let text = if trace { to_json(&tr) } else { to_json(&tr.result) };
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Audit(args) => {
            if args.samples == 0 {
                return Err(Failure::usage("--samples must be at least 1"));
            }
            let cfg = AuditConfig {
                sample_count: args.samples,
                seed: args.seed,
                tolerance: AUDIT_TOL,
            };
            let report = audit_table(&cfg).map_err(|e| Failure::usage(e.to_string()))?;
            let text = match args.format {
                Format::Json => to_json(&report),
                Format::Table => report.to_table(),
            };
            emit(out, text.trim_end())?;
            Ok(if report.matches_published() {
                EXIT_OK
            } else {
                EXIT_DISCREPANT
            })
        }
        Command::Plot(args) => {
            let spec = plot_spec(args)?;
            write_plot(&spec).map_err(|e| match e {
                PlotError::Io { .. } => Failure {
                    code: EXIT_IO,
                    message: e.to_string(),
                },
                other => Failure::usage(other.to_string()),
            })?;
            emit(out, &spec.output_path.display().to_string())?;
            Ok(EXIT_OK)
        }
    }
}

fn plot_spec(args: PlotArgs) -> Result<PlotSpec, Failure> {
    let mut spec = match &args.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure {
                code: EXIT_IO,
                message: format!("{}: {e}", path.display()),
            })?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::usage(format!("{}: invalid plot spec: {e}", path.display())))?
        }
        None => PlotSpec {
            points: vec![],
            segments: vec![],
            width_px: 600,
            output_path: PathBuf::new(),
        },
    };
    for p in &args.points {
        let (label, rest) = p
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("point {p:?}: expected label=b,d,u")))?;
        let (coords, color) = rest.split_once('@').unwrap_or((rest, "black"));
        spec.points.push(PlotPoint {
            label: label.to_string(),
            opinion: opinion_arg(coords, &format!("point {label}"))?,
            color: color.to_string(),
        });
    }
    for s in &args.segments {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Failure::usage(format!("segment {s:?}: expected b,d,u:b,d,u")))?;
        spec.segments
            .push((opinion_arg(a, "segment start")?, opinion_arg(b, "segment end")?));
    }
    if let Some(w) = args.width {
        spec.width_px = w;
    }
    if let Some(out) = args.out {
        spec.output_path = out;
    }
    if spec.output_path.as_os_str().is_empty() {
        return Err(Failure::usage("no output path: pass --out or set output_path in the spec"));
    }
    spec.validate().map_err(|e| Failure::usage(e.to_string()))?;
    Ok(spec)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure {
        code: EXIT_IO,
        message: e.to_string(),
    })
}

/// Runs the CLI with `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match run_command(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
