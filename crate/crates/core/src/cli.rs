//! The `vcb` command line.
//!
//! ```text
//! vcb bounds eval  --d 0.25 --delta 0.1 [--methods a,b] [--out FILE --format csv|json]
//! vcb bounds sweep (--d X | --delta X) --grid start:stop:step [--methods a,b] [--out FILE]
//! vcb oracle vcdim|dist|search|gv|kk <code source> [...]
//! vcb oracle props [--seed S] [--budget B]
//! ```
//!
//! Exit codes: 0 success, 1 a property check failed, 2 invalid input,
//! 3 unwritable output, 4 search budget exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;

use crate::curve::{self, Axis, BoundCurve, Grid, OutputFormat, SweepRequest};
use crate::numeric::ToleranceConfig;
use crate::oracle::{self, props, BinaryCode};
use crate::upper::{BoundQuery, Method};
use crate::Error;

/// Environment variable overriding the default absolute tolerance.
pub const TOL_ENV: &str = "VCB_TOL";

#[derive(Debug, Parser)]
#[command(name = "vcb", version, about = "Rate bounds and exact oracles for binary codes with bounded VC-dimension")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate asymptotic rate bounds.
    Bounds {
        #[command(subcommand)]
        command: BoundsCommand,
    },
    /// Run exact finite-length oracles.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Comma-separated subset of mrrw,sauer,haussler,shortening,cwc,markov.
    #[arg(long, default_value = "mrrw,sauer,haussler,shortening,cwc,markov")]
    methods: String,
    /// Write the curve to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
    /// Absolute tolerance of the optimizers.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum BoundsCommand {
    /// All requested bounds at a single (d, delta).
    Eval {
        #[arg(long)]
        d: f64,
        #[arg(long)]
        delta: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Bounds along a grid with d or delta held fixed.
    Sweep {
        #[arg(long, conflicts_with = "delta", required_unless_present = "delta")]
        d: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        grid: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct CodeSource {
    /// File of hexadecimal words; needs --n.
    #[arg(long, requires = "n", group = "source")]
    code: Option<PathBuf>,
    /// Word length for --code.
    #[arg(long)]
    n: Option<u32>,
    /// Full cube of length N.
    #[arg(long, value_name = "N", group = "source")]
    cube: Option<u32>,
    /// All words of length N and weight K.
    #[arg(long, num_args = 2, value_names = ["N", "K"], group = "source")]
    constant_weight: Option<Vec<u32>>,
    /// All words of length N with at most K switches.
    #[arg(long, num_args = 2, value_names = ["N", "K"], group = "source")]
    switch_bounded: Option<Vec<u32>>,
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// VC-dimension of a code.
    Vcdim {
        #[command(flatten)]
        source: CodeSource,
    },
    /// Minimum distance of a code.
    Dist {
        #[command(flatten)]
        source: CodeSource,
    },
    /// Exact largest code with the given distance inside the ambient set.
    Search {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        dist: u32,
        #[arg(long)]
        vc_cap: Option<u32>,
        #[arg(long, default_value_t = oracle::search::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Greedy code with the given distance inside the ambient set.
    Gv {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        dist: u32,
    },
    /// Kolesnik–Krachkovsky ratio |S|^2 / (4 |B_S(dist - 1)|).
    Kk {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        dist: u32,
    },
    /// Run the finite-length property suite.
    Props {
        #[arg(long, default_value_t = props::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
    },
}

/// Exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const UNWRITABLE: i32 = 3;
    pub const BUDGET: i32 = 4;
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } => exit::UNWRITABLE,
        Error::BudgetExceeded { .. } => exit::BUDGET,
        Error::Domain { .. } | Error::InvalidRequest(_) | Error::InvalidCode(_) => exit::INVALID,
        _ => exit::FAILED,
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INVALID } else { exit::OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "vcb: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    match cmd {
        Command::Bounds { command } => bounds(command, out, err),
        Command::Oracle { command } => oracle_cmd(command, out),
    }
}

fn tolerance(flag: Option<f64>) -> crate::Result<ToleranceConfig> {
    let defaults = ToleranceConfig::default();
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                Error::InvalidRequest(format!("{TOL_ENV}=`{v}` is not a number"))
            })?,
            Err(_) => defaults.abs_tol,
        },
    };
    ToleranceConfig::new(tol, defaults.grid_points, defaults.max_refinements)
}

fn parse_methods(s: &str) -> crate::Result<Vec<Method>> {
    let methods = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<crate::Result<Vec<Method>>>()?;
    if methods.is_empty() {
        return Err(Error::InvalidRequest("no methods requested".into()));
    }
    Ok(methods)
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn write_file(path: &Path, contents: &str) -> crate::Result<()> {
    std::fs::write(path, contents).map_err(|e| io_err(path, e))
}

fn stdout_err(e: std::io::Error) -> Error {
    io_err(Path::new("<stdout>"), e)
}

fn encode<R: serde::Serialize>(
    format: OutputFormat,
    request: &R,
    cfg: &ToleranceConfig,
    curve: &BoundCurve,
) -> String {
    match format {
        OutputFormat::Csv => curve.to_csv(),
        OutputFormat::Json => curve::to_json(request, cfg, curve),
    }
}

fn bounds(cmd: BoundsCommand, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    match cmd {
        BoundsCommand::Eval { d, delta, common } => {
            let cfg = tolerance(common.tol)?;
            let format: OutputFormat = common.format.parse()?;
            let methods = parse_methods(&common.methods)?;
            let q = BoundQuery::new(d, delta)?;
            let curve = curve::evaluate_point(&q, &methods, &cfg)?;
            writeln!(out, "d = {}  delta = {}", q.d, q.delta).map_err(stdout_err)?;
            for r in curve.rows() {
                writeln!(out, "{:<12}{:.12}", r.method.name(), r.rate).map_err(stdout_err)?;
            }
            if let Some(path) = &common.out {
                write_file(path, &encode(format, &q, &cfg, &curve))?;
            }
            Ok(exit::OK)
        }
        BoundsCommand::Sweep {
            d,
            delta,
            grid,
            common,
        } => {
            let cfg = tolerance(common.tol)?;
            let format: OutputFormat = common.format.parse()?;
            let methods = parse_methods(&common.methods)?;
            let (axis, value) = match (d, delta) {
                (Some(d), None) => (Axis::D, d),
                (None, Some(delta)) => (Axis::Delta, delta),
                _ => return Err(Error::InvalidRequest("exactly one of --d, --delta".into())),
            };
            let req = SweepRequest::new(axis, value, grid.parse::<Grid>()?, methods)?;
            let result = curve::sweep(&req, &cfg)?;
            if result.omitted > 0 {
                writeln!(
                    err,
                    "warning: {} (point, method) pairs outside [0, 1/2] omitted",
                    result.omitted
                )
                .map_err(stdout_err)?;
            }
            let text = encode(format, &req, &cfg, &result.curve);
            match &common.out {
                Some(path) => write_file(path, &text)?,
                None => out.write_all(text.as_bytes()).map_err(stdout_err)?,
            }
            Ok(exit::OK)
        }
    }
}

fn load_code(src: &CodeSource) -> crate::Result<BinaryCode> {
    if let Some(path) = &src.code {
        let n = src.n.ok_or_else(|| Error::InvalidRequest("--code needs --n".into()))?;
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidRequest(format!("cannot read {}: {e}", path.display()))
        })?;
        return BinaryCode::parse_hex(n, &text);
    }
    if let Some(n) = src.cube {
        return BinaryCode::cube(n);
    }
    if let Some(v) = &src.constant_weight {
        return oracle::constant_weight_set(v[0], v[1]);
    }
    if let Some(v) = &src.switch_bounded {
        return oracle::switch_bounded_set(v[0], v[1]);
    }
    Err(Error::InvalidRequest(
        "one of --code, --cube, --constant-weight, --switch-bounded is required".into(),
    ))
}

fn print_code(out: &mut dyn Write, c: &BinaryCode) -> crate::Result<()> {
    for &w in c.words() {
        writeln!(out, "  {}  {w:#x}", c.format_word(w)).map_err(stdout_err)?;
    }
    Ok(())
}

fn oracle_cmd(cmd: OracleCommand, out: &mut dyn Write) -> crate::Result<i32> {
    match cmd {
        OracleCommand::Vcdim { source } => {
            let c = load_code(&source)?;
            writeln!(out, "{}", oracle::vc_dimension(&c)).map_err(stdout_err)?;
        }
        OracleCommand::Dist { source } => {
            let c = load_code(&source)?;
            writeln!(out, "{}", oracle::min_distance(&c)?).map_err(stdout_err)?;
        }
        OracleCommand::Search {
            source,
            dist,
            vc_cap,
            budget,
        } => {
            let c = load_code(&source)?;
            let best = oracle::max_code_exact(&c, dist, vc_cap, budget)?;
            writeln!(out, "{}", best.len()).map_err(stdout_err)?;
            print_code(out, &best)?;
        }
        OracleCommand::Gv { source, dist } => {
            let c = load_code(&source)?;
            let g = oracle::gv_greedy(&c, dist);
            writeln!(out, "{}", g.len()).map_err(stdout_err)?;
            print_code(out, &g)?;
        }
        OracleCommand::Kk { source, dist } => {
            let c = load_code(&source)?;
            let r = oracle::kk_bound(&c, dist)?;
            let approx = r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN);
            writeln!(out, "{}/{} ~ {approx:.6}", r.numer(), r.denom()).map_err(stdout_err)?;
        }
        OracleCommand::Props { seed, budget } => {
            let outcomes = props::run_all(&props::PropsConfig { seed, budget });
            let mut all = true;
            for o in &outcomes {
                all &= o.passed();
                writeln!(
                    out,
                    "{} {:<22} checked={} violations={} undecided={}{}",
                    if o.passed() { "PASS" } else { "FAIL" },
                    o.name,
                    o.checked,
                    o.violations,
                    o.undecided,
                    o.first_violation
                        .as_ref()
                        .map(|v| format!(" first: {v}"))
                        .unwrap_or_default()
                )
                .map_err(stdout_err)?;
            }
            return Ok(if all { exit::OK } else { exit::FAILED });
        }
    }
    Ok(exit::OK)
}
