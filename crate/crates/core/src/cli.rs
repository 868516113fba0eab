//! The `qcyclo` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails
//! or a scan finds a counterexample, 2 for invalid input or I/O trouble.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::classnum::{h_imag, h_imag_8p, h_real};
use crate::cyclotomic::{gauss_decomposition, sn_eval_numeric, EvalPoint};
use crate::error::{Error, Result};
use crate::ntheory::is_prime;
use crate::quadratic::fundamental_unit;
use crate::scan::{run_scan, ScanConfig, ScanKind};
use crate::theorem::{verify, ExactMode, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qcyclo",
    version,
    about = "S_n(i), fundamental units and class numbers"
)]
pub struct Cli {
    /// Working precision floor in bits.
    #[arg(
        long,
        global = true,
        default_value_t = 256,
        env = "QCYCLO_PRECISION_BITS"
    )]
    pub precision_bits: u32,
    /// Worker threads for scans; 0 uses all available cores.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Output file for scans; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Continue a scan from the records already in --out.
    #[arg(long, global = true)]
    pub resume: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the closed form of S_n(i) at one n.
    Verify {
        #[arg(long)]
        n: u64,
        /// Also compare against exact Z[ζ_4n] arithmetic (n ≤ 1000).
        #[arg(long)]
        exact: bool,
    },
    /// Check every n in [min, max], writing JSONL.
    Scan {
        #[arg(long, value_enum)]
        kind: ScanKind,
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
    },
    /// Fundamental unit of a positive fundamental discriminant.
    Unit {
        #[arg(long)]
        disc: u64,
    },
    /// Class number; negative discriminants −n and −8p are supported.
    Classnum {
        #[arg(long, allow_negative_numbers = true)]
        disc: i64,
    },
    /// Numeric S_n at i, −i or 1.
    Eval {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "i", allow_hyphen_values = true)]
        at: EvalPoint,
    },
    /// Gauss's Y_p, Z_p with 4Φ_p = Y_p² − p*Z_p².
    Gauss {
        #[arg(long)]
        p: u64,
    },
}

impl clap::builder::ValueParserFactory for EvalPoint {
    type Parser = clap::builder::ValueParser;

    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<EvalPoint>())
    }
}

/// Parses `args` (program name first) and runs, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

pub fn main_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("json serializes");
    writeln!(out, "{text}").map_err(|e| Error::InvalidInput(format!("write: {e}")))
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Verify { n, exact } => {
            let opts = VerifyOptions {
                precision_bits: cli.precision_bits,
                exact: if *exact {
                    ExactMode::Always
                } else {
                    ExactMode::Auto
                },
                numeric: true,
            };
            let report = verify(*n, &opts)?;
            let mut value = serde_json::to_value(&report).expect("report serializes");
            let status = if report.passed() { "ok" } else { "fail" };
            value["status"] = json!(status);
            emit(out, &value)?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Scan { kind, min, max } => {
            let cfg = ScanConfig {
                jobs: cli.jobs,
                precision_bits: cli.precision_bits,
                ..ScanConfig::new(*kind, *min, *max)
            };
            let summary = run_scan(&cfg, cli.out.as_deref(), cli.resume)?;
            let _ = writeln!(
                err,
                "{} scan [{min}, {max}]: {} new records, {} failures, {} skipped",
                kind.as_str(),
                summary.emitted,
                summary.failures,
                summary.skipped
            );
            Ok(summary.exit_code())
        }
        Command::Unit { disc } => {
            let unit = fundamental_unit(*disc)?;
            emit(
                out,
                &json!({
                    "disc": disc,
                    "radicand": unit.radicand(),
                    "u": unit.a().to_string(),
                    "v": unit.b().to_string(),
                    "den": unit.denominator(),
                    "norm": unit.norm().to_i32(),
                    "display": unit.to_string(),
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::Classnum { disc } => {
            let (h, method) = classnum(*disc)?;
            emit(out, &json!({ "disc": disc, "h": h, "method": method }))?;
            Ok(EXIT_OK)
        }
        Command::Eval { n, at } => {
            let prec = cli.precision_bits;
            let product = sn_eval_numeric(*n, *at, prec)?;
            let digits = (prec as f64 * std::f64::consts::LOG10_2).floor() as usize;
            let (re, im) = product.value.to_decimal(digits);
            emit(
                out,
                &json!({
                    "n": n,
                    "at": match at {
                        EvalPoint::I => "i",
                        EvalPoint::MinusI => "-i",
                        EvalPoint::One => "1",
                    },
                    "precision_bits": prec,
                    "re": re,
                    "im": im,
                    "factors": product.factors,
                    "error_bound_log2": product.error_bound_log2(*n),
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::Gauss { p } => {
            let g = gauss_decomposition(*p)?;
            let coeffs = |v: &[rug::Integer]| -> Vec<Value> {
                v.iter()
                    .map(|c| match c.to_i64() {
                        Some(x) => json!(x),
                        None => json!(c.to_string()),
                    })
                    .collect()
            };
            emit(
                out,
                &json!({
                    "p": p,
                    "p_star": g.p_star(),
                    "y": coeffs(&g.y),
                    "z": coeffs(&g.z),
                    "identity": g.identity_holds(),
                }),
            )?;
            Ok(if g.identity_holds() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}

fn classnum(disc: i64) -> Result<(u64, &'static str)> {
    if disc > 0 {
        let d = disc as u64;
        let unit = fundamental_unit(d)?;
        return Ok((h_real(d, &unit)?, "log-sine product"));
    }
    let m = disc.unsigned_abs();
    if m.is_multiple_of(8) && is_prime(m / 8) && (m / 8) % 8 == 7 {
        return Ok((h_imag_8p(m / 8)?, "residue count on (p/8, 3p/8)"));
    }
    if m % 4 == 3 {
        return Ok((h_imag(m)?, "residue sum on (0, n/2)"));
    }
    Err(Error::InvalidInput(format!(
        "negative discriminants must be −n with squarefree n ≡ 3 (mod 4) or −8p with p ≡ 7 (mod 8), got {disc}"
    )))
}
