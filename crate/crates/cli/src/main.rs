//! Command-line surface for the exact Wilf-Zeilberger kernel.
//!
//! Five commands cover the pipeline:
//!
//! ```text
//! verify     check a (term, certificate) pair against the WZ identity
//! discover   search for a certificate by bounded-degree ansatz
//! telescope  compare both sides of the telescoped row sum
//! prove      replay the whole derivation at one (m, n)
//! selftest   run the randomized kernel suites and identity grids
//! ```
//!
//! The exit status is the machine-readable verdict and is never conflated:
//! 0 means the mathematical claim checked out, 1 means it failed (nonzero
//! residual, missing certificate, failing step or suite), 2 means the
//! invocation itself was unusable (bad flags, parse errors, poles hit
//! during evaluation, I/O trouble). Human-readable text goes to standard
//! output by default; --json switches to a stable JSON rendering that is
//! bit-identical across identical invocations.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use wzkit_core::discovery::{default_ansatz, discover};
use wzkit_core::dsl::{compile_term, parse_cert, parse_term};
use wzkit_core::rational::{parse_rational, rat};
use wzkit_core::selftest::{run_all, SelftestConfig, SuiteReport, DEFAULT_SEED};
use wzkit_core::wz::{build_proof_trace, chaundy_bullard_pair, telescope_check, verify_pair};
use wzkit_core::{ArithError, HyperTerm, RatPoint, WZPair, WzError};

#[derive(Parser)]
#[command(name = "wzkit", version, about = "Exact Wilf-Zeilberger pair toolkit")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a certificate witnesses the WZ identity for a term
    Verify {
        /// Hypergeometric term, e.g. "binom(n+k,k) * x^k * (1-x)^(n+1)"
        #[arg(long, allow_hyphen_values = true)]
        term: String,
        /// Rational certificate, e.g. "-k/(n+1)"
        #[arg(long, allow_hyphen_values = true)]
        cert: String,
    },
    /// Search for a certificate with a bounded-degree numerator
    Discover {
        /// Hypergeometric term to find a certificate for
        #[arg(long, allow_hyphen_values = true)]
        term: String,
        /// Total degree bound of the numerator ansatz
        #[arg(long, default_value_t = 2)]
        deg: u32,
        /// Shift span of the denominator factors in k
        #[arg(long, default_value_t = 0)]
        span: u32,
    },
    /// Compare both sides of the telescoped row sum at one (m, n)
    Telescope {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Evaluate at x = p/q instead of comparing symbolically
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Term source; defaults to the built-in pair
        #[arg(long, requires = "cert", allow_hyphen_values = true)]
        term: Option<String>,
        /// Certificate source; defaults to the built-in pair
        #[arg(long, requires = "term", allow_hyphen_values = true)]
        cert: Option<String>,
    },
    /// Replay every step of the derivation at one (m, n)
    Prove {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Also write the JSON trace to this path
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run the randomized kernel suites and the identity grids
    Selftest {
        /// Upper bound of the (m, n) grids
        #[arg(long, default_value_t = 12)]
        max: u32,
        /// Seed for the randomized suites
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Anything that makes the invocation unusable, as opposed to a checked
/// claim coming out false. Always maps to exit status 2.
#[derive(Debug)]
enum CliError {
    Input(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(out, "{msg}"),
            CliError::Io(e) => write!(out, "{e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<WzError> for CliError {
    fn from(e: WzError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Dispatch; Ok(passed) carries the mathematical verdict.
fn run(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Verify { term, cert } => cmd_verify(term, cert, cli.json),
        Command::Discover { term, deg, span } => cmd_discover(term, *deg, *span, cli.json),
        Command::Telescope {
            m,
            n,
            x,
            term,
            cert,
        } => cmd_telescope(
            *m,
            *n,
            x.as_deref(),
            term.as_deref(),
            cert.as_deref(),
            cli.json,
        ),
        Command::Prove { m, n, trace } => cmd_prove(*m, *n, trace.as_deref(), cli.json),
        Command::Selftest { max, seed } => cmd_selftest(*max, *seed, cli.json),
    }
}

/// Parse and compile a term source, labelling errors with the flag name.
fn term_from_src(src: &str) -> Result<HyperTerm, CliError> {
    let ast = parse_term(src).map_err(|e| CliError::Input(format!("--term: {e}")))?;
    compile_term(&ast).map_err(|e| CliError::Input(format!("--term: {e}")))
}

fn print_json<T: Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("report types serialize");
    println!("{text}");
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    term: String,
    cert: String,
    residual: String,
    valid: bool,
}

fn cmd_verify(term_src: &str, cert_src: &str, json: bool) -> Result<bool, CliError> {
    let f = term_from_src(term_src)?;
    let r = parse_cert(cert_src).map_err(|e| CliError::Input(format!("--cert: {e}")))?;
    let residual = verify_pair(&f, &r)?;
    let valid = residual.is_zero();
    if json {
        print_json(&VerifyReport {
            command: "verify",
            term: term_src.to_string(),
            cert: cert_src.to_string(),
            residual: residual.to_string(),
            valid,
        });
    } else {
        println!("residual: {residual}");
        println!("verdict: {}", if valid { "pass" } else { "fail" });
    }
    Ok(valid)
}

#[derive(Serialize)]
struct DiscoverReport {
    command: &'static str,
    term: String,
    degree_bound: u32,
    shift_span: u32,
    certificate: Option<String>,
    found: bool,
}

fn cmd_discover(term_src: &str, deg: u32, span: u32, json: bool) -> Result<bool, CliError> {
    let f = term_from_src(term_src)?;
    let ansatz = default_ansatz(&f, deg, span);
    let outcome = discover(&f, &ansatz);
    if json {
        print_json(&DiscoverReport {
            command: "discover",
            term: term_src.to_string(),
            degree_bound: deg,
            shift_span: span,
            certificate: outcome.as_ref().ok().map(|r| r.to_string()),
            found: outcome.is_ok(),
        });
    } else {
        match &outcome {
            Ok(r) => println!("certificate: {r}"),
            Err(e) => println!("{e}"),
        }
    }
    Ok(outcome.is_ok())
}

#[derive(Serialize)]
struct TelescopeReport {
    command: &'static str,
    m: u32,
    n: u32,
    x: Option<String>,
    lhs: String,
    rhs: String,
    equal: bool,
}

fn cmd_telescope(
    m: u32,
    n: u32,
    x: Option<&str>,
    term_src: Option<&str>,
    cert_src: Option<&str>,
    json: bool,
) -> Result<bool, CliError> {
    let pair = match (term_src, cert_src) {
        (None, None) => chaundy_bullard_pair(),
        (Some(t), Some(c)) => {
            let f = term_from_src(t)?;
            let r = parse_cert(c).map_err(|e| CliError::Input(format!("--cert: {e}")))?;
            match WZPair::new(f, r) {
                Ok(pair) => pair,
                Err(e) => {
                    // a non-pair is a refuted claim, not a usage error
                    println!("{e}");
                    return Ok(false);
                }
            }
        }
        // clap enforces the pairing of --term and --cert
        _ => unreachable!("flag dependency"),
    };
    let sides = telescope_check(&pair, m, n)?;
    let (lhs, rhs) = match x {
        None => (sides.lhs.to_string(), sides.rhs.to_string()),
        Some(src) => {
            let xv = parse_rational(src)
                .ok_or_else(|| CliError::Input(format!("--x: not a rational literal: {src}")))?;
            let at = RatPoint::new(rat(0), rat(0), xv);
            let lv = sides
                .lhs
                .eval(&at)
                .ok_or_else(|| CliError::Input(format!("pole at x = {src}")))?;
            let rv = sides
                .rhs
                .eval(&at)
                .ok_or_else(|| CliError::Input(format!("pole at x = {src}")))?;
            (lv.to_string(), rv.to_string())
        }
    };
    let equal = lhs == rhs;
    if json {
        print_json(&TelescopeReport {
            command: "telescope",
            m,
            n,
            x: x.map(str::to_string),
            lhs,
            rhs,
            equal,
        });
    } else {
        println!("lhs: {lhs}");
        println!("rhs: {rhs}");
        println!("verdict: {}", if equal { "pass" } else { "fail" });
    }
    Ok(equal)
}

fn cmd_prove(
    m: u32,
    n: u32,
    trace_path: Option<&std::path::Path>,
    json: bool,
) -> Result<bool, CliError> {
    let trace = build_proof_trace(m, n)?;
    if let Some(path) = trace_path {
        let mut text = serde_json::to_string_pretty(&trace).expect("trace serializes");
        text.push('\n');
        fs::write(path, text)?;
    }
    if json {
        print_json(&trace);
    } else {
        println!("m: {m}");
        println!("n: {n}");
        for (name, ok) in trace.steps() {
            println!("{name}: {}", if ok { "pass" } else { "fail" });
        }
        println!("proof: {}", if trace.valid { "valid" } else { "invalid" });
    }
    Ok(trace.valid)
}

#[derive(Serialize)]
struct SelftestReport {
    command: &'static str,
    max_grid: u32,
    seed: u64,
    cases_per_suite: u32,
    suites: Vec<SuiteLine>,
    passed: bool,
}

#[derive(Serialize)]
struct SuiteLine {
    name: String,
    cases: u32,
    failures: Vec<String>,
}

fn cmd_selftest(max: u32, seed: u64, json: bool) -> Result<bool, CliError> {
    let config = SelftestConfig {
        max_grid: max,
        seed,
        ..SelftestConfig::default()
    };
    let started = Instant::now();
    let reports = run_all(&config);
    let elapsed = started.elapsed();
    let passed = reports.iter().all(SuiteReport::passed);
    if json {
        // no runtime field: identical invocations stay bit-identical
        print_json(&SelftestReport {
            command: "selftest",
            max_grid: config.max_grid,
            seed: config.seed,
            cases_per_suite: config.cases,
            suites: reports
                .iter()
                .map(|r| SuiteLine {
                    name: r.name.to_string(),
                    cases: r.cases,
                    failures: r.failures.clone(),
                })
                .collect(),
            passed,
        });
    } else {
        println!("{:<34} {:>6} {:>9}", "suite", "cases", "failures");
        for r in &reports {
            println!("{:<34} {:>6} {:>9}", r.name, r.cases, r.failures.len());
            for failure in &r.failures {
                println!("    {failure}");
            }
        }
        let ok = reports.iter().filter(|r| r.passed()).count();
        println!("suites passed: {ok}/{}", reports.len());
        println!("total runtime: {elapsed:.2?}");
        println!("verdict: {}", if passed { "pass" } else { "fail" });
    }
    Ok(passed)
}
