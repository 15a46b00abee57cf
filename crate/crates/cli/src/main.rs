mod commands;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::{emit, Report};
use qsp_core::Error;

/// Quasi-subfield polynomials: verification, search, families, bounds and an ECDLP demo.
#[derive(Parser, Debug, Serialize)]
#[command(name = "qsp", version)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for search and enumeration (default: all cores)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Seed for every randomised step
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "subcommand")]
pub enum Command {
    /// Check whether a linearized or binomial QSP splits over F_{p^n}
    Verify(VerifyArgs),
    /// Enumerate canonical split-complete QSPs with F_p coefficients
    Search(SearchArgs),
    /// Build a member of one of the explicit families
    Families(FamilyArgs),
    /// Certify the extension-degree lower bound for (n', l) symbolically
    Bound(BoundArgs),
    /// Divisors of X^n - 1 over F_2 for Mersenne n = 2^k - 1
    Mersenne(MersenneArgs),
    /// ECDLP complexity exponent for a given beta
    Estimate(EstimateArgs),
    /// Index calculus with a QSP factor base on a small curve
    EcdlpDemo(DemoArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: usize,
    /// f over F_p, e.g. "X^3+X+1" or "[1,1,0,1] mod 2"
    #[arg(long, conflicts_with = "mult")]
    pub f: Option<String>,
    /// Verify X^{p^{n'}} - X^a instead
    #[arg(long, requires_all = ["a", "nprime"])]
    pub mult: bool,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub nprime: Option<u32>,
    /// Accept near-splitting with at least this fraction of p^{n'} roots
    #[arg(long, default_value_t = 1.0)]
    pub min_fraction: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub nprime_max: Option<usize>,
    /// signed, binary, all, or a list such as "0,1,2"
    #[arg(long)]
    pub coeffs: Option<String>,
    /// Largest beta kept, as "num/den" or an integer
    #[arg(long, default_value = "1")]
    pub beta_max: String,
    /// Run the table scope (p = 2, 3, 5, 7) and compare with the vendored transcription
    #[arg(long)]
    pub table_b1: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyType {
    T1,
    T1bis,
    T2,
    T3,
    M1,
    M2,
    M3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseType {
    T1,
    T2,
}

#[derive(Args, Debug, Serialize)]
pub struct FamilyArgs {
    #[arg(long = "type", value_enum)]
    pub kind: FamilyType,
    #[arg(long)]
    pub p: Option<u64>,
    /// q = p^r
    #[arg(long)]
    pub r: Option<u32>,
    /// Type 1 length index, or Type 2 constant term
    #[arg(long)]
    pub a: Option<u64>,
    #[arg(long)]
    pub d: Option<u32>,
    /// Base family whose inverse t3 builds
    #[arg(long, value_enum)]
    pub of: Option<BaseType>,
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Args, Debug, Serialize)]
pub struct BoundArgs {
    #[arg(long)]
    pub nprime: usize,
    #[arg(long)]
    pub ell: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct MersenneArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 7)]
    pub ell_max: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct EstimateArgs {
    #[arg(long, required_unless_present = "table")]
    pub beta: Option<f64>,
    #[arg(long, default_value_t = qsp_core::ecdlp::DEFAULT_C)]
    pub c: f64,
    #[arg(long, conflicts_with = "optimal")]
    pub m: Option<u32>,
    /// Smallest m within --tol of the m -> infinity exponent
    #[arg(long)]
    pub optimal: bool,
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    /// The published exponent table
    #[arg(long, conflicts_with_all = ["beta", "m", "optimal"])]
    pub table: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Semaev,
    Direct,
}

#[derive(Args, Debug, Serialize)]
pub struct DemoArgs {
    #[arg(long, default_value_t = 5)]
    pub p: u64,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value = "X^2+X+1")]
    pub f: String,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = Mode::Semaev)]
    pub mode: Mode,
    #[arg(long, default_value_t = 1 << 20)]
    pub trials_cap: u64,
    #[arg(long, default_value_t = 20)]
    pub instances: usize,
    #[arg(long, default_value_t = 10)]
    pub extra_relations: usize,
}

const EXIT_VERIFICATION: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_USAGE: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Verification(_) => EXIT_VERIFICATION,
        Error::CapExceeded(_) => EXIT_CAP,
        Error::Usage(_) | Error::Domain(_) | Error::Parse { .. } => EXIT_USAGE,
    }
}

fn dispatch(cli: &Cli) -> qsp_core::Result<Report> {
    match &cli.command {
        Command::Verify(a) => commands::verify(a),
        Command::Search(a) => commands::search(a),
        Command::Families(a) => commands::families(a),
        Command::Bound(a) => commands::bound(a),
        Command::Mersenne(a) => commands::mersenne(a),
        Command::Estimate(a) => commands::estimate(a),
        Command::EcdlpDemo(a) => commands::ecdlp_demo(a, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let start = Instant::now();
    match dispatch(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&cli, &report, start.elapsed()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(report.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let (Error::Parse { pos, .. }, Some(src)) = (&e, commands::parsed_text(&cli)) {
                eprintln!("  {src}");
                eprintln!("  {}^", " ".repeat(*pos));
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
