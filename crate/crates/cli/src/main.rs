mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hoopkit::normalvalued::ClaimId;

/// Workbench for finite pseudo hoops.
#[derive(Debug, Parser)]
#[command(name = "hoopkit", version)]
pub struct Cli {
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Bound for "for all n" checks (default: the algebra size).
    #[arg(long, global = true)]
    pub nmax: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an algebra file and report axiom violations.
    Check { file: PathBuf },
    /// Print the class flags.
    Classify { file: PathBuf },
    /// List filters, with optional prime, value, lattice and perp analyses.
    Filters(FiltersArgs),
    /// Riesz decomposition witnesses.
    Rdp(RdpArgs),
    /// Decide normal-valuedness.
    NormalValued {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Check one claim from the catalogue exhaustively.
    CheckClaim {
        file: PathBuf,
        #[arg(long)]
        claim: ClaimId,
    },
    /// Build, verify or export the chain representation.
    Holland(HollandArgs),
    /// Generate an algebra or sample a cone.
    Gen(GenArgs),
    /// Enumerate all pseudo hoops of a given size.
    Enumerate(EnumerateArgs),
    /// Search small basic algebras for x²⊙y² ≤ y⊙x without normal-valuedness.
    Q2Search {
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
}

#[derive(Debug, Args)]
pub struct FiltersArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub primes: bool,
    #[arg(long, value_name = "G")]
    pub values: Option<usize>,
    #[arg(long)]
    pub minimal_primes: bool,
    #[arg(long)]
    pub lattice: bool,
    /// Comma-separated elements X; prints X⊥.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub perp: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct RdpArgs {
    pub file: PathBuf,
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"])]
    pub witness: Option<Vec<usize>>,
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Equational,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct HollandArgs {
    pub file: PathBuf,
    /// Print the representation in this format.
    #[arg(long, value_enum)]
    pub out: Option<ExportKind>,
    #[arg(long)]
    pub verify: bool,
    /// Element whose map is drawn in dot output.
    #[arg(long)]
    pub element: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    /// Write the algebra here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Use the plain-text table format.
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    Lukasiewicz { n: usize },
    Godel { n: usize },
    Product { a: PathBuf, b: PathBuf },
    Osum { a: PathBuf, b: PathBuf },
    /// Sample identities on the negative cone of ℤ^k.
    Cone {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = ConeOrder::Pointwise)]
        order: ConeOrder,
        #[arg(long, default_value_t = 1000)]
        sample: usize,
        #[arg(long = "box", default_value_t = 20)]
        bound: i64,
        /// Properties to sample (default: all).
        #[arg(long, value_delimiter = ',')]
        property: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConeOrder {
    Pointwise,
    Lex,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub size: usize,
    /// Every naturally labelled algebra instead of one per isomorphism class.
    #[arg(long)]
    pub labelled: bool,
    /// Keep only algebras with these flags (e.g. basic, commutative).
    #[arg(long, value_delimiter = ',')]
    pub require: Vec<String>,
    #[arg(long)]
    pub limit: Option<usize>,
    /// Directory to write one JSON file per algebra.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (bytes, code) = commands::run(&cli);
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(&bytes).and_then(|()| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
