use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leastprime::frobscan::DEFAULT_BOUND;
use leastprime::primes::DEFAULT_SIEVE_LIMIT;
use leastprime::series::DEFAULT_EPS;

#[derive(Debug, Parser)]
#[command(
    name = "leastprime",
    version,
    about = "Average least primes in Frobenius classes of S_n-fields"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Primes are sieved up to this bound for series and Monte Carlo walks.
    #[arg(long, global = true, default_value_t = DEFAULT_SIEVE_LIMIT)]
    pub sieve_limit: u64,

    /// Worker threads (0 picks the number of cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a predicted average from the local model.
    Constants(ConstantsArgs),
    /// Compute n_{K,C} / N_{K,C} for fields listed in a file.
    Scan(ScanArgs),
    /// Brute-force averages over quadratic fields.
    Quadratic(QuadraticArgs),
    /// Sample the local model directly.
    Montecarlo(MonteCarloArgs),
    /// Local density tables.
    #[command(subcommand)]
    Model(ModelCommand),
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    /// Degree of the fields (3, 4 or 5).
    #[arg(long)]
    pub n: Option<u32>,
    /// Class as parts ("2,1") or a representative ("(12)").
    #[arg(long)]
    pub class: Option<String>,
    /// little-n, big-N, big-N-odd-union, quadratic-little-n, pollack or erdos.
    #[arg(long)]
    pub quantity: Option<String>,
    /// Target bound on the neglected tail.
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    /// Every published row (filtered by --n and --quantity) with its
    /// reference value.
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// JSON-lines file, or CSV when the name ends in .csv.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub class: String,
    /// little-n or big-N.
    #[arg(long, default_value = "big-N")]
    pub quantity: String,
    /// Largest prime examined per field.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    pub bound: u64,
    /// Degree, needed only when the input is empty.
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Debug, Args)]
pub struct QuadraticArgs {
    /// Bound on |D| (or on p for erdos-prime).
    #[arg(long)]
    pub x: u64,
    /// +, - or both.
    #[arg(long, default_value = "both", allow_hyphen_values = true)]
    pub sign: String,
    /// N+1, N-1, n+1, n-1 or erdos-prime.
    #[arg(long)]
    pub quantity: String,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub class: Option<String>,
    #[arg(long)]
    pub quantity: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum ModelCommand {
    /// Print every local density at one prime.
    Dump {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u64,
    },
}
