use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use octagon_core::{Backend, BenchConfig, IncrAlgorithm, NumericMode};

#[derive(Parser, Debug)]
#[command(name = "octagon", version, about = "Octagon closure and incremental closure")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Close a constraint system and print the matrix.
    Close(CloseArgs),
    /// Close a system, add one constraint incrementally, print the result.
    Incr(IncrArgs),
    /// Print the property flags of a dumped matrix.
    Check(CheckArgs),
    /// Generate a random benchmark system.
    Gen(GenArgs),
    /// Time the incremental algorithms on random systems.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Numeric {
    #[arg(long, default_value = "rat", value_parser = parse_mode)]
    pub mode: NumericMode,
    #[arg(long, default_value = "dense", value_parser = Backend::from_str)]
    pub backend: Backend,
}

fn parse_mode(s: &str) -> Result<NumericMode, String> {
    s.parse().map_err(|e: octagon_core::OctError| e.to_string())
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CloseAlgo {
    /// Shortest paths and consistency check.
    Fw,
    Strong,
    /// Integer mode only.
    Tight,
}

#[derive(Args, Debug)]
pub struct CloseArgs {
    /// System file, `-` for stdin.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "fw")]
    pub algo: CloseAlgo,
    #[command(flatten)]
    pub numeric: Numeric,
    /// Write the matrix here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Visiting order for `--in-place`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    RowMajor,
    Random(u64),
}

impl FromStr for OrderSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            None if s == "rowmajor" => Ok(OrderSpec::RowMajor),
            Some(("random", seed)) => seed
                .parse()
                .map(OrderSpec::Random)
                .map_err(|_| format!("bad seed `{seed}`")),
            _ => Err(format!("unknown order `{s}` (expected rowmajor or random:<seed>)")),
        }
    }
}

#[derive(Args, Debug)]
pub struct IncrArgs {
    /// System file, `-` for stdin.
    pub input: PathBuf,
    /// The constraint to add, e.g. `x0 - x1 <= 0`.
    pub constraint: String,
    #[arg(long, default_value = "incr", value_parser = IncrAlgorithm::from_str)]
    pub algo: IncrAlgorithm,
    /// Update the matrix in place, visiting cells in `--order`.
    #[arg(long)]
    pub in_place: bool,
    #[arg(long, default_value = "rowmajor", value_parser = OrderSpec::from_str)]
    pub order: OrderSpec,
    /// Also print `min_ops=<k>`.
    #[arg(long)]
    pub count_mins: bool,
    #[command(flatten)]
    pub numeric: Numeric,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// CSV matrix dump, `-` for stdin.
    pub input: PathBuf,
    #[arg(long, default_value = "rat", value_parser = parse_mode)]
    pub mode: NumericMode,
}

#[derive(Args, Debug, Clone)]
pub struct Workload {
    #[arg(long, default_value_t = 10)]
    pub vars: usize,
    #[arg(long, default_value_t = 20)]
    pub constraints: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Bounds are drawn from [0, D]; the added constraint's from [-D, D].
    #[arg(long, default_value_t = 100)]
    pub magnitude: i64,
    /// Probability that a generated constraint is unary.
    #[arg(long, default_value_t = 0.5)]
    pub unary_fraction: f64,
}

impl Workload {
    pub fn config(&self) -> BenchConfig {
        BenchConfig {
            vars: self.vars,
            constraints: self.constraints,
            seed: self.seed,
            magnitude: self.magnitude,
            unary_fraction: self.unary_fraction,
            ..BenchConfig::default()
        }
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub workload: Workload,
    #[arg(long, default_value_t = 0)]
    pub trial: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub workload: Workload,
    #[arg(long, default_value_t = 10)]
    pub trials: u64,
    /// Comma-separated algorithms; default depends on `--mode`.
    #[arg(long, value_delimiter = ',', value_parser = IncrAlgorithm::from_str)]
    pub algo: Vec<IncrAlgorithm>,
    #[command(flatten)]
    pub numeric: Numeric,
    /// Write per-trial records here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}
