use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use tgx_core::algorithms::Algorithm;
use tgx_core::{AccessMode, OrderingPredicate};

#[derive(Debug, Parser)]
#[command(name = "tgx", version, about = "Windowed analytics on temporal graphs")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one algorithm and print a report.
    Run(RunArgs),
    /// Compare selective indexing against plain scans over window sizes.
    Sweep(SweepArgs),
    /// Score the index/scan decision against true selectivity.
    Accuracy(AccuracyArgs),
    /// Write a synthetic edge list.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum IdModeArg {
    Integer,
    #[default]
    Map,
}

#[derive(Clone, Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["graph", "generate"])))]
pub struct GraphArgs {
    /// Edge list (`src dst start [end] [weight]`, `.gz` accepted).
    #[arg(long)]
    pub graph: Option<PathBuf>,

    /// Generator settings: a TOML file, or `key=value` pairs separated by
    /// commas (num_vertices, num_edges, mu, sigma, lambda, min_duration,
    /// max_duration, seed).
    #[arg(long)]
    pub generate: Option<String>,

    #[arg(long)]
    pub undirected: bool,

    #[arg(long, value_enum, default_value_t = IdModeArg::Map)]
    pub id_mode: IdModeArg,

    /// Ordering between consecutive path edges.
    #[arg(long, default_value = "strictly-succeeds", value_parser = parse_ordering)]
    pub ordering: OrderingPredicate,

    /// Seed for generated graphs and sampled end times.
    #[arg(long)]
    pub seed: Option<u64>,

    /// TOML file with `[index] cutoff` and `[cost] c, c_prime, theta_sel`.
    #[arg(long)]
    pub config: Option<PathBuf>,

    #[arg(long)]
    pub index_cutoff: Option<usize>,

    #[arg(long)]
    pub theta_sel: Option<f64>,

    #[arg(long, default_value = "auto", value_parser = parse_access)]
    pub force_access: AccessMode,
}

#[derive(Clone, Debug, Default, Args)]
pub struct WindowArgs {
    #[arg(long, requires = "window_end", conflicts_with = "window_fraction")]
    pub window_start: Option<u64>,

    #[arg(long, requires = "window_start")]
    pub window_end: Option<u64>,

    /// Window over this fraction of most recent edges (default 0.05).
    #[arg(long)]
    pub window_fraction: Option<f64>,
}

#[derive(Clone, Debug, Args)]
pub struct AlgoArgs {
    #[arg(long, value_parser = parse_algorithm)]
    pub algo: Algorithm,

    /// Single source (target for latest departure).
    #[arg(long, conflicts_with = "top_k")]
    pub source: Option<u32>,

    /// Run from the K highest out-degree vertices (default 100).
    #[arg(long)]
    pub top_k: Option<usize>,

    #[arg(long, default_value_t = 100)]
    pub iterations: usize,

    #[arg(long, default_value_t = 0.85)]
    pub damping: f64,

    /// Core order for k-core.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[command(flatten)]
    pub window: WindowArgs,

    #[command(flatten)]
    pub algo: AlgoArgs,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
}

pub const DEFAULT_SWEEP_FRACTIONS: &str = "0.01,0.02,0.03,0.04,0.05,0.10,0.20";
pub const DEFAULT_ACCURACY_FRACTIONS: &str = "0.001,0.005,0.01,0.02,0.03,0.04,0.05,0.10,0.20";
pub const DEFAULT_CUTOFFS: &str = "1024,2048,4096,8192";

#[derive(Clone, Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[command(flatten)]
    pub algo: AlgoArgs,

    /// Fractions of most recent edges to match.
    #[arg(long, value_delimiter = ',', default_value = DEFAULT_SWEEP_FRACTIONS)]
    pub fractions: Vec<f64>,

    /// Timed repetitions per mode; the fastest counts.
    #[arg(long, default_value_t = 1)]
    pub repeats: usize,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub output: OutputFormat,
}

#[derive(Clone, Debug, Args)]
pub struct AccuracyArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[arg(long, value_delimiter = ',', default_value = DEFAULT_CUTOFFS)]
    pub cutoffs: Vec<usize>,

    #[arg(long, value_delimiter = ',', default_value = DEFAULT_ACCURACY_FRACTIONS)]
    pub fractions: Vec<f64>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub output: OutputFormat,
}

#[derive(Clone, Debug, Args)]
pub struct GenerateArgs {
    /// Generator settings, as for `--generate` elsewhere.
    #[arg(long, default_value = "")]
    pub params: String,

    #[arg(long)]
    pub seed: Option<u64>,

    /// Output path; `.gz` compresses.
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_ordering(s: &str) -> Result<OrderingPredicate, String> {
    s.parse().map_err(|e: tgx_core::Error| e.to_string())
}

fn parse_access(s: &str) -> Result<AccessMode, String> {
    s.parse().map_err(|e: tgx_core::Error| e.to_string())
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: tgx_core::Error| e.to_string())
}
