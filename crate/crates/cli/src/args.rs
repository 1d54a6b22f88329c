use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "mewis",
    version,
    about = "Entropy-weighted independent sets and graph pooling"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train the scorer on one graph and extract an independent set.
    Solve(SolveArgs),
    /// Greedy baseline (maximize w / (residual degree + 1)).
    Greedy(BaselineArgs),
    /// Exact maximum weight independent set.
    Exact(ExactArgs),
    /// Pool a graph with features; writes edge list, features and mapping.
    Pool(PoolArgs),
    /// Generate a seeded Erdős–Rényi graph.
    Gen(GenArgs),
    /// Re-index a raw id-pair file (and optional content file) to canonical form.
    Convert(ConvertArgs),
    /// Benchmark suites over citation datasets or random graphs.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Edge list, one `u v` pair per line.
    #[arg(long)]
    pub graph: PathBuf,
    /// Node features, one row per node.
    #[arg(long)]
    pub features: Option<PathBuf>,
    /// Explicit node weights, one per node.
    #[arg(long, conflicts_with_all = ["unit", "entropy"])]
    pub weights: Option<PathBuf>,
    /// Unit weights (the default when no weights or --entropy are given).
    #[arg(long, conflicts_with = "entropy")]
    pub unit: bool,
    /// Entropy weights from --features.
    #[arg(long)]
    pub entropy: bool,
    /// Node count, for graphs whose trailing nodes are isolated.
    #[arg(long)]
    pub nodes: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the result JSON here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the result JSON to standard output.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AggregationArg {
    Mean,
    Sum,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub epochs: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub lr: f64,
    /// Message-passing layers [default: 6, or 3 for pool]
    #[arg(long)]
    pub layers: Option<usize>,
    #[arg(long, default_value_t = 32)]
    pub hidden: usize,
    #[arg(long, default_value_t = 10)]
    pub extract_every: usize,
    /// Complete the extracted set to a maximal one [default: true, or false for pool]
    #[arg(long, action = ArgAction::Set)]
    pub maximalize: Option<bool>,
    /// Neighbor aggregation in each layer.
    #[arg(long, value_enum, default_value_t = AggregationArg::Mean)]
    pub aggregation: AggregationArg,
    /// Re-tighten the extraction threshold after every commit.
    #[arg(long)]
    pub retighten: bool,
    /// Drop the scaled-degree input column.
    #[arg(long)]
    pub no_degree: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: GraphArgs,
    #[command(flatten)]
    pub train: TrainArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Also write the final scorer parameters as JSON.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[command(flatten)]
    pub input: GraphArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub input: GraphArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Branch and bound (up to 128 nodes) instead of enumeration (up to 20).
    #[arg(long)]
    pub bnb: bool,
    /// Branch-and-bound node budget.
    #[arg(long, default_value_t = mewis_core::oracle::DEFAULT_BNB_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct PoolArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub features: PathBuf,
    #[arg(long)]
    pub nodes: Option<usize>,
    #[command(flatten)]
    pub train: TrainArgs,
    /// Number of successive pooling stages.
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    /// Output prefix: writes PREFIX.txt, PREFIX.features and PREFIX.map.
    #[arg(long)]
    pub out: PathBuf,
    /// Print a JSON summary of the stages.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub nodes: usize,
    /// Edge probability.
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output edge list; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Raw pairs: the first two whitespace-separated tokens of each line.
    #[arg(long)]
    pub input: PathBuf,
    /// Rows of `id feature... [label]`; fixes node order and supplies features.
    #[arg(long)]
    pub content: Option<PathBuf>,
    /// Output prefix: writes PREFIX.txt, PREFIX.map and, with --content, PREFIX.features.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Citation,
    Random,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Directory holding NAME.txt or NAME.cites files.
    #[arg(long, default_value = "data")]
    pub data_dir: PathBuf,
    /// Datasets for the citation suite.
    #[arg(long, value_delimiter = ',', default_values_t = ["cora".to_string(), "citeseer".to_string(), "pubmed".to_string()])]
    pub datasets: Vec<String>,
    /// Training seeds per graph; the headline number is the best of them.
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    #[arg(long, default_value_t = 1)]
    pub first_seed: u64,
    #[arg(long, default_value_t = 200)]
    pub epochs: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub lr: f64,
    #[arg(long, default_value_t = 6)]
    pub layers: usize,
    #[arg(long, default_value_t = 32)]
    pub hidden: usize,
    #[arg(long, default_value_t = 10)]
    pub extract_every: usize,
    /// Random suite: number of graphs.
    #[arg(long, default_value_t = 50)]
    pub graphs: u64,
    /// Random suite: nodes per graph.
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    /// Random suite: edge probability.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Random suite: seed of the first graph; graph i uses this plus i.
    #[arg(long, default_value_t = 0)]
    pub instance_seed: u64,
    /// JSON report path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Markdown report path; printed to standard output when neither output is given.
    #[arg(long)]
    pub markdown: Option<PathBuf>,
    /// Leave timings out so reports are byte-for-byte reproducible.
    #[arg(long)]
    pub no_timing: bool,
}
