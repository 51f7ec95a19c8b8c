use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use heistream::{Algorithm, Config, ModelKind};

#[derive(Parser, Debug)]
#[command(
    name = "heistream",
    version,
    about = "Buffered streaming graph partitioning"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Partition one graph and report the result as JSON.
    Partition(PartitionArgs),
    /// Run a grid of graphs, algorithms, block counts and seeds.
    Bench(BenchArgs),
    /// Recompute edge-cut and balance of a partition file.
    Verify(VerifyArgs),
    /// Write a synthetic graph in METIS format.
    #[command(subcommand)]
    Gen(GenCommand),
}

/// Algorithm parameters shared by `partition` and `bench`.
#[derive(Args, Debug, Clone)]
pub struct TuningArgs {
    #[arg(long, default_value_t = 0.03)]
    pub epsilon: f64,
    /// Nodes per batch (δ).
    #[arg(long, visible_alias = "delta", default_value_t = 32768)]
    pub buffer_size: usize,
    #[arg(long, default_value = "extended")]
    pub model: ModelKind,
    #[arg(long, default_value_t = 1)]
    pub passes: u32,
    #[arg(long, default_value_t = 5)]
    pub coarsening_rounds: u32,
    #[arg(long, default_value_t = 5)]
    pub local_search_rounds: u32,
    /// Coarsest-level size factor.
    #[arg(long, default_value_t = 4)]
    pub x: u32,
    /// Multiplier on α; defaults to 0.5 for heistream and 1 otherwise.
    #[arg(long)]
    pub alpha_tuning: Option<f64>,
    #[arg(long, default_value_t = 1.5)]
    pub gamma: f64,
    /// Approximate c^(γ−1) with a polynomial instead of `powf`.
    #[arg(long)]
    pub approx_pow: bool,
}

impl TuningArgs {
    pub fn config(&self, algorithm: Algorithm, k: u32, seed: u64) -> Config {
        Config {
            algorithm,
            k,
            epsilon: self.epsilon,
            buffer_size: self.buffer_size,
            model_kind: self.model,
            passes: self.passes,
            coarsening_rounds: self.coarsening_rounds,
            local_search_rounds: self.local_search_rounds,
            x: self.x,
            alpha_tuning: self.alpha_tuning,
            gamma: self.gamma,
            use_approx_pow: self.approx_pow,
            seed,
        }
    }
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value = "heistream")]
    pub algorithm: Algorithm,
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Partition file, one block id per line.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write the JSON result here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[command(flatten)]
    pub tuning: TuningArgs,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, required = true, num_args = 1..)]
    pub graphs: Vec<PathBuf>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "heistream,fennel,ldg,hashing"
    )]
    pub algorithms: Vec<Algorithm>,
    #[arg(
        long = "k",
        value_delimiter = ',',
        default_value = "2,4,8,16,32,64,128"
    )]
    pub ks: Vec<u32>,
    /// Seeds `0..seeds` unless `--seed-list` is given.
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    #[arg(long, value_delimiter = ',')]
    pub seed_list: Option<Vec<u64>>,
    /// Per-run CSV.
    #[arg(long)]
    pub output: PathBuf,
    /// Aggregate CSV; printed to stdout when absent.
    #[arg(long)]
    pub aggregate: Option<PathBuf>,
    /// Reference algorithm for improvement figures.
    #[arg(long, default_value = "fennel")]
    pub baseline: Algorithm,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub tuning: TuningArgs,
}

impl BenchArgs {
    pub fn seed_values(&self) -> Vec<u64> {
        self.seed_list
            .clone()
            .unwrap_or_else(|| (0..self.seeds).collect())
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub partition: PathBuf,
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 0.03)]
    pub epsilon: f64,
    /// JSON result from `partition` whose edge-cut must match.
    #[arg(long)]
    pub claimed: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Random geometric graph with 2^log_n points on the unit square.
    Rgg {
        #[arg(long)]
        log_n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Erdős–Rényi G(n, p).
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Two-dimensional grid with 4-neighborhoods.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}
