use std::path::Path;

use heistream::streamers::PhaseTimes;
use heistream::{Config, RunResult, Weight};
use serde::{Deserialize, Serialize};

/// JSON result of one run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub graph: String,
    pub algorithm: String,
    pub k: u32,
    pub seed: u64,
    pub delta: usize,
    pub passes: u32,
    pub edge_cut: Weight,
    pub cut_fraction: f64,
    pub balance: f64,
    pub runtime_ms: PhaseTimes,
    pub fallback_count: usize,
    pub pass_cuts: Vec<Weight>,
}

impl RunRecord {
    pub fn new(graph: &Path, cfg: &Config, delta: usize, result: &RunResult) -> Self {
        Self {
            graph: graph.display().to_string(),
            algorithm: cfg.algorithm.name().to_string(),
            k: cfg.k,
            seed: cfg.seed,
            delta,
            passes: result.pass_cuts.len() as u32,
            edge_cut: result.edge_cut,
            cut_fraction: result.cut_fraction(),
            balance: result.balance,
            runtime_ms: result.runtime_ms,
            fallback_count: result.fallback_count,
            pass_cuts: result.pass_cuts.clone(),
        }
    }
}

/// Flat per-run CSV row.
#[derive(Debug, Serialize)]
pub struct CsvRow<'a> {
    pub graph: &'a str,
    pub algorithm: &'a str,
    pub k: u32,
    pub seed: u64,
    pub delta: usize,
    pub passes: u32,
    pub edge_cut: Weight,
    pub cut_fraction: f64,
    pub balance: f64,
    pub runtime_io_ms: f64,
    pub runtime_model_ms: f64,
    pub runtime_partition_ms: f64,
    pub runtime_total_ms: f64,
    pub fallback_count: usize,
}

impl<'a> From<&'a RunRecord> for CsvRow<'a> {
    fn from(r: &'a RunRecord) -> Self {
        Self {
            graph: &r.graph,
            algorithm: &r.algorithm,
            k: r.k,
            seed: r.seed,
            delta: r.delta,
            passes: r.passes,
            edge_cut: r.edge_cut,
            cut_fraction: r.cut_fraction,
            balance: r.balance,
            runtime_io_ms: r.runtime_ms.io,
            runtime_model_ms: r.runtime_ms.model,
            runtime_partition_ms: r.runtime_ms.partition,
            runtime_total_ms: r.runtime_ms.total,
            fallback_count: r.fallback_count,
        }
    }
}
