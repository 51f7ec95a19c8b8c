//! Top-level streaming drivers.

mod clock;
mod heistream;
mod onepass;

pub use heistream::run_heistream;
pub use onepass::{run_fennel, run_hashing, run_ldg, run_refennel, seeded_hash};

use serde::{Deserialize, Serialize};

use crate::config::{Algorithm, Config};
use crate::error::Result;
use crate::graph::{NodeId, Weight};
use crate::graph_io::{Batch, GraphStream, StreamSource};
use crate::partition::{compute_lmax, PartitionState};
use clock::Stopwatch;

/// Wall-clock time per phase, in milliseconds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimes {
    pub io: f64,
    pub model: f64,
    pub partition: f64,
    pub total: f64,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub algorithm: Algorithm,
    pub partition: PartitionState,
    pub edge_cut: Weight,
    pub total_edge_weight: Weight,
    /// `max_i c(V_i) / (c(V) / k)`.
    pub balance: f64,
    pub runtime_ms: PhaseTimes,
    /// Decisions where no block had room and the lightest block was used.
    pub fallback_count: usize,
    /// Edge-cut at the end of every pass.
    pub pass_cuts: Vec<Weight>,
}

impl RunResult {
    pub fn cut_fraction(&self) -> f64 {
        if self.total_edge_weight == 0 {
            0.0
        } else {
            self.edge_cut as f64 / self.total_edge_weight as f64
        }
    }
}

/// Runs `cfg.algorithm` over `stream`, which must be positioned at the start
/// of a pass. The stream's batch size takes precedence over
/// `cfg.buffer_size`.
pub fn run<S: StreamSource>(stream: &mut GraphStream<S>, cfg: &Config) -> Result<RunResult> {
    match cfg.algorithm {
        Algorithm::HeiStream => run_heistream(stream, cfg),
        Algorithm::Fennel => run_fennel(stream, cfg),
        Algorithm::ReFennel => run_refennel(stream, cfg),
        Algorithm::Ldg => run_ldg(stream, cfg),
        Algorithm::Hashing => run_hashing(stream, cfg),
    }
}

/// Shared bookkeeping for all drivers.
pub(crate) struct Run {
    pub cfg: Config,
    pub state: PartitionState,
    pub times: PhaseTimes,
    pub fallbacks: usize,
    pub pass_cuts: Vec<Weight>,
    pub total_edge_weight: Weight,
    pass_cut: Weight,
    started: Stopwatch,
}

impl Run {
    pub fn start<S: StreamSource>(stream: &GraphStream<S>, cfg: &Config) -> Result<Self> {
        let n = stream.node_count();
        cfg.validate(n)?;
        let cfg = Config {
            buffer_size: stream.delta().min(n.max(1)),
            ..cfg.clone()
        };
        let l_max = compute_lmax(stream.total_node_weight(), cfg.k, cfg.epsilon)?;
        Ok(Self {
            state: PartitionState::new(n, cfg.k, l_max),
            cfg,
            times: PhaseTimes::default(),
            fallbacks: 0,
            pass_cuts: Vec::new(),
            total_edge_weight: 0,
            pass_cut: 0,
            started: Stopwatch::start(),
        })
    }

    pub fn begin_pass<S: StreamSource>(
        &mut self,
        stream: &mut GraphStream<S>,
        pass: u32,
    ) -> Result<()> {
        if pass > 1 || stream.cursor() > 0 {
            stream.rewind()?;
        }
        self.pass_cut = 0;
        Ok(())
    }

    pub fn next_batch<S: StreamSource>(
        &mut self,
        stream: &mut GraphStream<S>,
    ) -> Result<Option<Batch>> {
        let t = Stopwatch::start();
        let batch = stream.next_batch()?;
        self.times.io += t.ms();
        Ok(batch)
    }

    /// Adds the edges from node `global` to lower-id neighbors to the cut of
    /// this pass. Lower-id nodes are final for the pass by the time a node is
    /// committed, so summing at every node yields the end-of-pass cut.
    pub fn account(&mut self, global: usize, adj: &[(NodeId, Weight)], first_pass: bool) {
        let own = self.state.block_of(global);
        for &(u, w) in adj {
            if (u as usize) < global {
                if first_pass {
                    self.total_edge_weight += w;
                }
                if self.state.block_of(u as usize) != own {
                    self.pass_cut += w;
                }
            }
        }
    }

    pub fn end_pass(&mut self) {
        self.pass_cuts.push(self.pass_cut);
    }

    pub fn finish(mut self, algorithm: Algorithm) -> RunResult {
        self.times.total = self.started.ms();
        let k = self.state.k() as f64;
        let total: Weight = self.state.block_weights().iter().sum();
        let max = self
            .state
            .block_weights()
            .iter()
            .copied()
            .max()
            .unwrap_or(0);
        let balance = if total == 0 {
            1.0
        } else {
            max as f64 * k / total as f64
        };
        RunResult {
            algorithm,
            edge_cut: self.pass_cuts.last().copied().unwrap_or(0),
            partition: self.state,
            total_edge_weight: self.total_edge_weight,
            balance,
            runtime_ms: self.times,
            fallback_count: self.fallbacks,
            pass_cuts: self.pass_cuts,
        }
    }
}
