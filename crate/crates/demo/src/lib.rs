//! Browser demo: partition a random geometric graph and color its points by
//! block.

use heistream::generators::Rgg;
use heistream::graph_io::GraphStream;
use heistream::{run, Algorithm, Config};
use wasm_bindgen::prelude::*;

/// A random geometric graph held in memory, ready to be partitioned.
#[wasm_bindgen]
pub struct Demo {
    rgg: Rgg,
    metis: Vec<u8>,
}

/// Outcome of one partitioning run.
#[wasm_bindgen]
#[derive(Clone, Debug)]
pub struct PartitionView {
    blocks: Vec<u32>,
    edge_cut: u64,
    cut_fraction: f64,
    balance: f64,
    pass_cuts: Vec<u64>,
}

#[wasm_bindgen]
impl PartitionView {
    /// Block of every point, in point order.
    #[wasm_bindgen(getter)]
    pub fn blocks(&self) -> Vec<u32> {
        self.blocks.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn edge_cut(&self) -> f64 {
        self.edge_cut as f64
    }

    #[wasm_bindgen(getter)]
    pub fn cut_fraction(&self) -> f64 {
        self.cut_fraction
    }

    #[wasm_bindgen(getter)]
    pub fn balance(&self) -> f64 {
        self.balance
    }

    #[wasm_bindgen(getter)]
    pub fn pass_cuts(&self) -> Vec<f64> {
        self.pass_cuts.iter().map(|&c| c as f64).collect()
    }
}

#[wasm_bindgen]
impl Demo {
    /// Generates `2^log_n` points; at most 2^16 to keep the page responsive.
    #[wasm_bindgen(constructor)]
    pub fn new(log_n: u32, seed: u32) -> Result<Demo, JsError> {
        Self::generate(log_n, seed).map_err(|e| JsError::new(&e.to_string()))
    }

    #[wasm_bindgen(getter)]
    pub fn node_count(&self) -> usize {
        self.rgg.node_count()
    }

    /// Point coordinates as `[x0, y0, x1, y1, ...]` in the unit square.
    pub fn points(&self) -> Vec<f32> {
        self.rgg
            .points()
            .iter()
            .flat_map(|&(x, y)| [x as f32, y as f32])
            .collect()
    }

    /// Edges as `[u0, v0, u1, v1, ...]` with `u < v`.
    pub fn edges(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut nbrs = Vec::new();
        for v in 0..self.rgg.node_count() {
            self.rgg.neighbors_into(v, &mut nbrs);
            for &u in nbrs.iter().filter(|&&u| u as usize > v) {
                out.extend([v as u32, u]);
            }
        }
        out
    }

    /// Partitions the graph with `algorithm` (heistream, fennel, refennel,
    /// ldg or hashing).
    pub fn partition(
        &self,
        algorithm: &str,
        k: u32,
        delta: u32,
        passes: u32,
        seed: u32,
    ) -> Result<PartitionView, JsError> {
        self.run(algorithm, k, delta, passes, seed)
            .map_err(|e| JsError::new(&e.to_string()))
    }

    /// Cut fraction for every power-of-two batch size up to the node count,
    /// as `[δ0, cut0, δ1, cut1, ...]`.
    pub fn delta_sweep(&self, algorithm: &str, k: u32, seed: u32) -> Result<Vec<f64>, JsError> {
        self.sweep(algorithm, k, seed)
            .map_err(|e| JsError::new(&e.to_string()))
    }
}

impl Demo {
    pub fn generate(log_n: u32, seed: u32) -> heistream::Result<Demo> {
        if !(1..=16).contains(&log_n) {
            return Err(heistream::Error::InvalidConfig(format!(
                "log_n must lie in 1..=16, got {log_n}"
            )));
        }
        let rgg = Rgg::new(1 << log_n, seed as u64);
        let mut metis = Vec::new();
        rgg.write_metis(&mut metis)?;
        Ok(Demo { rgg, metis })
    }

    pub fn run(
        &self,
        algorithm: &str,
        k: u32,
        delta: u32,
        passes: u32,
        seed: u32,
    ) -> heistream::Result<PartitionView> {
        let algorithm: Algorithm = algorithm.parse()?;
        let delta = delta.max(1) as usize;
        let cfg = Config {
            buffer_size: delta,
            passes: passes.max(1),
            seed: seed as u64,
            ..Config::new(algorithm, k)
        };
        let mut stream = GraphStream::from_bytes(self.metis.clone(), delta)?;
        let result = run(&mut stream, &cfg)?;
        Ok(PartitionView {
            blocks: result.partition.assignment()?,
            edge_cut: result.edge_cut,
            cut_fraction: result.cut_fraction(),
            balance: result.balance,
            pass_cuts: result.pass_cuts,
        })
    }

    pub fn sweep(&self, algorithm: &str, k: u32, seed: u32) -> heistream::Result<Vec<f64>> {
        let n = self.rgg.node_count();
        let mut out = Vec::new();
        let mut delta = 1usize;
        loop {
            let view = self.run(algorithm, k, delta as u32, 1, seed)?;
            out.extend([delta as f64, view.cut_fraction]);
            if delta >= n {
                break;
            }
            delta = (delta * 2).min(n);
        }
        Ok(out)
    }
}
