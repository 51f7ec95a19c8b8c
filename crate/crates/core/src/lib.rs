//! Buffered streaming graph partitioning.
//!
//! Nodes arrive in batches of `δ`. Each batch becomes a small model graph
//! (batch nodes plus one fixed artificial node per block) that is partitioned
//! with a multilevel scheme under a generalized Fennel objective, after which
//! the batch's assignments are final. One-pass baselines (Hashing, LDG,
//! Fennel) and restreaming ReFennel share the same stream reader and
//! bookkeeping.
//!
//! ```
//! use heistream::{generators::grid, graph_io::{write_metis, GraphStream}, Algorithm, Config};
//!
//! let mut bytes = Vec::new();
//! write_metis(&grid(16, 16), &mut bytes).unwrap();
//! let mut stream = GraphStream::from_bytes(bytes, 64).unwrap();
//! let result = heistream::run(&mut stream, &Config::new(Algorithm::HeiStream, 4)).unwrap();
//! assert!(result.partition.is_balanced());
//! ```

pub mod config;
pub mod error;
pub mod generators;
pub mod graph;
pub mod graph_io;
pub mod metrics;
pub mod model;
pub mod multilevel;
pub mod objective;
pub mod partition;
pub mod rng;
pub mod streamers;

pub use config::{Algorithm, Config, ModelKind};
pub use error::{Error, Result};
pub use graph::{BlockId, Graph, NodeId, Weight};
pub use graph_io::{open_stream, GraphStream};
pub use partition::PartitionState;
pub use streamers::{run, RunResult};
