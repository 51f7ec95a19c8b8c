use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("block {block} out of range for k = {k}")]
    InvalidBlock { block: u32, k: u32 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("truncated input: expected {expected} {what}, found {found}")]
    Truncated {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("stream source cannot be rewound; restreaming is unsupported")]
    RestreamUnsupported,

    #[error("rewind requested before the end of the current pass (cursor at node {cursor})")]
    RewindMidPass { cursor: usize },

    #[error("local id {0} refers to an artificial node, not a stream node")]
    NotStreamNode(usize),

    #[error("restreaming requires every node to be assigned; node {0} is not")]
    RestreamPrecondition(usize),

    #[error("node {0} is unassigned")]
    Unassigned(usize),

    #[error("neighbor {neighbor} of node {node} is outside [0, {n})")]
    CorruptStream {
        node: usize,
        neighbor: usize,
        n: usize,
    },

    #[error("assignment has {found} entries but the graph has {expected} nodes")]
    AssignmentLength { expected: usize, found: usize },

    #[error("geometric mean requires strictly positive values, got {0}")]
    NonPositive(f64),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error(transparent)]
    Io(#[from] io::Error),
}
