#![allow(dead_code)]

use std::io::Cursor;

use heistream::generators::{erdos_renyi, grid, Rgg};
use heistream::graph_io::write_metis;
use heistream::rng::RngStream;
use heistream::{Graph, GraphStream, NodeId, Weight};

pub type MemStream = GraphStream<Cursor<Vec<u8>>>;

pub fn metis_bytes(graph: &Graph) -> Vec<u8> {
    let mut bytes = Vec::new();
    write_metis(graph, &mut bytes).unwrap();
    bytes
}

pub fn stream_of(graph: &Graph, delta: usize) -> MemStream {
    GraphStream::from_bytes(metis_bytes(graph), delta).unwrap()
}

/// Random graph with `n` nodes, about `m` edges, and weights drawn from
/// `1..=max_node_weight` / `1..=max_edge_weight`.
pub fn random_graph(
    n: usize,
    m: usize,
    max_node_weight: Weight,
    max_edge_weight: Weight,
    seed: u64,
) -> Graph {
    let mut rng = RngStream::new(seed);
    let weights = (0..n)
        .map(|_| 1 + rng.below(max_node_weight as usize) as Weight)
        .collect();
    let edges: Vec<_> = (0..if n > 1 { m } else { 0 })
        .map(|_| {
            (
                rng.below(n) as NodeId,
                rng.below(n) as NodeId,
                1 + rng.below(max_edge_weight as usize) as Weight,
            )
        })
        .collect();
    Graph::from_edges(weights, edges)
}

/// Mixed corpus of small unit-weight graphs.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for (i, log_n) in [8, 9, 10, 11, 12, 13].into_iter().enumerate() {
        out.push((
            format!("rgg{log_n}"),
            Rgg::new(1 << log_n, 100 + i as u64).to_graph(),
        ));
    }
    for (rows, cols) in [(8, 8), (16, 16), (20, 50), (32, 32), (64, 64), (7, 300)] {
        out.push((format!("grid{rows}x{cols}"), grid(rows, cols)));
    }
    for (i, (n, p)) in [
        (100, 0.05),
        (500, 0.01),
        (1000, 0.004),
        (2000, 0.002),
        (3000, 0.001),
        (800, 0.0),
    ]
    .into_iter()
    .enumerate()
    {
        out.push((format!("er{n}"), erdos_renyi(n, p, 200 + i as u64).unwrap()));
    }
    for (i, (n, m)) in [(50, 200), (300, 600), (1000, 5000), (4000, 8000)]
        .into_iter()
        .enumerate()
    {
        out.push((
            format!("random{n}"),
            random_graph(n, m, 1, 1, 300 + i as u64),
        ));
    }
    out
}
