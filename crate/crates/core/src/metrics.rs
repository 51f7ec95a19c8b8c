//! Partition quality (edge-cut, balance, quotient graph) and aggregate
//! statistics over experiment results.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BlockId, Graph, Weight};
use crate::graph_io::{GraphStream, StreamSource};
use crate::partition::PartitionState;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutReport {
    pub edge_cut: Weight,
    pub total_edge_weight: Weight,
}

impl CutReport {
    pub fn fraction(&self) -> f64 {
        if self.total_edge_weight == 0 {
            0.0
        } else {
            self.edge_cut as f64 / self.total_edge_weight as f64
        }
    }
}

/// Edge-cut of `assignment` in one pass over `stream`. Each undirected edge
/// is counted at its higher-id endpoint.
///
/// A stream in the middle of a pass is an error; a stream at the end of a
/// pass is rewound first.
pub fn edge_cut<S: StreamSource>(
    stream: &mut GraphStream<S>,
    assignment: &[BlockId],
) -> Result<CutReport> {
    let n = stream.node_count();
    if assignment.len() != n {
        return Err(Error::AssignmentLength {
            expected: n,
            found: assignment.len(),
        });
    }
    if stream.cursor() > 0 {
        stream.rewind()?;
    }
    let mut report = CutReport {
        edge_cut: 0,
        total_edge_weight: 0,
    };
    while let Some(batch) = stream.next_batch()? {
        for (v, _, adj) in batch.iter() {
            for &(u, w) in adj {
                let u = u as usize;
                if u < v {
                    report.total_edge_weight += w;
                    if assignment[u] != assignment[v] {
                        report.edge_cut += w;
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Edge-cut of `assignment` on an in-memory graph.
pub fn edge_cut_of_graph(graph: &Graph, assignment: &[BlockId]) -> Result<CutReport> {
    if assignment.len() != graph.node_count() {
        return Err(Error::AssignmentLength {
            expected: graph.node_count(),
            found: assignment.len(),
        });
    }
    let mut doubled_cut = 0;
    let mut doubled_total = 0;
    for v in 0..graph.node_count() {
        for (u, w) in graph.neighbors(v) {
            doubled_total += w;
            if assignment[u as usize] != assignment[v] {
                doubled_cut += w;
            }
        }
    }
    Ok(CutReport {
        edge_cut: doubled_cut / 2,
        total_edge_weight: doubled_total / 2,
    })
}

/// `max_i c(V_i) · k / c(V)`; 1 for an empty partition.
pub fn balance(state: &PartitionState) -> f64 {
    balance_of_weights(state.block_weights())
}

pub fn balance_of_weights(block_weights: &[Weight]) -> f64 {
    let total: Weight = block_weights.iter().sum();
    if total == 0 {
        return 1.0;
    }
    let max = block_weights.iter().copied().max().unwrap_or(0);
    max as f64 * block_weights.len() as f64 / total as f64
}

/// Block weights of `assignment` over `graph`.
pub fn block_weights(graph: &Graph, assignment: &[BlockId], k: u32) -> Result<Vec<Weight>> {
    let mut weights = vec![0; k as usize];
    for (v, &b) in assignment.iter().enumerate() {
        if b >= k {
            return Err(Error::InvalidBlock { block: b, k });
        }
        weights[b as usize] += graph.node_weight(v);
    }
    Ok(weights)
}

/// Graph with one node per block; two blocks are adjacent when an edge
/// crosses between them, weighted by the total crossing weight.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientGraph {
    pub graph: Graph,
}

impl QuotientGraph {
    pub fn block_weight(&self, block: BlockId) -> Weight {
        self.graph.node_weight(block as usize)
    }

    pub fn total_crossing_weight(&self) -> Weight {
        self.graph.total_edge_weight()
    }
}

pub fn quotient_graph(graph: &Graph, assignment: &[BlockId], k: u32) -> Result<QuotientGraph> {
    if assignment.len() != graph.node_count() {
        return Err(Error::AssignmentLength {
            expected: graph.node_count(),
            found: assignment.len(),
        });
    }
    let weights = block_weights(graph, assignment, k)?;
    let mut edges = Vec::new();
    for v in 0..graph.node_count() {
        for (u, w) in graph.neighbors(v) {
            let (a, b) = (assignment[v], assignment[u as usize]);
            if (u as usize) < v && a != b {
                edges.push((a, b, w));
            }
        }
    }
    Ok(QuotientGraph {
        graph: Graph::from_edges(weights, edges),
    })
}

/// Geometric mean of strictly positive values.
pub fn geometric_mean(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Empty("geometric mean of no values"));
    }
    let mut log_sum = 0.0;
    for &v in values {
        if !(v > 0.0) {
            return Err(Error::NonPositive(v));
        }
        log_sum += v.ln();
    }
    Ok((log_sum / values.len() as f64).exp())
}

/// Improvement of `a` over `b` in percent, `(b / a − 1) · 100`, for
/// quantities where smaller is better.
pub fn improvement(a: f64, b: f64) -> f64 {
    (b / a - 1.0) * 100.0
}

/// `a / max`.
pub fn ratio(a: f64, max: f64) -> f64 {
    a / max
}

/// Summary of one quantity over a set of instances.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    /// Geometric mean over the positive values, or the arithmetic mean when
    /// every value is zero.
    pub mean: f64,
    pub geometric: bool,
    pub used: usize,
    /// Instances left out because their value was zero.
    pub excluded_zero: usize,
}

/// Geometric mean that drops zero values, as zero cuts carry no ratio
/// information. Negative values are an error.
pub fn aggregate(values: &[f64]) -> Result<Aggregate> {
    if values.is_empty() {
        return Err(Error::Empty("aggregate of no values"));
    }
    if let Some(&v) = values.iter().find(|&&v| v < 0.0 || v.is_nan()) {
        return Err(Error::NonPositive(v));
    }
    let positive: Vec<f64> = values.iter().copied().filter(|&v| v > 0.0).collect();
    let excluded_zero = values.len() - positive.len();
    if positive.is_empty() {
        log::warn!(
            "all {} values are zero, reporting the arithmetic mean",
            values.len()
        );
        return Ok(Aggregate {
            mean: 0.0,
            geometric: false,
            used: values.len(),
            excluded_zero: 0,
        });
    }
    if excluded_zero > 0 {
        log::warn!("{excluded_zero} zero values excluded from the geometric mean");
    }
    Ok(Aggregate {
        mean: geometric_mean(&positive)?,
        geometric: true,
        used: positive.len(),
        excluded_zero,
    })
}

/// Performance profile of several algorithms over common instances.
///
/// `values[a][i]` is the value (smaller is better) of algorithm `a` on
/// instance `i`. For every `τ` in `taus` the result holds, per algorithm, the
/// fraction of instances with `value ≤ τ · best`.
pub fn performance_profile(values: &[Vec<f64>], taus: &[f64]) -> Result<Vec<Vec<f64>>> {
    let instances = values.first().map_or(0, Vec::len);
    if instances == 0 {
        return Err(Error::Empty("performance profile of no instances"));
    }
    if values.iter().any(|row| row.len() != instances) {
        return Err(Error::InvalidConfig(
            "every algorithm needs a value for every instance".into(),
        ));
    }
    let best: Vec<f64> = (0..instances)
        .map(|i| {
            values
                .iter()
                .map(|row| row[i])
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    Ok(values
        .iter()
        .map(|row| {
            taus.iter()
                .map(|&tau| {
                    let hits = (0..instances).filter(|&i| row[i] <= tau * best[i]).count();
                    hits as f64 / instances as f64
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_io::write_metis;

    fn stream_of(g: &Graph, delta: usize) -> GraphStream<std::io::Cursor<Vec<u8>>> {
        let mut bytes = Vec::new();
        write_metis(g, &mut bytes).unwrap();
        GraphStream::from_bytes(bytes, delta).unwrap()
    }

    #[test]
    fn triangle_cut() {
        let g = Graph::unweighted(3, [(0, 1), (1, 2), (0, 2)]);
        let r = edge_cut(&mut stream_of(&g, 2), &[0, 1, 1]).unwrap();
        assert_eq!(r.edge_cut, 2);
        assert!((r.fraction() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(
            edge_cut(&mut stream_of(&g, 1), &[0, 0, 0])
                .unwrap()
                .edge_cut,
            0
        );
    }

    #[test]
    fn weighted_edge_cut() {
        let g = Graph::from_edges(vec![1, 1], [(0, 1, 5)]);
        assert_eq!(
            edge_cut(&mut stream_of(&g, 1), &[0, 1]).unwrap().edge_cut,
            5
        );
        assert_eq!(edge_cut_of_graph(&g, &[0, 1]).unwrap().edge_cut, 5);
    }

    #[test]
    fn wrong_length() {
        let g = Graph::unweighted(3, [(0, 1)]);
        assert!(matches!(
            edge_cut(&mut stream_of(&g, 1), &[0, 1]),
            Err(Error::AssignmentLength {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn rewinds_after_a_pass() {
        let g = Graph::unweighted(4, [(0, 1), (2, 3), (1, 2)]);
        let mut s = stream_of(&g, 2);
        while s.next_batch().unwrap().is_some() {}
        assert_eq!(edge_cut(&mut s, &[0, 0, 1, 1]).unwrap().edge_cut, 1);
        assert_eq!(edge_cut(&mut s, &[0, 1, 0, 1]).unwrap().edge_cut, 3);
    }

    #[test]
    fn balance_examples() {
        assert_eq!(balance_of_weights(&[25, 25, 25, 25]), 1.0);
        assert!((balance_of_weights(&[26, 25, 25, 24]) - 1.04).abs() < 1e-12);
        assert_eq!(balance_of_weights(&[100]), 1.0);
    }

    #[test]
    fn quotient_sums_to_cut() {
        let g = Graph::unweighted(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]);
        let a = [0, 0, 1, 1, 2, 2];
        let q = quotient_graph(&g, &a, 3).unwrap();
        assert_eq!(
            q.total_crossing_weight(),
            edge_cut_of_graph(&g, &a).unwrap().edge_cut
        );
        assert_eq!(q.graph.edge_weight(0, 1), Some(2));
        assert_eq!(q.block_weight(2), 2);
    }

    #[test]
    fn statistics() {
        assert!((geometric_mean(&[2.0, 8.0]).unwrap() - 4.0).abs() < 1e-12);
        assert!(geometric_mean(&[0.0, 1.0]).is_err());
        assert_eq!(improvement(50.0, 100.0), 100.0);
        assert_eq!(ratio(5.0, 10.0), 0.5);
        let agg = aggregate(&[0.0, 2.0, 8.0]).unwrap();
        assert!((agg.mean - 4.0).abs() < 1e-12);
        assert_eq!(agg.excluded_zero, 1);
    }

    #[test]
    fn profile() {
        let values = vec![vec![1.0, 2.0, 3.0], vec![2.0, 2.0, 1.0]];
        let p = performance_profile(&values, &[1.0, 1.5, 3.0]).unwrap();
        assert_eq!(p[0], vec![2.0 / 3.0, 2.0 / 3.0, 1.0]);
        assert_eq!(p[1], vec![2.0 / 3.0, 2.0 / 3.0, 1.0]);
        for row in &p {
            assert!(row.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
