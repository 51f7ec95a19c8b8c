use crate::graph::{Graph, NodeId, Weight};

use super::clustering::Clustering;

/// Coarse graph produced by contracting a clustering.
#[derive(Clone, Debug, PartialEq)]
pub struct Contraction {
    pub coarse: Graph,
    /// Coarse id of every fine node.
    pub mapping: Vec<NodeId>,
    /// Number of coarse nodes that are not fixed.
    pub movable: usize,
}

/// Replaces every cluster by one node carrying the cluster weight. Parallel
/// inter-cluster edges merge by weight sum and intra-cluster edges vanish.
///
/// Clusters of movable nodes are numbered by their first member in fine-id
/// order; the fixed nodes `movable..` keep their relative order at the end.
pub fn contract(graph: &Graph, clustering: &Clustering, movable: usize) -> Contraction {
    let n = graph.node_count();
    let fixed = n - movable;
    const UNSET: NodeId = NodeId::MAX;

    let mut label_to_coarse = vec![UNSET; n];
    let mut mapping = vec![0 as NodeId; n];
    let mut next: NodeId = 0;
    for v in 0..movable {
        let label = clustering.cluster_of[v] as usize;
        debug_assert!(
            label < movable,
            "movable node labelled with a fixed cluster"
        );
        if label_to_coarse[label] == UNSET {
            label_to_coarse[label] = next;
            next += 1;
        }
        mapping[v] = label_to_coarse[label];
    }
    let coarse_movable = next as usize;
    for j in 0..fixed {
        mapping[movable + j] = (coarse_movable + j) as NodeId;
    }
    let cn = coarse_movable + fixed;

    // group fine nodes by coarse id
    let mut start = vec![0usize; cn + 1];
    for &c in &mapping {
        start[c as usize + 1] += 1;
    }
    for c in 0..cn {
        start[c + 1] += start[c];
    }
    let mut members = vec![0 as NodeId; n];
    let mut fill = start.clone();
    for (v, &c) in mapping.iter().enumerate() {
        members[fill[c as usize]] = v as NodeId;
        fill[c as usize] += 1;
    }

    let mut vwgt = vec![0 as Weight; cn];
    let mut xadj = Vec::with_capacity(cn + 1);
    xadj.push(0usize);
    let mut adjncy = Vec::new();
    let mut adjwgt = Vec::new();
    let mut rating = vec![0 as Weight; cn];
    let mut touched: Vec<NodeId> = Vec::new();
    for c in 0..cn {
        for &v in &members[start[c]..start[c + 1]] {
            let v = v as usize;
            vwgt[c] += graph.node_weight(v);
            for (u, w) in graph.neighbors(v) {
                let cu = mapping[u as usize];
                if cu as usize == c {
                    continue;
                }
                if rating[cu as usize] == 0 {
                    touched.push(cu);
                }
                rating[cu as usize] += w;
            }
        }
        touched.sort_unstable();
        for &cu in &touched {
            adjncy.push(cu);
            adjwgt.push(rating[cu as usize]);
            rating[cu as usize] = 0;
        }
        touched.clear();
        xadj.push(adjncy.len());
    }

    Contraction {
        coarse: Graph::from_csr(xadj, adjncy, adjwgt, vwgt),
        mapping,
        movable: coarse_movable,
    }
}

/// Transfers a coarse assignment to the fine level.
pub fn project<T: Copy>(coarse: &[T], mapping: &[NodeId]) -> Vec<T> {
    mapping.iter().map(|&c| coarse[c as usize]).collect()
}
