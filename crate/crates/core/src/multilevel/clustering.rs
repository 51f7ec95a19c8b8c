//! Size-constrained label propagation clustering.

use crate::graph::{BlockId, Graph, Weight};
use crate::rng::RngStream;

/// Cluster label per node. Labels live in node-id space: a node's initial
/// label is its own id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    pub cluster_of: Vec<u32>,
    pub cluster_weights: Vec<Weight>,
}

impl Clustering {
    pub fn singletons(graph: &Graph) -> Self {
        Self {
            cluster_of: (0..graph.node_count() as u32).collect(),
            cluster_weights: graph.node_weights().to_vec(),
        }
    }

    pub fn cluster_count(&self) -> usize {
        let mut seen = vec![false; self.cluster_of.len()];
        let mut count = 0;
        for &c in &self.cluster_of {
            if !seen[c as usize] {
                seen[c as usize] = true;
                count += 1;
            }
        }
        count
    }
}

/// Clusters `graph` by label propagation.
///
/// Nodes `movable..` are fixed: they keep their own label, and edges towards
/// them are ignored when rating clusters. A visited node joins the adjacent
/// cluster it is most strongly connected to, provided the cluster weight
/// stays within `max_cluster_weight` and the connection strictly beats the
/// one to its current cluster. Ties between candidate clusters are drawn
/// uniformly. When `blocks` is given, only neighbors in the node's own block
/// are considered, so clusters never straddle a block boundary.
pub fn label_propagation_clustering(
    graph: &Graph,
    movable: usize,
    max_cluster_weight: Weight,
    rounds: u32,
    blocks: Option<&[BlockId]>,
    rng: &mut RngStream,
) -> Clustering {
    let n = graph.node_count();
    let mut clustering = Clustering::singletons(graph);
    let labels = &mut clustering.cluster_of;
    let weights = &mut clustering.cluster_weights;

    let mut order: Vec<u32> = (0..movable as u32).collect();
    let mut rating: Vec<Weight> = vec![0; n];
    let mut touched: Vec<u32> = Vec::new();

    for _ in 0..rounds {
        rng.shuffle(&mut order);
        let mut moved = 0usize;
        for &v in &order {
            let v = v as usize;
            let block_v = blocks.map(|b| b[v]);
            for (u, w) in graph.neighbors(v) {
                let u = u as usize;
                if u >= movable {
                    continue;
                }
                if let Some(bv) = block_v {
                    if blocks.unwrap()[u] != bv {
                        continue;
                    }
                }
                let label = labels[u] as usize;
                if rating[label] == 0 {
                    touched.push(label as u32);
                }
                rating[label] += w;
            }

            let own = labels[v] as usize;
            let cv = graph.node_weight(v);
            let mut best = own;
            let mut best_rating = rating[own];
            let mut ties = 0usize;
            for &label in &touched {
                let label = label as usize;
                if label == own || weights[label] + cv > max_cluster_weight {
                    continue;
                }
                let r = rating[label];
                if r > best_rating {
                    best = label;
                    best_rating = r;
                    ties = 1;
                } else if r == best_rating && ties > 0 {
                    ties += 1;
                    if rng.below(ties) == 0 {
                        best = label;
                    }
                }
            }
            for &label in &touched {
                rating[label as usize] = 0;
            }
            touched.clear();

            if best != own {
                weights[own] -= cv;
                weights[best] += cv;
                labels[v] = best as u32;
                moved += 1;
            }
        }
        if moved == 0 {
            break;
        }
    }
    clustering
}
