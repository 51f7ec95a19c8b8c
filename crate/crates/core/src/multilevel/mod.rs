//! Multilevel partitioning of a model graph: label-propagation coarsening
//! with fixed artificial nodes, greedy Fennel initial partitioning, and
//! label-propagation refinement during uncoarsening.

mod clustering;
mod contraction;
mod initial;
mod refinement;

pub use clustering::{label_propagation_clustering, Clustering};
pub use contraction::{contract, project, Contraction};
pub use initial::{initial_partition, InitialPartition};
pub use refinement::{local_search, LocalSearchStats};

use crate::config::Config;
use crate::graph::{BlockId, Graph, NodeId, Weight};
use crate::model::ModelGraph;
use crate::objective::FennelParams;
use crate::rng::RngStream;

/// One level of the hierarchy. Nodes `movable..` are the fixed artificial
/// nodes, node `movable + j` standing for block `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub graph: Graph,
    pub movable: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hierarchy {
    /// `levels[0]` is the model graph itself.
    pub levels: Vec<Level>,
    /// `mappings[i]` maps nodes of level `i` to nodes of level `i + 1`.
    pub mappings: Vec<Vec<NodeId>>,
    /// Block of every node per level; present when restreaming.
    pub blocks: Option<Vec<Vec<BlockId>>>,
}

impl Hierarchy {
    pub fn coarsest(&self) -> &Level {
        self.levels.last().expect("hierarchy has a level")
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

/// `⌊max(|B| / (2xk), xk)⌋`: coarsening stops once a level has at most this
/// many nodes.
pub fn coarsest_size_limit(model_nodes: usize, x: u32, k: u32) -> usize {
    let xk = x as usize * k as usize;
    (model_nodes / (2 * xk)).max(xk)
}

/// Upper bound on cluster weight during coarsening.
///
/// `(k·L_max − c(V)) / k` is the per-block share of the total slack. While
/// every coarse node weighs at most this much, greedy initial partitioning
/// always finds a block with room (clamped to `[1, L_max]`).
pub fn cluster_weight_bound(total_weight: Weight, k: u32, l_max: Weight) -> Weight {
    let capacity = k as u128 * l_max as u128;
    let slack = capacity.saturating_sub(total_weight as u128) / k as u128;
    (slack as Weight).clamp(1, l_max.max(1))
}

/// Builds the coarsening hierarchy of `model`.
///
/// Levels are added until the node count drops to the coarsest-size limit or
/// a clustering round fails to shrink the graph. In restream mode clusters
/// are confined to the blocks the batch nodes currently occupy.
pub fn coarsen(
    model: &ModelGraph,
    cfg: &Config,
    max_cluster_weight: Weight,
    rng: &mut RngStream,
) -> Hierarchy {
    let limit = coarsest_size_limit(model.node_count(), cfg.x, model.k);
    let mut levels = vec![Level {
        graph: model.graph.clone(),
        movable: model.batch_node_count,
    }];
    let mut mappings = Vec::new();
    let mut blocks = model.initial_blocks.as_ref().map(|initial| {
        let mut b = initial.clone();
        b.extend(0..model.k);
        vec![b]
    });

    loop {
        let level = levels.last().expect("non-empty");
        let n = level.graph.node_count();
        if n <= limit {
            break;
        }
        let level_blocks = blocks
            .as_ref()
            .map(|b| b.last().expect("non-empty").as_slice());
        let clustering = label_propagation_clustering(
            &level.graph,
            level.movable,
            max_cluster_weight,
            cfg.coarsening_rounds,
            level_blocks,
            rng,
        );
        let Contraction {
            coarse,
            mapping,
            movable,
        } = contract(&level.graph, &clustering, level.movable);
        if coarse.node_count() >= n {
            break;
        }
        if let Some(per_level) = blocks.as_mut() {
            let fine = per_level.last().expect("non-empty");
            let mut coarse_blocks = vec![0; coarse.node_count()];
            for (v, &c) in mapping.iter().enumerate() {
                coarse_blocks[c as usize] = fine[v];
            }
            per_level.push(coarse_blocks);
        }
        mappings.push(mapping);
        levels.push(Level {
            graph: coarse,
            movable,
        });
    }
    Hierarchy {
        levels,
        mappings,
        blocks,
    }
}

/// Result of partitioning one model graph.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelPartition {
    /// Block for every batch node, in local id order.
    pub blocks: Vec<BlockId>,
    pub fallbacks: usize,
    pub levels: usize,
    pub moves: usize,
}

/// Coarsens `model`, partitions the coarsest level (or inherits the previous
/// pass's blocks when restreaming), then refines on every level on the way
/// back up.
pub fn partition_model(
    model: &ModelGraph,
    cfg: &Config,
    params: &FennelParams,
    max_cluster_weight: Weight,
    rng: &mut RngStream,
) -> ModelPartition {
    let k = model.k as usize;
    let hierarchy = coarsen(model, cfg, max_cluster_weight, rng);
    let coarsest = hierarchy.coarsest();

    let (mut assignment, fallbacks) = match &hierarchy.blocks {
        Some(per_level) => (per_level.last().expect("non-empty").clone(), 0),
        None => {
            let init = initial_partition(
                &coarsest.graph,
                coarsest.movable,
                params,
                model.weight_scale,
                rng,
            );
            (init.assignment, init.fallbacks)
        }
    };

    let mut moves = 0;
    for depth in (0..hierarchy.depth()).rev() {
        let level = &hierarchy.levels[depth];
        if depth + 1 < hierarchy.depth() {
            assignment = project(&assignment, &hierarchy.mappings[depth]);
        }
        let stats = local_search(
            &level.graph,
            level.movable,
            &mut assignment,
            params,
            model.weight_scale,
            cfg.local_search_rounds,
            k,
            rng,
        );
        moves += stats.moves;
    }

    debug_assert!((0..k).all(|j| assignment[model.batch_node_count + j] == j as BlockId));
    assignment.truncate(model.batch_node_count);
    ModelPartition {
        blocks: assignment,
        fallbacks,
        levels: hierarchy.depth(),
        moves,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarsest_limits() {
        // max(1000 / 32, 16) = 31.25, floored
        assert_eq!(coarsest_size_limit(1000, 4, 4), 31);
        assert_eq!(coarsest_size_limit(10, 4, 4), 16);
        assert_eq!(coarsest_size_limit(4224, 4, 128), 512);
    }

    #[test]
    fn cluster_bound() {
        // L_max = 26 for c(V) = 100, k = 4: slack (104 − 100) / 4 = 1
        assert_eq!(cluster_weight_bound(100, 4, 26), 1);
        assert_eq!(cluster_weight_bound(16384, 32, 528), 16);
        assert_eq!(cluster_weight_bound(10, 1, 10), 1);
        assert_eq!(cluster_weight_bound(10, 1, 1000), 990);
    }
}
