//! Per-batch model graph construction.
//!
//! Local ids `0..b` are the batch nodes in stream order and `b..b+k` are the
//! artificial nodes, artificial node `j` standing for block `j`. The layout is
//! the same for every batch, including the first, where the artificial nodes
//! simply carry zero weight and no edges.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::{BlockId, Graph, NodeId, Weight};
use crate::graph_io::Batch;
use crate::partition::PartitionState;
use crate::rng::RngStream;

/// Node weight given to a not-yet-streamed neighbor. Its true weight is
/// unknown until it arrives.
pub const GHOST_NODE_WEIGHT: Weight = 1;

/// Scale applied to regular model edges when ghost-derived edges are present,
/// so that ghost edges carry half weight while staying integral.
pub const GHOST_WEIGHT_SCALE: Weight = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct ModelGraph {
    pub graph: Graph,
    pub batch_node_count: usize,
    pub k: u32,
    /// 1-based batch index within the pass.
    pub batch_index: usize,
    pub delta: usize,
    /// Weight contracted into each batch node from ghost nodes.
    pub ghost_mass: Vec<Weight>,
    /// Multiplier on model edge weights relative to stream edge weights.
    pub weight_scale: Weight,
    /// Starting block per batch node (restreaming only).
    pub initial_blocks: Option<Vec<BlockId>>,
}

impl ModelGraph {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn artificial(&self, block: BlockId) -> usize {
        self.batch_node_count + block as usize
    }

    pub fn is_artificial(&self, local: usize) -> bool {
        local >= self.batch_node_count
    }

    pub fn first_global_id(&self) -> usize {
        (self.batch_index - 1) * self.delta
    }

    pub fn local_to_global(&self, local: usize) -> Result<usize> {
        if self.is_artificial(local) {
            return Err(Error::NotStreamNode(local));
        }
        Ok(local_to_global(self.batch_index, local, self.delta))
    }

    pub fn global_to_local(&self, global: usize) -> usize {
        global_to_local(self.batch_index, global, self.delta)
    }

    pub fn is_restream(&self) -> bool {
        self.initial_blocks.is_some()
    }
}

/// `local + (i − 1) · δ` for 1-based batch index `i`.
#[inline]
pub fn local_to_global(batch_index: usize, local: usize, delta: usize) -> usize {
    local + (batch_index - 1) * delta
}

#[inline]
pub fn global_to_local(batch_index: usize, global: usize, delta: usize) -> usize {
    global - (batch_index - 1) * delta
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Variant {
    Basic,
    Extended,
    Restream,
}

pub fn build_basic_model(
    batch: &Batch,
    state: &PartitionState,
    cfg: &Config,
) -> Result<ModelGraph> {
    build(batch, state, cfg, Variant::Basic, None)
}

/// Basic model plus ghost nodes, each contracted into a uniformly drawn batch
/// neighbor. Ghosts are processed in ascending global id.
///
/// A ghost's weight goes only to a neighbor that stays within
/// `host_capacity` after absorbing it; the host is drawn among those. When no
/// neighbor qualifies the host is drawn among all neighbors and receives the
/// ghost edges but not its weight.
pub fn build_extended_model(
    batch: &Batch,
    state: &PartitionState,
    cfg: &Config,
    host_capacity: Weight,
    rng: &mut RngStream,
) -> Result<ModelGraph> {
    build(
        batch,
        state,
        cfg,
        Variant::Extended,
        Some((rng, host_capacity)),
    )
}

/// Model for passes after the first: every non-batch neighbor is already
/// placed, so it is represented by its block's artificial node, and batch
/// nodes start in their current blocks.
pub fn build_restream_model(
    batch: &Batch,
    state: &PartitionState,
    cfg: &Config,
) -> Result<ModelGraph> {
    build(batch, state, cfg, Variant::Restream, None)
}

fn build(
    batch: &Batch,
    state: &PartitionState,
    cfg: &Config,
    variant: Variant,
    ghost_hosting: Option<(&mut RngStream, Weight)>,
) -> Result<ModelGraph> {
    let b = batch.len();
    let k = state.k();
    let n = state.node_count();
    let first = batch.first_global_id();
    let delta = cfg.effective_buffer(n).max(b);
    if !first.is_multiple_of(delta) {
        return Err(Error::InvalidConfig(format!(
            "batch starting at {first} is not aligned to the buffer size {delta}"
        )));
    }

    let mut regular: Vec<(NodeId, NodeId, Weight)> = Vec::new();
    let mut ghosts: Vec<(NodeId, NodeId, Weight)> = Vec::new();
    let mut initial_blocks = (variant == Variant::Restream).then(|| Vec::with_capacity(b));

    for (i, (global, _, adj)) in batch.iter().enumerate() {
        if let Some(blocks) = initial_blocks.as_mut() {
            let block = state
                .block_of(global)
                .ok_or(Error::RestreamPrecondition(global))?;
            blocks.push(block);
        }
        for &(nb, w) in adj {
            let nb_idx = nb as usize;
            if nb_idx >= n {
                return Err(Error::CorruptStream {
                    node: global,
                    neighbor: nb_idx,
                    n,
                });
            }
            if batch.contains(nb_idx) {
                // each intra-batch edge is listed on both endpoint lines
                if nb_idx > global {
                    regular.push((i as NodeId, (nb_idx - first) as NodeId, w));
                }
            } else if nb_idx < first || variant == Variant::Restream {
                let block = state.block_of(nb_idx).ok_or(match variant {
                    Variant::Restream => Error::RestreamPrecondition(nb_idx),
                    _ => Error::CorruptStream {
                        node: global,
                        neighbor: nb_idx,
                        n,
                    },
                })?;
                regular.push((i as NodeId, (b + block as usize) as NodeId, w));
            } else if variant == Variant::Extended {
                ghosts.push((nb, i as NodeId, w));
            }
        }
    }

    let mut ghost_mass = vec![0; b];
    let mut ghost_edges = Vec::new();
    if !ghosts.is_empty() {
        let (rng, capacity) = ghost_hosting.expect("extended model needs an rng");
        ghosts.sort_unstable_by_key(|&(g, u, _)| (g, u));
        let mut candidates = Vec::new();
        for group in ghosts.chunk_by(|a, b| a.0 == b.0) {
            candidates.clear();
            candidates.extend((0..group.len()).filter(|&j| {
                let u = group[j].1 as usize;
                batch.node_weight(u) + ghost_mass[u] + GHOST_NODE_WEIGHT <= capacity
            }));
            let absorbs = !candidates.is_empty();
            if !absorbs {
                candidates.extend(0..group.len());
            }
            let host = match candidates.len() {
                1 => candidates[0],
                len => candidates[rng.below(len)],
            };
            let host_node = group[host].1;
            if absorbs {
                ghost_mass[host_node as usize] += GHOST_NODE_WEIGHT;
            }
            for (j, &(_, u, w)) in group.iter().enumerate() {
                if j != host {
                    ghost_edges.push((u, host_node, w));
                }
            }
        }
    }
    drop(ghosts);

    let weight_scale = if ghost_edges.is_empty() {
        1
    } else {
        GHOST_WEIGHT_SCALE
    };
    let mut node_weights = Vec::with_capacity(b + k as usize);
    for i in 0..b {
        node_weights.push(batch.node_weight(i) + ghost_mass[i]);
    }
    let mut artificial: Vec<Weight> = state.block_weights().to_vec();
    if let Some(blocks) = &initial_blocks {
        for (i, &block) in blocks.iter().enumerate() {
            artificial[block as usize] -= batch.node_weight(i);
        }
    }
    node_weights.extend(artificial);

    let edges = regular
        .into_iter()
        .map(|(u, v, w)| (u, v, w * weight_scale))
        .chain(ghost_edges);
    let graph = Graph::from_edges(node_weights, edges);

    Ok(ModelGraph {
        graph,
        batch_node_count: b,
        k,
        batch_index: first / delta + 1,
        delta,
        ghost_mass,
        weight_scale,
        initial_blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Algorithm;

    fn triangle_batch(first: usize) -> Batch {
        let adj: [Vec<(NodeId, Weight)>; 3] = [
            vec![(1, 1), (2, 1)],
            vec![(0, 1), (2, 1)],
            vec![(0, 1), (1, 1)],
        ];
        let end = if first == 0 { 2 } else { 3 };
        Batch::from_nodes(first, (first..end).map(|v| (1, adj[v].clone())))
    }

    fn cfg(k: u32, delta: usize) -> Config {
        Config {
            buffer_size: delta,
            ..Config::new(Algorithm::HeiStream, k)
        }
    }

    #[test]
    fn id_mapping() {
        assert_eq!(local_to_global(1, 0, 32768), 0);
        assert_eq!(local_to_global(3, 5, 100), 205);
        assert_eq!(global_to_local(3, 205, 100), 5);
    }

    #[test]
    fn first_batch_basic() {
        let state = PartitionState::new(3, 2, 2);
        let m = build_basic_model(&triangle_batch(0), &state, &cfg(2, 2)).unwrap();
        assert_eq!(m.node_count(), 4);
        assert_eq!(m.graph.edge_count(), 1);
        assert_eq!(m.graph.edge_weight(0, 1), Some(1));
        assert_eq!(m.graph.node_weight(2), 0);
        assert_eq!(m.graph.node_weight(3), 0);
        assert_eq!(m.graph.degree(2) + m.graph.degree(3), 0);
        assert_eq!(m.local_to_global(1).unwrap(), 1);
        assert!(matches!(m.local_to_global(2), Err(Error::NotStreamNode(2))));
    }

    #[test]
    fn second_batch_merges_artificial_edges() {
        let mut state = PartitionState::new(3, 2, 2);
        state.assign(0, 0, 1).unwrap();
        state.assign(1, 0, 1).unwrap();
        let m = build_basic_model(&triangle_batch(2), &state, &cfg(2, 2)).unwrap();
        assert_eq!(m.batch_index, 2);
        assert_eq!(m.node_count(), 3);
        assert_eq!(m.graph.edge_weight(0, 1), Some(2));
        assert_eq!(m.graph.node_weight(1), 2);
        assert_eq!(m.graph.node_weight(2), 0);
        assert_eq!(m.local_to_global(0).unwrap(), 2);
    }

    #[test]
    fn extended_contracts_shared_ghost() {
        let state = PartitionState::new(3, 2, 2);
        let mut rng = RngStream::new(0);
        let m = build_extended_model(
            &triangle_batch(0),
            &state,
            &cfg(2, 2),
            Weight::MAX,
            &mut rng,
        )
        .unwrap();
        assert_eq!(m.node_count(), 4);
        assert_eq!(m.weight_scale, 2);
        // regular edge {0,1} scaled to 2 plus the half-weight ghost edge
        assert_eq!(m.graph.edge_weight(0, 1), Some(3));
        assert_eq!(m.ghost_mass.iter().sum::<Weight>(), 1);
        let host = m.ghost_mass.iter().position(|&g| g == 1).unwrap();
        assert_eq!(m.graph.node_weight(host), 2);
        assert_eq!(m.graph.node_weight(1 - host), 1);
    }

    #[test]
    fn full_hosts_take_ghost_edges_but_not_weight() {
        let state = PartitionState::new(3, 2, 2);
        let mut rng = RngStream::new(0);
        let m = build_extended_model(&triangle_batch(0), &state, &cfg(2, 2), 1, &mut rng).unwrap();
        assert_eq!(m.ghost_mass, vec![0, 0]);
        assert_eq!(m.graph.edge_weight(0, 1), Some(3));
        assert_eq!(m.graph.total_node_weight(), 2);
    }

    #[test]
    fn extended_single_neighbor_ghost() {
        // path 0-1-2, batch {0,1}: ghost 2 has the single batch neighbor 1
        let batch = Batch::from_nodes(0, [(1, vec![(1, 1)]), (1, vec![(0, 1), (2, 1)])]);
        let state = PartitionState::new(3, 2, 2);
        let mut rng = RngStream::new(0);
        let m = build_extended_model(&batch, &state, &cfg(2, 2), Weight::MAX, &mut rng).unwrap();
        assert_eq!(m.ghost_mass, vec![0, 1]);
        assert_eq!(m.weight_scale, 1);
        assert_eq!(m.graph.edge_count(), 1);
    }

    #[test]
    fn extended_without_forward_edges_equals_basic() {
        let mut state = PartitionState::new(3, 2, 2);
        state.assign(0, 1, 1).unwrap();
        state.assign(1, 0, 1).unwrap();
        let mut rng = RngStream::new(0);
        let c = cfg(2, 2);
        let basic = build_basic_model(&triangle_batch(2), &state, &c).unwrap();
        let ext =
            build_extended_model(&triangle_batch(2), &state, &c, Weight::MAX, &mut rng).unwrap();
        assert_eq!(basic, ext);
        assert!(basic.graph.edge_weight(0, 1).is_some() && basic.graph.edge_weight(0, 2).is_some());
    }

    #[test]
    fn restream_model() {
        let mut state = PartitionState::new(3, 2, 3);
        for v in 0..3 {
            state.assign(v, 0, 1).unwrap();
        }
        let m = build_restream_model(&triangle_batch(2), &state, &cfg(2, 2)).unwrap();
        assert_eq!(m.graph.node_weight(1), 2);
        assert_eq!(m.graph.node_weight(2), 0);
        assert_eq!(m.initial_blocks, Some(vec![0]));

        // forward neighbor already placed in block 1 connects to artificial 1
        let mut state = PartitionState::new(3, 2, 3);
        state.assign(0, 0, 1).unwrap();
        state.assign(1, 0, 1).unwrap();
        state.assign(2, 1, 1).unwrap();
        let m = build_restream_model(&triangle_batch(0), &state, &cfg(2, 2)).unwrap();
        assert_eq!(m.graph.edge_weight(0, 3), Some(1));
        assert_eq!(m.graph.edge_weight(1, 3), Some(1));
        assert_eq!(m.graph.node_weight(2), 0);
        assert_eq!(m.graph.node_weight(3), 1);
    }

    #[test]
    fn restream_whole_graph_has_empty_artificials() {
        let mut state = PartitionState::new(3, 2, 3);
        for v in 0..3 {
            state.assign(v, (v % 2) as BlockId, 1).unwrap();
        }
        let batch = Batch::from_nodes(
            0,
            [
                (1, vec![(1, 1), (2, 1)]),
                (1, vec![(0, 1), (2, 1)]),
                (1, vec![(0, 1), (1, 1)]),
            ],
        );
        let m = build_restream_model(&batch, &state, &cfg(2, 3)).unwrap();
        assert_eq!(m.graph.node_weight(3), 0);
        assert_eq!(m.graph.node_weight(4), 0);
    }

    #[test]
    fn restream_requires_full_assignment() {
        let state = PartitionState::new(3, 2, 3);
        assert!(matches!(
            build_restream_model(&triangle_batch(0), &state, &cfg(2, 2)),
            Err(Error::RestreamPrecondition(_))
        ));
    }
}
