use crate::graph::{BlockId, Graph, Weight};
use crate::objective::FennelParams;
use crate::rng::RngStream;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LocalSearchStats {
    pub moves: usize,
    pub rounds: u32,
    /// Sum of the gain improvements of all accepted moves.
    pub total_gain: f64,
    /// Smallest improvement among accepted moves (infinite when none).
    pub min_gain: f64,
}

/// Label-propagation refinement under the generalized Fennel gain.
///
/// Movable nodes (`0..movable`) are visited in a seeded random order each
/// round. A node may move only to a block that holds one of its neighbors,
/// artificial neighbors included. The current block is scored as if the node
/// had already left it, each target at its weight before the move; a move
/// needs room under `L_max` and a strictly better score. Fixed nodes never
/// move. Stops early after a round without moves.
pub fn local_search(
    graph: &Graph,
    movable: usize,
    assignment: &mut [BlockId],
    params: &FennelParams,
    edge_scale: Weight,
    rounds: u32,
    k: usize,
    rng: &mut RngStream,
) -> LocalSearchStats {
    let scale = edge_scale as f64;
    let mut block_weights = vec![0 as Weight; k];
    for (v, &b) in assignment.iter().enumerate() {
        block_weights[b as usize] += graph.node_weight(v);
    }

    let mut stats = LocalSearchStats {
        min_gain: f64::INFINITY,
        ..Default::default()
    };
    let mut order: Vec<u32> = (0..movable as u32).collect();
    let mut conn = vec![0 as Weight; k];
    let mut touched: Vec<BlockId> = Vec::new();

    for _ in 0..rounds {
        stats.rounds += 1;
        rng.shuffle(&mut order);
        let mut moved = 0usize;
        for &v in &order {
            let v = v as usize;
            let current = assignment[v];
            for (u, w) in graph.neighbors(v) {
                let b = assignment[u as usize];
                if conn[b as usize] == 0 {
                    touched.push(b);
                }
                conn[b as usize] += w;
            }
            if touched.is_empty() {
                continue;
            }

            let cv = graph.node_weight(v);
            let stay = params.gain(
                conn[current as usize] as f64 / scale,
                cv,
                block_weights[current as usize] - cv,
            );
            let mut best: Option<BlockId> = None;
            let mut best_score = stay;
            let mut ties = 0usize;
            for &b in &touched {
                if b == current || block_weights[b as usize] + cv > params.l_max {
                    continue;
                }
                let score = params.gain(
                    conn[b as usize] as f64 / scale,
                    cv,
                    block_weights[b as usize],
                );
                if score > best_score {
                    best = Some(b);
                    best_score = score;
                    ties = 1;
                } else if score == best_score && best.is_some() {
                    ties += 1;
                    if rng.below(ties) == 0 {
                        best = Some(b);
                    }
                }
            }
            for &b in &touched {
                conn[b as usize] = 0;
            }
            touched.clear();

            if let Some(target) = best {
                block_weights[current as usize] -= cv;
                block_weights[target as usize] += cv;
                assignment[v] = target;
                moved += 1;
                let gain = best_score - stay;
                stats.total_gain += gain;
                stats.min_gain = stats.min_gain.min(gain);
            }
        }
        stats.moves += moved;
        if moved == 0 {
            break;
        }
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_follows_its_neighbors() {
        // only node 0 moves; its neighbors 1, 2, 3 are pinned in block 1
        let g = Graph::from_edges(vec![1, 1, 1, 1], [(0, 1, 1), (0, 2, 1), (0, 3, 1)]);
        let mut a = vec![0, 1, 1, 1];
        let params = FennelParams::new(0.1, 1.5, 1.0, 10);
        let stats = local_search(&g, 1, &mut a, &params, 1, 5, 2, &mut RngStream::new(3));
        assert_eq!(a, vec![1, 1, 1, 1]);
        assert_eq!(stats.moves, 1);
        // gain: (3 − 0.15·√3) − (0 − 0)
        assert!((stats.total_gain - (3.0 - 0.15 * 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn full_target_is_never_entered() {
        let g = Graph::from_edges(vec![1, 1, 1, 1], [(0, 1, 1), (0, 2, 1), (0, 3, 1)]);
        let mut a = vec![0, 1, 1, 1];
        let params = FennelParams::new(0.1, 1.5, 1.0, 3);
        let stats = local_search(&g, 1, &mut a, &params, 1, 5, 2, &mut RngStream::new(3));
        assert_eq!(a[0], 0);
        assert_eq!(stats.moves, 0);
    }
}
