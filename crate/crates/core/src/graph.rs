//! Weighted undirected graph in compressed adjacency form.

use serde::{Deserialize, Serialize};

pub type NodeId = u32;
pub type BlockId = u32;
pub type Weight = u64;

/// Undirected graph with positive edge weights and non-negative node weights.
///
/// Every edge `{u, v}` is stored in both adjacency lists with the same weight.
/// Self-loops are never stored and parallel edges are merged at construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    xadj: Vec<usize>,
    adjncy: Vec<NodeId>,
    adjwgt: Vec<Weight>,
    vwgt: Vec<Weight>,
    total_node_weight: Weight,
}

impl Graph {
    /// Builds a graph from an undirected edge list.
    ///
    /// Each `(u, v, w)` is inserted in both directions. Self-loops are dropped
    /// and parallel edges are merged by summing their weights. Zero-weight
    /// edges are dropped.
    pub fn from_edges<I>(node_weights: Vec<Weight>, edges: I) -> Self
    where
        I: IntoIterator<Item = (NodeId, NodeId, Weight)>,
    {
        let n = node_weights.len();
        let edges: Vec<_> = edges
            .into_iter()
            .filter(|&(u, v, w)| u != v && w > 0)
            .collect();

        let mut degree = vec![0usize; n + 1];
        for &(u, v, _) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut xadj = vec![0usize; n + 1];
        for v in 0..n {
            xadj[v + 1] = xadj[v] + degree[v];
        }
        let mut fill = xadj.clone();
        let mut adj = vec![(0 as NodeId, 0 as Weight); xadj[n]];
        for &(u, v, w) in &edges {
            adj[fill[u as usize]] = (v, w);
            fill[u as usize] += 1;
            adj[fill[v as usize]] = (u, w);
            fill[v as usize] += 1;
        }
        drop(edges);

        // Sort every list and merge duplicates, compacting in place.
        let mut write = 0usize;
        let mut new_xadj = vec![0usize; n + 1];
        for v in 0..n {
            let (start, end) = (xadj[v], xadj[v + 1]);
            adj[start..end].sort_unstable_by_key(|&(u, _)| u);
            let list_start = write;
            for i in start..end {
                let (u, w) = adj[i];
                if write > list_start && adj[write - 1].0 == u {
                    adj[write - 1].1 += w;
                } else {
                    adj[write] = (u, w);
                    write += 1;
                }
            }
            new_xadj[v + 1] = write;
        }
        adj.truncate(write);

        let (adjncy, adjwgt) = adj.into_iter().unzip();
        Self::from_csr(new_xadj, adjncy, adjwgt, node_weights)
    }

    /// Builds a unit-weight graph from an undirected edge list.
    pub fn unweighted<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Self::from_edges(vec![1; n], edges.into_iter().map(|(u, v)| (u, v, 1)))
    }

    /// Assembles a graph from raw CSR arrays. The caller guarantees symmetry,
    /// absence of self-loops and absence of parallel edges.
    pub(crate) fn from_csr(
        xadj: Vec<usize>,
        adjncy: Vec<NodeId>,
        adjwgt: Vec<Weight>,
        vwgt: Vec<Weight>,
    ) -> Self {
        debug_assert_eq!(xadj.len(), vwgt.len() + 1);
        debug_assert_eq!(adjncy.len(), adjwgt.len());
        let total_node_weight = vwgt.iter().sum();
        Self {
            xadj,
            adjncy,
            adjwgt,
            vwgt,
            total_node_weight,
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.vwgt.len()
    }

    /// Number of undirected edges.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.adjncy.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.xadj[v + 1] - self.xadj[v]
    }

    #[inline]
    pub fn node_weight(&self, v: usize) -> Weight {
        self.vwgt[v]
    }

    pub fn node_weights(&self) -> &[Weight] {
        &self.vwgt
    }

    pub fn total_node_weight(&self) -> Weight {
        self.total_node_weight
    }

    /// Sum of all undirected edge weights.
    pub fn total_edge_weight(&self) -> Weight {
        self.adjwgt.iter().sum::<Weight>() / 2
    }

    #[inline]
    pub fn neighbor_ids(&self, v: usize) -> &[NodeId] {
        &self.adjncy[self.xadj[v]..self.xadj[v + 1]]
    }

    #[inline]
    pub fn neighbor_weights(&self, v: usize) -> &[Weight] {
        &self.adjwgt[self.xadj[v]..self.xadj[v + 1]]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (NodeId, Weight)> + '_ {
        self.neighbor_ids(v)
            .iter()
            .copied()
            .zip(self.neighbor_weights(v).iter().copied())
    }

    /// Weight of edge `{u, v}`, if present.
    pub fn edge_weight(&self, u: usize, v: usize) -> Option<Weight> {
        let ids = self.neighbor_ids(u);
        ids.binary_search(&(v as NodeId))
            .ok()
            .map(|i| self.neighbor_weights(u)[i])
    }

    /// Full adjacency scan of the structural invariants: symmetric weights,
    /// sorted lists, no self-loops, no parallel edges, positive edge weights.
    pub fn check_invariants(&self) -> bool {
        let n = self.node_count();
        for v in 0..n {
            let ids = self.neighbor_ids(v);
            if ids.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for (u, w) in self.neighbors(v) {
                if u as usize == v || u as usize >= n || w == 0 {
                    return false;
                }
                if self.edge_weight(u as usize, v) != Some(w) {
                    return false;
                }
            }
        }
        self.total_node_weight == self.vwgt.iter().sum::<Weight>()
    }
}
