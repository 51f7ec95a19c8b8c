//! Block assignment bookkeeping and the balance bound.

use crate::error::{Error, Result};
use crate::graph::{BlockId, Weight};

const UNASSIGNED: BlockId = BlockId::MAX;

/// Imbalance is resolved in units of 1/10000.
const EPS_SCALE: u128 = 10_000;

/// Converts an imbalance fraction into integer units of 1e-4.
pub(crate) fn epsilon_units(epsilon: f64) -> Result<u128> {
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "epsilon must be a non-negative number, got {epsilon}"
        )));
    }
    let scaled = epsilon * EPS_SCALE as f64;
    let units = scaled.round();
    if (scaled - units).abs() > 1e-6 {
        return Err(Error::InvalidConfig(format!(
            "epsilon must be a multiple of 0.0001, got {epsilon}"
        )));
    }
    Ok(units as u128)
}

/// `⌈(1 + ε) · total_weight / k⌉`, evaluated in integer arithmetic.
pub fn compute_lmax(total_weight: Weight, k: u32, epsilon: f64) -> Result<Weight> {
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    let units = epsilon_units(epsilon)?;
    let num = (EPS_SCALE + units) * total_weight as u128;
    let den = EPS_SCALE * k as u128;
    Ok(num.div_ceil(den) as Weight)
}

/// Per-node block assignment over all global nodes plus running block weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionState {
    assignment: Vec<BlockId>,
    block_weights: Vec<Weight>,
    k: u32,
    l_max: Weight,
}

impl PartitionState {
    pub fn new(n: usize, k: u32, l_max: Weight) -> Self {
        Self {
            assignment: vec![UNASSIGNED; n],
            block_weights: vec![0; k as usize],
            k,
            l_max,
        }
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l_max(&self) -> Weight {
        self.l_max
    }

    pub fn block_weights(&self) -> &[Weight] {
        &self.block_weights
    }

    #[inline]
    pub fn block_of(&self, node: usize) -> Option<BlockId> {
        match self.assignment[node] {
            UNASSIGNED => None,
            b => Some(b),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.assignment.iter().all(|&b| b != UNASSIGNED)
    }

    /// The full assignment, or the first unassigned node.
    pub fn assignment(&self) -> Result<Vec<BlockId>> {
        match self.assignment.iter().position(|&b| b == UNASSIGNED) {
            Some(v) => Err(Error::Unassigned(v)),
            None => Ok(self.assignment.clone()),
        }
    }

    /// Records `node → block`. If the node already sits in a block, `weight`
    /// is debited from that block first.
    pub fn assign(&mut self, node: usize, block: BlockId, weight: Weight) -> Result<()> {
        if block >= self.k {
            return Err(Error::InvalidBlock { block, k: self.k });
        }
        if let Some(old) = self.block_of(node) {
            self.block_weights[old as usize] -= weight;
        }
        self.assignment[node] = block;
        self.block_weights[block as usize] += weight;
        Ok(())
    }

    /// Removes `node` from its block, returning the block it occupied.
    pub fn unassign(&mut self, node: usize, weight: Weight) -> Option<BlockId> {
        let old = self.block_of(node)?;
        self.block_weights[old as usize] -= weight;
        self.assignment[node] = UNASSIGNED;
        Some(old)
    }

    /// Index of the lightest block; ties go to the lowest id.
    pub fn lightest_block(&self) -> BlockId {
        lightest(&self.block_weights)
    }

    pub fn is_balanced(&self) -> bool {
        self.block_weights.iter().all(|&w| w <= self.l_max)
    }
}

pub(crate) fn lightest(weights: &[Weight]) -> BlockId {
    let mut best = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w < weights[best] {
            best = i;
        }
    }
    best as BlockId
}
