use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::epsilon_units;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    HeiStream,
    Fennel,
    ReFennel,
    Ldg,
    Hashing,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::HeiStream,
        Algorithm::Fennel,
        Algorithm::ReFennel,
        Algorithm::Ldg,
        Algorithm::Hashing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::HeiStream => "heistream",
            Algorithm::Fennel => "fennel",
            Algorithm::ReFennel => "refennel",
            Algorithm::Ldg => "ldg",
            Algorithm::Hashing => "hashing",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown algorithm '{s}'")))
    }
}

/// Which model graph HeiStream builds on its first pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// Batch-induced subgraph plus artificial block nodes.
    Basic,
    /// Basic model plus ghost nodes contracted into random batch neighbors.
    Extended,
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "basic" => Ok(ModelKind::Basic),
            "extended" => Ok(ModelKind::Extended),
            _ => Err(Error::InvalidConfig(format!("unknown model kind '{s}'"))),
        }
    }
}

/// Run configuration shared by all streaming algorithms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub algorithm: Algorithm,
    pub k: u32,
    pub epsilon: f64,
    /// Nodes per batch.
    pub buffer_size: usize,
    pub model_kind: ModelKind,
    pub passes: u32,
    /// Label-propagation rounds per coarsening level.
    pub coarsening_rounds: u32,
    /// Label-propagation rounds per level during uncoarsening.
    pub local_search_rounds: u32,
    /// Coarsest-model size factor.
    pub x: u32,
    /// Multiplier on Fennel's α. `None` picks the per-algorithm default.
    pub alpha_tuning: Option<f64>,
    pub gamma: f64,
    pub use_approx_pow: bool,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::HeiStream,
            k: 2,
            epsilon: 0.03,
            buffer_size: 32_768,
            model_kind: ModelKind::Extended,
            passes: 1,
            coarsening_rounds: 5,
            local_search_rounds: 5,
            x: 4,
            alpha_tuning: None,
            gamma: 1.5,
            use_approx_pow: false,
            seed: 0,
        }
    }
}

impl Config {
    pub fn new(algorithm: Algorithm, k: u32) -> Self {
        Self {
            algorithm,
            k,
            ..Self::default()
        }
    }

    /// α multiplier in effect: 0.5 for HeiStream, 1.0 for the Fennel baselines.
    pub fn effective_alpha_tuning(&self) -> f64 {
        self.alpha_tuning.unwrap_or(match self.algorithm {
            Algorithm::HeiStream => 0.5,
            _ => 1.0,
        })
    }

    /// Checks the configuration against a graph of `n` nodes. A buffer larger
    /// than `n` is clamped by the caller, not rejected.
    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        epsilon_units(self.epsilon)?;
        if self.buffer_size == 0 {
            return bad("buffer size must be at least 1".into());
        }
        if self.passes == 0 {
            return bad("passes must be at least 1".into());
        }
        if self.x == 0 {
            return bad("x must be at least 1".into());
        }
        if self.coarsening_rounds == 0 || self.local_search_rounds == 0 {
            return bad("label propagation needs at least one round".into());
        }
        if !(self.gamma > 1.0 && self.gamma.is_finite()) {
            return bad(format!("gamma must exceed 1, got {}", self.gamma));
        }
        let tuning = self.effective_alpha_tuning();
        if !(tuning > 0.0 && tuning.is_finite()) {
            return bad(format!("alpha tuning must be positive, got {tuning}"));
        }
        if self.k as usize > n && n > 0 {
            log::warn!("k = {} exceeds the node count {n}", self.k);
        }
        Ok(())
    }

    /// Batch size actually used for a graph with `n` nodes.
    pub fn effective_buffer(&self, n: usize) -> usize {
        self.buffer_size.min(n.max(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_headline_configuration() {
        let c = Config::default();
        assert_eq!(c.buffer_size, 32_768);
        assert_eq!(c.epsilon, 0.03);
        assert_eq!(c.x, 4);
        assert_eq!(c.local_search_rounds, 5);
        assert_eq!(c.coarsening_rounds, 5);
        assert_eq!(c.model_kind, ModelKind::Extended);
        assert_eq!(c.effective_alpha_tuning(), 0.5);
        assert_eq!(
            Config::new(Algorithm::Fennel, 4).effective_alpha_tuning(),
            1.0
        );
    }

    #[test]
    fn validation() {
        assert!(Config::new(Algorithm::Ldg, 0).validate(10).is_err());
        let c = Config {
            passes: 0,
            ..Config::default()
        };
        assert!(c.validate(10).is_err());
        assert!(Config::default().validate(10).is_ok());
        assert_eq!(Config::default().effective_buffer(10), 10);
    }

    #[test]
    fn parse_names() {
        assert_eq!(
            "HeiStream".parse::<Algorithm>().unwrap(),
            Algorithm::HeiStream
        );
        assert_eq!("ldg".parse::<Algorithm>().unwrap(), Algorithm::Ldg);
        assert!("metis".parse::<Algorithm>().is_err());
        assert_eq!("basic".parse::<ModelKind>().unwrap(), ModelKind::Basic);
    }
}
