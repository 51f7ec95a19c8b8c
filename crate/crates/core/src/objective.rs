//! Scoring functions shared by the streaming algorithms: the generalized
//! weighted Fennel gain, the LDG score, and block selection.

use crate::error::{Error, Result};
use crate::graph::{BlockId, Weight};
use crate::rng::RngStream;

/// Fennel's α for γ = 3/2: `√k · m / n^{3/2}`.
pub fn alpha(n: usize, m: usize, k: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidConfig(
            "α is undefined for an empty graph".into(),
        ));
    }
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    let n = n as f64;
    Ok((k as f64).sqrt() * m as f64 / (n * n.sqrt()))
}

/// General form `m · k^{γ-1} / n^γ`.
pub fn alpha_for_gamma(n: usize, m: usize, k: u32, gamma: f64) -> Result<f64> {
    if gamma == 1.5 {
        return alpha(n, m, k);
    }
    if n == 0 || k == 0 {
        return alpha(n, m, k);
    }
    Ok(m as f64 * (k as f64).powf(gamma - 1.0) / (n as f64).powf(gamma))
}

/// Everything needed to evaluate the generalized Fennel gain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FennelParams {
    pub alpha: f64,
    pub gamma: f64,
    pub tuning: f64,
    pub l_max: Weight,
    pub use_approx_pow: bool,
    /// `tuning · α · γ`, cached.
    scale: f64,
}

impl FennelParams {
    pub fn new(alpha: f64, gamma: f64, tuning: f64, l_max: Weight) -> Self {
        Self {
            alpha,
            gamma,
            tuning,
            l_max,
            use_approx_pow: false,
            scale: tuning * alpha * gamma,
        }
    }

    pub fn with_approx_pow(mut self, on: bool) -> Self {
        self.use_approx_pow = on;
        self
    }

    /// `f(c(V_i)) = tuning · α · γ · c(V_i)^{γ-1}`.
    #[inline]
    pub fn penalty(&self, block_weight: Weight) -> f64 {
        if block_weight == 0 {
            return 0.0;
        }
        let w = block_weight as f64;
        let p = self.gamma - 1.0;
        let powered = if self.use_approx_pow {
            fast_pow(w, p)
        } else if p == 0.5 {
            w.sqrt()
        } else {
            w.powf(p)
        };
        self.scale * powered
    }

    /// `connectivity − c(u) · f(c(V_i))`.
    #[inline]
    pub fn gain(&self, connectivity: f64, node_weight: Weight, block_weight: Weight) -> f64 {
        connectivity - node_weight as f64 * self.penalty(block_weight)
    }
}

/// Free-function form of [`FennelParams::penalty`].
pub fn fennel_penalty(block_weight: Weight, params: &FennelParams) -> f64 {
    params.penalty(block_weight)
}

/// Free-function form of [`FennelParams::gain`].
pub fn fennel_gain(
    connectivity: f64,
    node_weight: Weight,
    block_weight: Weight,
    params: &FennelParams,
) -> f64 {
    params.gain(connectivity, node_weight, block_weight)
}

/// LDG's `|V_i ∩ N(v)| · (1 − c(V_i) / L_max)`.
#[inline]
pub fn ldg_score(shared_neighbors: f64, block_weight: Weight, l_max: Weight) -> f64 {
    shared_neighbors * (1.0 - block_weight as f64 / l_max as f64)
}

// log2(1 + t) on [0, 1], max abs error ~1.5e-5
const LOG2_POLY: [f64; 6] = [
    1.435_410_589_833_985_3e-5,
    1.441_592_706_910_897_8,
    -0.707_256_361_964_166,
    0.411_566_809_019_666_47,
    -0.189_836_406_482_674_27,
    0.043_929_570_830_784_6,
];

// 2^t on [0, 1], max rel error ~3.6e-6
const EXP2_POLY: [f64; 5] = [
    1.000_003_590_014_276_5,
    0.692_969_620_634_752_8,
    0.241_621_163_056_210_8,
    0.051_717_826_504_488_03,
    0.013_683_996_547_336_078,
];

#[inline]
fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

/// `x^p` for `x ≥ 1` by splitting the IEEE exponent from the mantissa:
/// `log2 x` is the unbiased exponent plus a polynomial in the mantissa, and
/// the result is rebuilt by writing the integer part of `p·log2 x` straight
/// into the exponent bits. Relative error stays below 1e-4 on `[1, 2^40]`.
pub fn fast_pow(x: f64, p: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let bits = x.to_bits();
    let exponent = ((bits >> 52) & 0x7ff) as i64 - 1023;
    let mantissa = f64::from_bits((bits & 0x000f_ffff_ffff_ffff) | (1023u64 << 52));
    let log2 = exponent as f64 + horner(&LOG2_POLY, mantissa - 1.0);
    let y = p * log2;
    let whole = y.floor();
    let frac = y - whole;
    let scale = f64::from_bits(((whole as i64 + 1023) as u64) << 52);
    scale * horner(&EXP2_POLY, frac)
}

/// Outcome of a block choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Selection {
    pub block: BlockId,
    /// True when no block was feasible and the lightest one was taken.
    pub fallback: bool,
}

/// Picks the feasible block with the highest score.
///
/// Ties are broken by a single uniform draw over all maximizers, and exactly
/// one draw is consumed per call whatever the outcome. When no block is
/// feasible the lightest block is returned (ties again drawn uniformly) and
/// the selection is flagged as a fallback.
pub fn select_block(
    scores: &[f64],
    feasible: &[bool],
    block_weights: &[Weight],
    rng: &mut RngStream,
) -> Result<Selection> {
    if scores.is_empty() {
        return Err(Error::InvalidConfig(
            "cannot select among k = 0 blocks".into(),
        ));
    }
    debug_assert_eq!(scores.len(), feasible.len());
    debug_assert_eq!(scores.len(), block_weights.len());

    let mut best = f64::NEG_INFINITY;
    let mut count = 0usize;
    for (i, &s) in scores.iter().enumerate() {
        if !feasible[i] {
            continue;
        }
        if count == 0 || s > best {
            best = s;
            count = 1;
        } else if s == best {
            count += 1;
        }
    }
    if count > 0 {
        let pick = rng.below(count);
        let block = (0..scores.len())
            .filter(|&i| feasible[i] && scores[i] == best)
            .nth(pick)
            .expect("pick is within the maximizer count");
        return Ok(Selection {
            block: block as BlockId,
            fallback: false,
        });
    }

    let lightest = *block_weights.iter().min().expect("non-empty");
    let count = block_weights.iter().filter(|&&w| w == lightest).count();
    let pick = rng.below(count);
    let block = (0..block_weights.len())
        .filter(|&i| block_weights[i] == lightest)
        .nth(pick)
        .expect("pick is within the lightest count");
    Ok(Selection {
        block: block as BlockId,
        fallback: true,
    })
}
