//! One-pass baselines (Hashing, LDG, Fennel) and restreaming ReFennel.

use crate::config::{Algorithm, Config};
use crate::error::Result;
use crate::graph::{BlockId, Weight};
use crate::graph_io::{GraphStream, StreamSource};
use crate::objective::{alpha_for_gamma, ldg_score, select_block, FennelParams};
use crate::partition::lightest;
use crate::rng::RngStream;

use super::clock::Stopwatch;
use super::{Run, RunResult};

#[derive(Clone, Copy)]
enum Score {
    Fennel(FennelParams),
    Ldg,
}

struct Scratch {
    conn: Vec<Weight>,
    scores: Vec<f64>,
    feasible: Vec<bool>,
}

impl Scratch {
    fn new(k: usize) -> Self {
        Self {
            conn: vec![0; k],
            scores: vec![0.0; k],
            feasible: vec![false; k],
        }
    }
}

/// Streams one pass, placing every node greedily under `score`. On passes
/// after the first the node is lifted out of its block before scoring, so
/// all block weights reflect the other nodes only.
fn greedy_pass<S: StreamSource>(
    run: &mut Run,
    stream: &mut GraphStream<S>,
    pass: u32,
    score: Score,
    rng: &mut RngStream,
    scratch: &mut Scratch,
) -> Result<()> {
    let k = run.cfg.k as usize;
    let l_max = run.state.l_max();
    run.begin_pass(stream, pass)?;
    while let Some(batch) = run.next_batch(stream)? {
        let t = Stopwatch::start();
        for (global, weight, adj) in batch.iter() {
            if pass > 1 {
                run.state.unassign(global, weight);
            }
            for &(u, w) in adj {
                if let Some(b) = run.state.block_of(u as usize) {
                    scratch.conn[b as usize] += w;
                }
            }
            let weights = run.state.block_weights();
            for j in 0..k {
                let conn = scratch.conn[j] as f64;
                scratch.scores[j] = match score {
                    Score::Fennel(params) => params.gain(conn, weight, weights[j]),
                    Score::Ldg => ldg_score(conn, weights[j], l_max),
                };
                scratch.feasible[j] = weights[j] + weight <= l_max;
                scratch.conn[j] = 0;
            }
            if let Score::Ldg = score {
                restrict_to_lightest_maximizers(&scratch.scores, &mut scratch.feasible, weights);
            }
            let pick = select_block(&scratch.scores, &scratch.feasible, weights, rng)?;
            if pick.fallback {
                run.fallbacks += 1;
                log::debug!(
                    "node {global}: no block has room, using lightest block {}",
                    pick.block
                );
            }
            run.state.assign(global, pick.block, weight)?;
            run.account(global, adj, pass == 1);
        }
        run.times.partition += t.ms();
    }
    run.end_pass();
    Ok(())
}

/// LDG prefers the lighter block among equally scored ones, which also
/// sends nodes without placed neighbors to the lightest feasible block.
fn restrict_to_lightest_maximizers(scores: &[f64], feasible: &mut [bool], weights: &[Weight]) {
    let best = scores
        .iter()
        .zip(feasible.iter())
        .filter(|(_, &f)| f)
        .map(|(&s, _)| s)
        .fold(f64::NEG_INFINITY, f64::max);
    let lightest = (0..scores.len())
        .filter(|&j| feasible[j] && scores[j] == best)
        .map(|j| weights[j])
        .min();
    if let Some(lightest) = lightest {
        for j in 0..scores.len() {
            feasible[j] = feasible[j] && scores[j] == best && weights[j] == lightest;
        }
    }
}

fn one_pass(cfg: &Config) -> Config {
    if cfg.passes > 1 {
        log::warn!(
            "{} makes a single pass; ignoring passes = {}",
            cfg.algorithm,
            cfg.passes
        );
    }
    Config {
        passes: 1,
        ..cfg.clone()
    }
}

fn fennel_params(
    stream_n: usize,
    stream_m: usize,
    cfg: &Config,
    l_max: Weight,
) -> Result<FennelParams> {
    let alpha = alpha_for_gamma(stream_n, stream_m, cfg.k, cfg.gamma)?;
    Ok(
        FennelParams::new(alpha, cfg.gamma, cfg.effective_alpha_tuning(), l_max)
            .with_approx_pow(cfg.use_approx_pow),
    )
}

/// One-pass Fennel: every node goes to the feasible block maximizing
/// `|V_i ∩ N(v)| − α γ c(V_i)^{γ−1}` over its already placed neighbors.
pub fn run_fennel<S: StreamSource>(stream: &mut GraphStream<S>, cfg: &Config) -> Result<RunResult> {
    run_fennel_passes(stream, &one_pass(cfg), Algorithm::Fennel)
}

/// Fennel followed by `cfg.passes − 1` restreaming passes with the same
/// objective and the current block weights.
pub fn run_refennel<S: StreamSource>(
    stream: &mut GraphStream<S>,
    cfg: &Config,
) -> Result<RunResult> {
    run_fennel_passes(stream, cfg, Algorithm::ReFennel)
}

fn run_fennel_passes<S: StreamSource>(
    stream: &mut GraphStream<S>,
    cfg: &Config,
    algorithm: Algorithm,
) -> Result<RunResult> {
    let mut run = Run::start(stream, cfg)?;
    let params = fennel_params(
        stream.node_count(),
        stream.edge_count(),
        &run.cfg,
        run.state.l_max(),
    )?;
    let mut rng = RngStream::new(run.cfg.seed);
    let mut scratch = Scratch::new(run.cfg.k as usize);
    for pass in 1..=run.cfg.passes {
        greedy_pass(
            &mut run,
            stream,
            pass,
            Score::Fennel(params),
            &mut rng,
            &mut scratch,
        )?;
    }
    Ok(run.finish(algorithm))
}

/// Linear deterministic greedy: maximize `|V_i ∩ N(v)| · (1 − c(V_i)/L_max)`.
pub fn run_ldg<S: StreamSource>(stream: &mut GraphStream<S>, cfg: &Config) -> Result<RunResult> {
    let mut run = Run::start(stream, &one_pass(cfg))?;
    let mut rng = RngStream::new(run.cfg.seed);
    let mut scratch = Scratch::new(run.cfg.k as usize);
    greedy_pass(&mut run, stream, 1, Score::Ldg, &mut rng, &mut scratch)?;
    Ok(run.finish(Algorithm::Ldg))
}

/// SplitMix64 finalizer over `seed` and `id`.
pub fn seeded_hash(seed: u64, id: u64) -> u64 {
    let mut z = seed ^ id.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hashing: block `hash(id) mod k`. A node whose hashed block has no room
/// goes to the lightest block instead; only when even that block is full is
/// the decision counted as a fallback.
pub fn run_hashing<S: StreamSource>(
    stream: &mut GraphStream<S>,
    cfg: &Config,
) -> Result<RunResult> {
    let mut run = Run::start(stream, &one_pass(cfg))?;
    let k = run.cfg.k as u64;
    let seed = run.cfg.seed;
    let l_max = run.state.l_max();
    run.begin_pass(stream, 1)?;
    while let Some(batch) = run.next_batch(stream)? {
        let t = Stopwatch::start();
        for (global, weight, adj) in batch.iter() {
            let mut block = (seeded_hash(seed, global as u64) % k) as BlockId;
            let weights = run.state.block_weights();
            if weights[block as usize] + weight > l_max {
                block = lightest(weights);
                if weights[block as usize] + weight > l_max {
                    run.fallbacks += 1;
                }
            }
            run.state.assign(global, block, weight)?;
            run.account(global, adj, true);
        }
        run.times.partition += t.ms();
    }
    run.end_pass();
    Ok(run.finish(Algorithm::Hashing))
}
