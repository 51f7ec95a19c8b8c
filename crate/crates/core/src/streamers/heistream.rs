use crate::config::{Algorithm, Config, ModelKind};
use crate::error::Result;
use crate::graph_io::{GraphStream, StreamSource};
use crate::model::{build_basic_model, build_extended_model, build_restream_model};
use crate::multilevel::{cluster_weight_bound, partition_model};
use crate::objective::{alpha_for_gamma, FennelParams};
use crate::rng::RngStream;

use super::clock::Stopwatch;
use super::{Run, RunResult};

/// Buffered streaming partitioning: for every batch, build a model graph,
/// partition it with multilevel weighted Fennel, and commit the batch nodes.
///
/// The first pass uses the configured model kind; later passes rebuild the
/// model from the current assignment and skip initial partitioning.
pub fn run_heistream<S: StreamSource>(
    stream: &mut GraphStream<S>,
    cfg: &Config,
) -> Result<RunResult> {
    let mut run = Run::start(stream, cfg)?;
    let cfg = run.cfg.clone();
    let k = cfg.k;
    let l_max = run.state.l_max();
    let alpha = alpha_for_gamma(stream.node_count(), stream.edge_count(), k, cfg.gamma)?;
    let params = FennelParams::new(alpha, cfg.gamma, cfg.effective_alpha_tuning(), l_max)
        .with_approx_pow(cfg.use_approx_pow);
    let max_cluster_weight = cluster_weight_bound(stream.total_node_weight(), k, l_max);
    let mut rng = RngStream::new(cfg.seed);

    for pass in 1..=cfg.passes {
        run.begin_pass(stream, pass)?;
        while let Some(batch) = run.next_batch(stream)? {
            let t = Stopwatch::start();
            let model = if pass == 1 {
                match cfg.model_kind {
                    ModelKind::Basic => build_basic_model(&batch, &run.state, &cfg)?,
                    ModelKind::Extended => build_extended_model(
                        &batch,
                        &run.state,
                        &cfg,
                        max_cluster_weight,
                        &mut rng,
                    )?,
                }
            } else {
                build_restream_model(&batch, &run.state, &cfg)?
            };
            run.times.model += t.ms();

            let t = Stopwatch::start();
            let result = partition_model(&model, &cfg, &params, max_cluster_weight, &mut rng);
            run.times.partition += t.ms();
            run.fallbacks += result.fallbacks;

            // ghost mass stays behind: only the stream weight is committed
            for (i, (global, weight, _)) in batch.iter().enumerate() {
                run.state.assign(global, result.blocks[i], weight)?;
            }
            for (global, _, adj) in batch.iter() {
                run.account(global, adj, pass == 1);
            }
        }
        run.end_pass();
    }
    Ok(run.finish(Algorithm::HeiStream))
}
