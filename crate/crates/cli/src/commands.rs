use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use heistream::generators::{erdos_renyi, grid, Rgg};
use heistream::graph_io::{load_partition, write_metis, write_partition};
use heistream::metrics::{balance_of_weights, edge_cut};
use heistream::partition::compute_lmax;
use heistream::{open_stream, run, Error, Graph, Result, Weight};
use serde::Serialize;

use crate::args::{GenCommand, PartitionArgs, VerifyArgs};
use crate::record::RunRecord;

pub fn partition(a: PartitionArgs) -> Result<ExitCode> {
    let cfg = a.tuning.config(a.algorithm, a.k, a.seed);
    let mut stream = open_stream(&a.graph, cfg.buffer_size)?;
    let delta = stream.delta();
    let result = run(&mut stream, &cfg)?;
    if let Some(path) = &a.output {
        write_partition(&result.partition, path)?;
    }
    let record = RunRecord::new(&a.graph, &cfg, delta, &result);
    let json = serde_json::to_string_pretty(&record).expect("record serializes");
    if let Some(path) = &a.json {
        std::fs::write(path, format!("{json}\n"))?;
    }
    println!("{json}");
    if result.fallback_count > 0 {
        log::warn!(
            "{} nodes were placed in the lightest block without room",
            result.fallback_count
        );
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Verification {
    edge_cut: Weight,
    cut_fraction: f64,
    balance: f64,
    max_block_weight: Weight,
    l_max: Weight,
    balanced: bool,
    claimed_edge_cut: Option<Weight>,
    cut_matches: bool,
}

pub fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let mut stream = open_stream(&a.graph, 1 << 15)?;
    let n = stream.node_count();
    let assignment = load_partition(&a.partition, n, a.k)?;
    let mut weights = vec![0 as Weight; a.k as usize];
    while let Some(batch) = stream.next_batch()? {
        for (v, w, _) in batch.iter() {
            weights[assignment[v] as usize] += w;
        }
    }
    let cut = edge_cut(&mut stream, &assignment)?;
    let l_max = compute_lmax(weights.iter().sum(), a.k, a.epsilon)?;
    let max_block_weight = weights.iter().copied().max().unwrap_or(0);

    let claimed_edge_cut = match &a.claimed {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let record: RunRecord = serde_json::from_str(&text).map_err(|e| Error::Parse {
                line: e.line(),
                message: format!("claimed result: {e}"),
            })?;
            Some(record.edge_cut)
        }
        None => None,
    };
    let report = Verification {
        edge_cut: cut.edge_cut,
        cut_fraction: cut.fraction(),
        balance: balance_of_weights(&weights),
        max_block_weight,
        l_max,
        balanced: max_block_weight <= l_max,
        claimed_edge_cut,
        cut_matches: claimed_edge_cut.is_none_or(|c| c == cut.edge_cut),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(if report.balanced && report.cut_matches {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn generate(cmd: GenCommand) -> Result<ExitCode> {
    let write_graph = |g: &Graph, path: Option<&Path>| write_metis(g, output(path)?);
    match cmd {
        GenCommand::Rgg {
            log_n,
            seed,
            output: path,
        } => {
            if log_n > 31 {
                return Err(Error::InvalidConfig(format!("log-n {log_n} exceeds 31")));
            }
            Rgg::new(1 << log_n, seed).write_metis(output(path.as_deref())?)?;
        }
        GenCommand::Er {
            n,
            p,
            seed,
            output: path,
        } => {
            write_graph(&erdos_renyi(n, p, seed)?, path.as_deref())?;
        }
        GenCommand::Grid {
            rows,
            cols,
            output: path,
        } => {
            write_graph(&grid(rows, cols), path.as_deref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
