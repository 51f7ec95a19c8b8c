use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use heistream::metrics::{aggregate, improvement, performance_profile};
use heistream::{open_stream, run, Algorithm, Error, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::BenchArgs;
use crate::record::{CsvRow, RunRecord};

const TAUS: [f64; 6] = [1.0, 1.05, 1.1, 1.25, 1.5, 2.0];

struct Task {
    graph: PathBuf,
    algorithm: Algorithm,
    k: u32,
    seed: u64,
}

pub fn bench(a: BenchArgs) -> Result<ExitCode> {
    let seeds = a.seed_values();
    let mut tasks = Vec::new();
    for graph in &a.graphs {
        for &k in &a.ks {
            for &algorithm in &a.algorithms {
                for &seed in &seeds {
                    tasks.push(Task {
                        graph: graph.clone(),
                        algorithm,
                        k,
                        seed,
                    });
                }
            }
        }
    }

    let run_task = |t: &Task| -> Result<RunRecord> {
        let cfg = a.tuning.config(t.algorithm, t.k, t.seed);
        let mut stream = open_stream(&t.graph, cfg.buffer_size)?;
        let delta = stream.delta();
        let result = run(&mut stream, &cfg)?;
        log::info!(
            "{} {} k={} seed={}: cut {}",
            t.graph.display(),
            t.algorithm,
            t.k,
            t.seed,
            result.edge_cut
        );
        Ok(RunRecord::new(&t.graph, &cfg, delta, &result))
    };
    let records: Vec<RunRecord> = if a.jobs == 1 {
        tasks.iter().map(run_task).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(a.jobs)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| tasks.par_iter().map(run_task).collect::<Result<_>>())?
    };

    let mut csv = csv::Writer::from_path(&a.output).map_err(csv_error)?;
    for r in &records {
        csv.serialize(CsvRow::from(r)).map_err(csv_error)?;
    }
    csv.flush()?;

    let summary = summarize(&records, &a.algorithms, a.baseline)?;
    let out: Box<dyn Write> = match &a.aggregate {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut csv = csv::Writer::from_writer(out);
    for row in &summary {
        csv.serialize(row).map_err(csv_error)?;
    }
    csv.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidConfig(format!("csv: {other:?}")),
    }
}

/// One aggregate line per algorithm. Instances are (graph, k) pairs; each
/// contributes the mean over seeds.
#[derive(Debug, Serialize)]
pub struct AggregateRow {
    pub algorithm: String,
    pub instances: usize,
    pub geomean_cut: f64,
    pub zero_cut_instances: usize,
    pub geomean_runtime_ms: f64,
    pub cut_improvement_over_baseline_pct: Option<f64>,
    pub profile_tau_1: f64,
    pub profile_tau_1_05: f64,
    pub profile_tau_1_1: f64,
    pub profile_tau_1_25: f64,
    pub profile_tau_1_5: f64,
    pub profile_tau_2: f64,
}

fn summarize(
    records: &[RunRecord],
    algorithms: &[Algorithm],
    baseline: Algorithm,
) -> Result<Vec<AggregateRow>> {
    // (algorithm, graph, k) -> (sum cut, sum time, runs)
    let mut cells: BTreeMap<(String, String, u32), (f64, f64, usize)> = BTreeMap::new();
    for r in records {
        let e = cells
            .entry((r.algorithm.clone(), r.graph.clone(), r.k))
            .or_default();
        e.0 += r.edge_cut as f64;
        e.1 += r.runtime_ms.total;
        e.2 += 1;
    }
    let per_algorithm = |alg: Algorithm, time: bool| -> Vec<f64> {
        cells
            .iter()
            .filter(|((a, _, _), _)| a == alg.name())
            .map(|(_, &(cut, t, runs))| if time { t } else { cut } / runs as f64)
            .collect()
    };
    let cuts: Vec<Vec<f64>> = algorithms
        .iter()
        .map(|&a| per_algorithm(a, false))
        .collect();
    // zero-cut instances would make every ratio degenerate
    let profile = performance_profile(
        &cuts
            .iter()
            .map(|row| row.iter().map(|&c| c.max(1.0)).collect())
            .collect::<Vec<_>>(),
        &TAUS,
    )?;
    let baseline_cut = if algorithms.contains(&baseline) {
        Some(aggregate(&per_algorithm(baseline, false))?.mean)
    } else {
        None
    };

    let mut rows = Vec::new();
    for (i, &alg) in algorithms.iter().enumerate() {
        let cut = aggregate(&cuts[i])?;
        let time = aggregate(&per_algorithm(alg, true))?;
        rows.push(AggregateRow {
            algorithm: alg.name().to_string(),
            instances: cuts[i].len(),
            geomean_cut: cut.mean,
            zero_cut_instances: cut.excluded_zero,
            geomean_runtime_ms: time.mean,
            cut_improvement_over_baseline_pct: baseline_cut
                .filter(|_| alg != baseline)
                .map(|b| improvement(cut.mean, b)),
            profile_tau_1: profile[i][0],
            profile_tau_1_05: profile[i][1],
            profile_tau_1_1: profile[i][2],
            profile_tau_1_25: profile[i][3],
            profile_tau_1_5: profile[i][4],
            profile_tau_2: profile[i][5],
        });
    }
    Ok(rows)
}
