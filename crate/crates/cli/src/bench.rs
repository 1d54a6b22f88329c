//! Benchmark suites. Cells (graph x seed) run in parallel; each cell is a
//! single-threaded training run. Rows are reduced in dataset then seed order,
//! so reports depend only on the inputs and the seed list.

use std::fmt::Write as _;
use std::fs;
use std::time::Instant;

use mewis_core::dataset::find_dataset;
use mewis_core::oracle::{exact_enumerate, ENUMERATION_LIMIT};
use mewis_core::scorer::node_inputs;
use mewis_core::{
    gen_random, greedy, train, verify_independent, EntropyWeights, Graph, RandomModel, ScorerModel,
    TrainConfig,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{BenchArgs, Suite};
use crate::Failure;

#[derive(Debug, Serialize)]
struct Protocol {
    weights: &'static str,
    headline: String,
    seeds: Vec<u64>,
    epochs: usize,
    learning_rate: f64,
    layers: usize,
    hidden: usize,
    aggregation: String,
    extract_every: usize,
    maximalize: bool,
    greedy: &'static str,
}

#[derive(Debug, Serialize)]
struct DatasetRow {
    name: String,
    n: usize,
    m: usize,
    greedy: usize,
    mewis_best: usize,
    mewis_sizes: Vec<usize>,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    greedy_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    forward_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    train_ms: Option<Vec<f64>>,
}

#[derive(Debug, Serialize)]
struct InstanceRow {
    index: u64,
    graph_seed: u64,
    n: usize,
    m: usize,
    exact: Option<usize>,
    greedy: usize,
    mewis_best: usize,
    mewis_sizes: Vec<usize>,
    valid: bool,
}

#[derive(Debug, Serialize)]
struct RandomSummary {
    graphs: usize,
    with_exact: usize,
    mewis_at_least_90pct_of_exact: usize,
    mewis_optimal: usize,
    mewis_at_least_greedy: usize,
    mean_mewis_ratio: Option<f64>,
    mean_greedy_ratio: Option<f64>,
    all_valid: bool,
}

#[derive(Debug, Serialize)]
struct Report {
    suite: &'static str,
    protocol: Protocol,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    datasets: Vec<DatasetRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    missing: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    instances: Vec<InstanceRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<RandomSummary>,
}

fn config(args: &BenchArgs, seed: u64) -> TrainConfig {
    TrainConfig {
        epochs: args.epochs,
        learning_rate: args.lr,
        layers: args.layers,
        hidden: args.hidden,
        extract_every: args.extract_every,
        ..TrainConfig::mis()
    }
    .with_seed(seed)
}

fn protocol(args: &BenchArgs, seeds: &[u64]) -> Protocol {
    let cfg = config(args, 0);
    Protocol {
        weights: "unit",
        headline: format!("best of {} seeds", seeds.len()),
        seeds: seeds.to_vec(),
        epochs: cfg.epochs,
        learning_rate: cfg.learning_rate,
        layers: cfg.layers,
        hidden: cfg.hidden,
        aggregation: format!("{:?}", cfg.aggregation).to_lowercase(),
        extract_every: cfg.extract_every,
        maximalize: cfg.extraction.maximalize,
        greedy: "max w/(residual degree + 1), ties to lower id",
    }
}

struct Cell {
    size: usize,
    valid: bool,
    ms: f64,
}

/// Trains every (graph, seed) pair in parallel; results keep input order.
fn run_cells(
    graphs: &[&Graph],
    args: &BenchArgs,
    seeds: &[u64],
) -> Result<Vec<Vec<Cell>>, Failure> {
    let jobs: Vec<(usize, u64)> = (0..graphs.len())
        .flat_map(|i| seeds.iter().map(move |&s| (i, s)))
        .collect();
    let cells = jobs
        .par_iter()
        .map(|&(i, seed)| {
            let g = graphs[i];
            let w = EntropyWeights::from_weights(vec![1.0; g.n()])?;
            let (_, r) = train(g, &w, &config(args, seed))?;
            Ok(Cell {
                size: r.size,
                valid: verify_independent(g, &r.selected)?,
                ms: r.runtime_ms,
            })
        })
        .collect::<Result<Vec<Cell>, mewis_core::Error>>()?;
    let mut it = cells.into_iter();
    Ok(graphs
        .iter()
        .map(|_| it.by_ref().take(seeds.len()).collect())
        .collect())
}

fn citation(args: &BenchArgs, seeds: &[u64]) -> Result<Report, Failure> {
    let mut found = Vec::new();
    let mut missing = Vec::new();
    for name in &args.datasets {
        match find_dataset(&args.data_dir, name)? {
            Some(d) => found.push(d),
            None => missing.push(name.clone()),
        }
    }
    let graphs: Vec<&Graph> = found.iter().map(|d| &d.graph).collect();
    let cells = run_cells(&graphs, args, seeds)?;
    let mut rows = Vec::new();
    for (d, cells) in found.iter().zip(cells) {
        let g = &d.graph;
        let unit = vec![1.0; g.n()];
        let start = Instant::now();
        let gset = greedy(g, &unit)?;
        let greedy_ms = start.elapsed().as_secs_f64() * 1e3;

        let cfg = config(args, seeds.first().copied().unwrap_or(0));
        let model = ScorerModel::new(cfg.input_dim(), cfg.hidden, cfg.layers, cfg.seed)?
            .with_aggregation(cfg.aggregation);
        let x = node_inputs(g, &EntropyWeights::from_weights(unit)?, cfg.degree_feature)?;
        let start = Instant::now();
        model.forward(g, x.view())?;
        let forward_ms = start.elapsed().as_secs_f64() * 1e3;

        let timing = !args.no_timing;
        rows.push(DatasetRow {
            name: d.name.clone(),
            n: g.n(),
            m: g.num_edges(),
            greedy: gset.len(),
            mewis_best: cells.iter().map(|c| c.size).max().unwrap_or(0),
            mewis_sizes: cells.iter().map(|c| c.size).collect(),
            valid: verify_independent(g, &gset)? && cells.iter().all(|c| c.valid),
            greedy_ms: timing.then_some(greedy_ms),
            forward_ms: timing.then_some(forward_ms),
            train_ms: timing.then(|| cells.iter().map(|c| c.ms).collect()),
        });
    }
    Ok(Report {
        suite: "citation",
        protocol: protocol(args, seeds),
        datasets: rows,
        missing,
        instances: Vec::new(),
        summary: None,
    })
}

fn random(args: &BenchArgs, seeds: &[u64]) -> Result<Report, Failure> {
    let graph_seeds: Vec<u64> = (0..args.graphs).map(|i| args.instance_seed + i).collect();
    let graphs = graph_seeds
        .iter()
        .map(|&s| gen_random(RandomModel::ErdosRenyi, args.n, args.p, s))
        .collect::<Result<Vec<Graph>, _>>()?;
    let refs: Vec<&Graph> = graphs.iter().collect();
    let cells = run_cells(&refs, args, seeds)?;

    let mut rows = Vec::new();
    for (index, ((g, cells), &graph_seed)) in graphs.iter().zip(cells).zip(&graph_seeds).enumerate()
    {
        let unit = vec![1.0; g.n()];
        let gset = greedy(g, &unit)?;
        let exact = if g.n() <= ENUMERATION_LIMIT {
            let best = exact_enumerate(g, &unit)?.best_set;
            if !verify_independent(g, &best)? {
                return Err(Failure::internal(format!(
                    "exact oracle emitted a dependent set on graph {index}"
                )));
            }
            Some(best.len())
        } else {
            None
        };
        rows.push(InstanceRow {
            index: index as u64,
            graph_seed,
            n: g.n(),
            m: g.num_edges(),
            exact,
            greedy: gset.len(),
            mewis_best: cells.iter().map(|c| c.size).max().unwrap_or(0),
            mewis_sizes: cells.iter().map(|c| c.size).collect(),
            valid: verify_independent(g, &gset)? && cells.iter().all(|c| c.valid),
        });
    }

    let with_exact: Vec<&InstanceRow> = rows.iter().filter(|r| r.exact.is_some()).collect();
    let ratio = |f: fn(&InstanceRow) -> usize| -> Option<f64> {
        let pairs: Vec<f64> = with_exact
            .iter()
            .filter(|r| r.exact.unwrap() > 0)
            .map(|r| f(r) as f64 / r.exact.unwrap() as f64)
            .collect();
        (!pairs.is_empty()).then(|| pairs.iter().sum::<f64>() / pairs.len() as f64)
    };
    let summary = RandomSummary {
        graphs: rows.len(),
        with_exact: with_exact.len(),
        mewis_at_least_90pct_of_exact: with_exact
            .iter()
            .filter(|r| r.mewis_best as f64 >= 0.9 * r.exact.unwrap() as f64)
            .count(),
        mewis_optimal: with_exact
            .iter()
            .filter(|r| Some(r.mewis_best) == r.exact)
            .count(),
        mewis_at_least_greedy: rows.iter().filter(|r| r.mewis_best >= r.greedy).count(),
        mean_mewis_ratio: ratio(|r| r.mewis_best),
        mean_greedy_ratio: ratio(|r| r.greedy),
        all_valid: rows.iter().all(|r| r.valid),
    };
    Ok(Report {
        suite: "random",
        protocol: protocol(args, seeds),
        datasets: Vec::new(),
        missing: Vec::new(),
        instances: rows,
        summary: Some(summary),
    })
}

fn markdown(report: &Report, args: &BenchArgs) -> String {
    let p = &report.protocol;
    let mut out = String::new();
    let _ = writeln!(out, "# mewis bench: {} suite\n", report.suite);
    let _ = writeln!(
        out,
        "Protocol: {} weights; MEWIS {} ({:?}); {} epochs, lr {}, {} layers, hidden {}, {} aggregation, extraction every {} epochs, maximalize {}. Greedy: {}.\n",
        p.weights,
        p.headline,
        p.seeds,
        p.epochs,
        p.learning_rate,
        p.layers,
        p.hidden,
        p.aggregation,
        p.extract_every,
        p.maximalize,
        p.greedy
    );
    match args.suite {
        Suite::Citation => {
            let _ = writeln!(
                out,
                "| dataset | n | m | greedy | mewis best | mewis per seed | forward ms | valid |"
            );
            let _ = writeln!(out, "|---|---|---|---|---|---|---|---|");
            for r in &report.datasets {
                let fwd = r.forward_ms.map_or("-".into(), |t| format!("{t:.1}"));
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {:?} | {} | {} |",
                    r.name, r.n, r.m, r.greedy, r.mewis_best, r.mewis_sizes, fwd, r.valid
                );
            }
            if !report.missing.is_empty() {
                let _ = writeln!(out, "\nMissing datasets: {}", report.missing.join(", "));
            }
        }
        Suite::Random => {
            let _ = writeln!(
                out,
                "| graph | seed | m | exact | greedy | mewis best | mewis per seed | valid |"
            );
            let _ = writeln!(out, "|---|---|---|---|---|---|---|---|");
            for r in &report.instances {
                let exact = r.exact.map_or("-".into(), |e| e.to_string());
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {:?} | {} |",
                    r.index,
                    r.graph_seed,
                    r.m,
                    exact,
                    r.greedy,
                    r.mewis_best,
                    r.mewis_sizes,
                    r.valid
                );
            }
            if let Some(s) = &report.summary {
                let fmt = |x: Option<f64>| x.map_or("-".into(), |v| format!("{v:.4}"));
                let _ = writeln!(
                    out,
                    "\nMEWIS >= 90% of exact on {}/{}, optimal on {}/{}, >= greedy on {}/{}. Mean ratio to exact: mewis {}, greedy {}. All sets valid: {}.",
                    s.mewis_at_least_90pct_of_exact,
                    s.with_exact,
                    s.mewis_optimal,
                    s.with_exact,
                    s.mewis_at_least_greedy,
                    s.graphs,
                    fmt(s.mean_mewis_ratio),
                    fmt(s.mean_greedy_ratio),
                    s.all_valid
                );
            }
        }
    }
    out
}

pub fn run(args: BenchArgs) -> Result<(), Failure> {
    if args.seeds == 0 {
        return Err(Failure::usage("--seeds must be at least 1".into()));
    }
    config(&args, 0).validate()?;
    let seeds: Vec<u64> = (0..args.seeds).map(|k| args.first_seed + k).collect();
    let report = match args.suite {
        Suite::Citation => citation(&args, &seeds)?,
        Suite::Random => random(&args, &seeds)?,
    };
    let md = markdown(&report, &args);
    let write = |path: &std::path::Path, text: String| {
        fs::write(path, text).map_err(|e| Failure::internal(format!("{}: {e}", path.display())))
    };
    if let Some(path) = &args.out {
        write(
            path,
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        )?;
    }
    if let Some(path) = &args.markdown {
        write(path, md.clone())?;
    }
    if args.out.is_none() && args.markdown.is_none() {
        say!("{md}");
    }
    if !report.missing.is_empty() {
        eprintln!(
            "missing datasets in {}: {}",
            args.data_dir.display(),
            report.missing.join(", ")
        );
    }
    if matches!(args.suite, Suite::Citation) && report.datasets.is_empty() {
        return Err(Failure::usage(format!(
            "no datasets found in {}",
            args.data_dir.display()
        )));
    }
    Ok(())
}
