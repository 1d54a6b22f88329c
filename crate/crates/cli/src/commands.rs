use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use mewis_core::graph::{convert_raw, count_feature_rows, load_edge_list, load_features};
use mewis_core::oracle::{exact_bnb_with_budget, exact_enumerate};
use mewis_core::{
    gen_random, greedy as greedy_set, pool_chain, train, Aggregation, EntropyWeights,
    ExtractOptions, Graph, RandomModel, SolveResult, ThresholdPolicy, TrainConfig,
};
use serde::Serialize;

use crate::args::{
    AggregationArg, BaselineArgs, ConvertArgs, ExactArgs, GenArgs, OutputArgs, PoolArgs, SolveArgs,
    TrainArgs,
};
use crate::input::{graph_name, load};
use crate::Failure;

pub fn train_config(args: &TrainArgs, pooling: bool) -> TrainConfig {
    let base = if pooling {
        TrainConfig::pooling()
    } else {
        TrainConfig::mis()
    };
    TrainConfig {
        epochs: args.epochs,
        learning_rate: args.lr,
        seed: args.seed,
        extract_every: args.extract_every,
        hidden: args.hidden,
        layers: args.layers.unwrap_or(base.layers),
        degree_feature: !args.no_degree,
        aggregation: match args.aggregation {
            AggregationArg::Mean => Aggregation::Mean,
            AggregationArg::Sum => Aggregation::Sum,
        },
        extraction: ExtractOptions {
            maximalize: args.maximalize.unwrap_or(base.extraction.maximalize),
            threshold: if args.retighten {
                ThresholdPolicy::Retighten
            } else {
                ThresholdPolicy::Fixed
            },
        },
        ..base
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::internal(format!("{}: {e}", path.display())))
}

/// Re-checks the result, then writes and prints it as requested.
fn emit(
    result: &SolveResult,
    g: &Graph,
    w: &EntropyWeights,
    output: &OutputArgs,
) -> Result<(), Failure> {
    result
        .validate(g, w)
        .map_err(|e| Failure::internal(format!("refusing to write an invalid result: {e}")))?;
    if let Some(path) = &output.out {
        write(path, &(result.to_json() + "\n"))?;
    }
    if output.json {
        say!("{}\n", result.to_json());
    } else {
        say!(
            "{}: {} size {} weight {:.6} ({:.1} ms)\n",
            result.solver,
            result.graph_name,
            result.size,
            result.total_weight,
            result.runtime_ms
        );
    }
    Ok(())
}

pub fn solve(args: SolveArgs) -> Result<(), Failure> {
    let data = load(&args.input)?;
    let cfg = train_config(&args.train, false);
    let (model, mut result) = train(&data.graph, &data.weights, &cfg)?;
    result.graph_name = data.name;
    if let Some(path) = &args.checkpoint {
        let text =
            serde_json::to_string_pretty(&model.to_checkpoint()).expect("checkpoint serializes");
        write(path, &(text + "\n"))?;
    }
    emit(&result, &data.graph, &data.weights, &args.output)
}

pub fn greedy(args: BaselineArgs) -> Result<(), Failure> {
    let data = load(&args.input)?;
    let start = Instant::now();
    let set = greedy_set(&data.graph, &data.weights.weights)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let mut result = SolveResult::from_set("greedy", &data.graph, &data.weights, set, ms);
    result.graph_name = data.name;
    emit(&result, &data.graph, &data.weights, &args.output)
}

pub fn exact(args: ExactArgs) -> Result<(), Failure> {
    let data = load(&args.input)?;
    let start = Instant::now();
    let (solver, found) = if args.bnb {
        (
            "exact-bnb",
            exact_bnb_with_budget(&data.graph, &data.weights.weights, args.budget)?,
        )
    } else {
        (
            "exact-enumerate",
            exact_enumerate(&data.graph, &data.weights.weights)?,
        )
    };
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let mut result = SolveResult::from_set(solver, &data.graph, &data.weights, found.best_set, ms);
    result.graph_name = data.name;
    result.config = serde_json::json!({ "nodes_explored": found.nodes_explored });
    emit(&result, &data.graph, &data.weights, &args.output)
}

fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

#[derive(Serialize)]
struct StageSummary {
    nodes_in: usize,
    edges_in: usize,
    nodes_out: usize,
    edges_out: usize,
    ratio: f64,
    components_in: usize,
    components_out: usize,
    maximal: bool,
}

pub fn pool(args: PoolArgs) -> Result<(), Failure> {
    let n = match args.nodes {
        Some(n) => n,
        None => count_feature_rows(&args.features)?,
    };
    let g = load_edge_list(&args.graph, Some(n))?;
    let x = load_features(&args.features, n)?;
    let cfg = train_config(&args.train, true);
    let chain = pool_chain(&g, &x, &cfg, args.depth)?;

    let mut summaries = Vec::new();
    let mut origin: Vec<usize> = (0..n).collect();
    let mut prev = &g;
    for stage in &chain.stages {
        origin = stage.mapping.iter().map(|&k| origin[k]).collect();
        summaries.push(StageSummary {
            nodes_in: prev.n(),
            edges_in: prev.num_edges(),
            nodes_out: stage.graph.n(),
            edges_out: stage.graph.num_edges(),
            ratio: if prev.n() == 0 {
                1.0
            } else {
                stage.graph.n() as f64 / prev.n() as f64
            },
            components_in: prev.num_components(),
            components_out: stage.graph.num_components(),
            maximal: stage.maximal,
        });
        prev = &stage.graph;
    }
    let last = chain.stages.last().expect("depth is at least 1");
    write(
        &with_extension(&args.out, "txt"),
        &last.graph.to_edge_list(),
    )?;
    write(
        &with_extension(&args.out, "features"),
        &last.features.to_text(),
    )?;
    write(
        &with_extension(&args.out, "map"),
        &origin
            .iter()
            .map(|id| format!("{id}\n"))
            .collect::<String>(),
    )?;

    if args.json {
        let summary = serde_json::json!({ "stages": summaries, "stop": chain.stop });
        say!(
            "{}\n",
            serde_json::to_string_pretty(&summary).expect("summary serializes")
        );
    } else {
        for (k, s) in summaries.iter().enumerate() {
            say!(
                "stage {}: {} -> {} nodes (ratio {:.3}), {} -> {} edges, {} -> {} components\n",
                k + 1,
                s.nodes_in,
                s.nodes_out,
                s.ratio,
                s.edges_in,
                s.edges_out,
                s.components_in,
                s.components_out
            );
        }
    }
    Ok(())
}

pub fn gen(args: GenArgs) -> Result<(), Failure> {
    let g = gen_random(RandomModel::ErdosRenyi, args.nodes, args.p, args.seed)?;
    match &args.out {
        Some(path) => write(path, &g.to_edge_list()),
        None => {
            say!("{}", g.to_edge_list());
            Ok(())
        }
    }
}

pub fn convert(args: ConvertArgs) -> Result<(), Failure> {
    let read = |p: &Path| {
        fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))
    };
    let pairs = read(&args.input)?;
    let content = args.content.as_deref().map(read).transpose()?;
    let c = convert_raw(&pairs, content.as_deref(), &args.input)?;
    write(&with_extension(&args.out, "txt"), &c.graph.to_edge_list())?;
    write(&with_extension(&args.out, "map"), &c.mapping_text())?;
    if let Some(x) = &c.features {
        write(&with_extension(&args.out, "features"), &x.to_text())?;
    }
    say!(
        "{}: {} nodes, {} edges, dropped {} self-loops and {} pairs with unknown ids\n",
        graph_name(&args.input),
        c.graph.n(),
        c.graph.num_edges(),
        c.dropped_self_loops,
        c.dropped_unknown
    );
    Ok(())
}
