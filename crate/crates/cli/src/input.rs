use std::fs;
use std::path::Path;

use mewis_core::graph::{count_feature_rows, load_edge_list, load_features};
use mewis_core::{build_weights, EntropyWeights, Graph, WeightMode};

use crate::args::GraphArgs;
use crate::Failure;

pub struct Loaded {
    pub name: String,
    pub graph: Graph,
    pub weights: EntropyWeights,
}

pub fn graph_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// One real per whitespace-separated token.
pub fn parse_weights(path: &Path) -> Result<Vec<f64>, Failure> {
    read(path)?
        .split_whitespace()
        .map(|tok| match tok.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(Failure::usage(format!(
                "{}: invalid weight {tok:?}",
                path.display()
            ))),
        })
        .collect()
}

/// Node count from, in order of precedence: --nodes, the feature row count,
/// the weight count. `None` lets the edge list decide.
fn node_count(args: &GraphArgs, weights: Option<&[f64]>) -> Result<Option<usize>, Failure> {
    if args.nodes.is_some() {
        return Ok(args.nodes);
    }
    if let Some(path) = &args.features {
        return Ok(Some(count_feature_rows(path)?));
    }
    Ok(weights.map(<[f64]>::len))
}

pub fn load(args: &GraphArgs) -> Result<Loaded, Failure> {
    if args.entropy && args.features.is_none() {
        return Err(Failure::usage("--entropy requires --features".into()));
    }
    let explicit = args.weights.as_deref().map(parse_weights).transpose()?;
    let n = node_count(args, explicit.as_deref())?;
    let graph = load_edge_list(&args.graph, n)?;
    let features = match &args.features {
        Some(path) => Some(load_features(path, graph.n())?),
        None => None,
    };
    let weights = match explicit {
        Some(w) if w.len() != graph.n() => {
            return Err(Failure::usage(format!(
                "{} weights given for a graph with {} nodes",
                w.len(),
                graph.n()
            )))
        }
        Some(w) => EntropyWeights::from_weights(w)?,
        None if args.entropy => build_weights(&graph, features.as_ref(), WeightMode::Entropy)?,
        None => build_weights(&graph, None, WeightMode::Unit)?,
    };
    Ok(Loaded {
        name: graph_name(&args.graph),
        graph,
        weights,
    })
}
