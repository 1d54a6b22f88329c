//! Graph pooling by entropy-weighted independent sets.
//!
//! The pooled graph keeps the selected nodes (ascending original id) and
//! joins two of them when a walk of length 2 or 3 connects them in the input.

use serde::Serialize;

use crate::entropy::{build_weights, WeightMode};
use crate::error::{Error, Result};
use crate::extraction::{find_internal_edge, is_maximal};
use crate::graph::{walk_reachability, FeatureMatrix, Graph};
use crate::scorer::{train, TrainConfig};

/// Pooled structure: the new graph and the original id of each new node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub graph: Graph,
    pub mapping: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PooledGraph {
    pub graph: Graph,
    pub features: FeatureMatrix,
    /// Selected original ids, ascending; row `k` of `features` is row
    /// `mapping[k]` of the input.
    pub mapping: Vec<usize>,
    /// Whether the selected set was a maximal independent set. Connectivity
    /// of each component is only guaranteed when it is.
    pub maximal: bool,
}

impl PooledGraph {
    /// One original id per line.
    pub fn mapping_text(&self) -> String {
        self.mapping.iter().map(|id| format!("{id}\n")).collect()
    }
}

pub fn reconstruct(g: &Graph, selected: &[usize]) -> Result<Reconstruction> {
    let mut mapping = selected.to_vec();
    mapping.sort_unstable();
    if let Some(w) = mapping.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateNode(w[0]));
    }
    if let Some((u, v)) = find_internal_edge(g, &mapping)? {
        return Err(Error::NotIndependent(u, v));
    }
    let reach = walk_reachability(g, &mapping)?;
    let graph = Graph::from_edges(mapping.len(), reach.pairs())?;
    Ok(Reconstruction { graph, mapping })
}

/// Entropy weights, scorer training and extraction as configured (see
/// [`TrainConfig::pooling`]), then reconstruction. Feature rows of the kept
/// nodes are copied verbatim.
pub fn mewis_pool(g: &Graph, x: &FeatureMatrix, cfg: &TrainConfig) -> Result<PooledGraph> {
    let weights = build_weights(g, Some(x), WeightMode::Entropy)?;
    let (_, result) = train(g, &weights, cfg)?;
    let Reconstruction { graph, mapping } = reconstruct(g, &result.selected)?;
    Ok(PooledGraph {
        graph,
        features: x.select_rows(&mapping)?,
        maximal: is_maximal(g, &mapping)?,
        mapping,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    /// All requested stages ran.
    DepthReached,
    /// The last stage produced at most one node.
    SingleNode,
    /// The last stage kept every node, so further stages would repeat it.
    NoShrink,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoolChain {
    pub stages: Vec<PooledGraph>,
    pub stop: StopReason,
}

/// Applies `mewis_pool` up to `depth` times, feeding each output forward.
pub fn pool_chain(
    g: &Graph,
    x: &FeatureMatrix,
    cfg: &TrainConfig,
    depth: usize,
) -> Result<PoolChain> {
    if depth == 0 {
        return Err(Error::InvalidArgument(
            "pooling depth must be at least 1".into(),
        ));
    }
    let mut stages: Vec<PooledGraph> = Vec::with_capacity(depth);
    for _ in 0..depth {
        let (cur_g, cur_x) = stages.last().map_or((g, x), |s| (&s.graph, &s.features));
        let pooled = mewis_pool(cur_g, cur_x, cfg)?;
        let stop = if pooled.graph.n() <= 1 {
            Some(StopReason::SingleNode)
        } else if pooled.graph.n() == cur_g.n() {
            Some(StopReason::NoShrink)
        } else {
            None
        };
        stages.push(pooled);
        if let Some(stop) = stop {
            return Ok(PoolChain { stages, stop });
        }
    }
    Ok(PoolChain {
        stages,
        stop: StopReason::DepthReached,
    })
}
