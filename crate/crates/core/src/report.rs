use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::entropy::EntropyWeights;
use crate::error::{Error, Result};
use crate::extraction::find_internal_edge;
use crate::graph::Graph;

/// Outcome of one solver run, as written to result files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub solver: String,
    pub graph_name: String,
    pub n: usize,
    pub m: usize,
    /// Ascending node ids.
    pub selected: Vec<usize>,
    pub size: usize,
    pub total_weight: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loss_trace: Option<Vec<f64>>,
    pub runtime_ms: f64,
    pub seed: u64,
    #[serde(default)]
    pub config: serde_json::Value,
}

impl SolveResult {
    /// Result for a set found by a non-trained solver.
    pub fn from_set(
        solver: &str,
        g: &Graph,
        w: &EntropyWeights,
        mut selected: Vec<usize>,
        runtime_ms: f64,
    ) -> Self {
        selected.sort_unstable();
        SolveResult {
            solver: solver.into(),
            graph_name: String::new(),
            n: g.n(),
            m: g.num_edges(),
            size: selected.len(),
            total_weight: w.total(&selected),
            selected,
            loss_trace: None,
            runtime_ms,
            seed: 0,
            config: serde_json::Value::Null,
        }
    }

    /// Re-checks the stored invariants against the graph and weights.
    pub fn validate(&self, g: &Graph, w: &EntropyWeights) -> Result<()> {
        if self.size != self.selected.len() {
            return Err(Error::InvalidArgument(format!(
                "result size {} disagrees with {} selected nodes",
                self.size,
                self.selected.len()
            )));
        }
        if let Some((u, v)) = find_internal_edge(g, &self.selected)? {
            return Err(Error::NotIndependent(u, v));
        }
        let weight = w.total(&self.selected);
        if (weight - self.total_weight).abs() > 1e-9 * (1.0 + weight.abs()) {
            return Err(Error::InvalidArgument(format!(
                "result weight {} disagrees with recomputed {weight}",
                self.total_weight
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json() + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::parse(path, e.line(), e.to_string()))
    }
}
