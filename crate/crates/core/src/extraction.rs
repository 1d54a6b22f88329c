//! Derandomized extraction of an independent set from fractional scores.
//!
//! Nodes are visited once in descending score order. A node is committed
//! when the pooling loss, evaluated with the node set to 1 and its neighbors
//! set to 0, does not exceed the threshold fixed at entry. Committing writes
//! those values into the working scores, so the loss at the working point
//! never rises above the threshold.

use serde::{Deserialize, Serialize};

use crate::entropy::EntropyWeights;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scorer::pool_loss;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdPolicy {
    /// Threshold stays at the loss of the entry scores.
    #[default]
    Fixed,
    /// Threshold drops to the working loss after every commitment.
    Retighten,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ExtractOptions {
    /// Greedily add leftover nodes (heaviest first) until the set is maximal.
    pub maximalize: bool,
    pub threshold: ThresholdPolicy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Open,
    Selected,
    Rejected,
}

/// Working state of the extraction loop.
#[derive(Debug, Clone)]
pub struct ExtractionState<'a> {
    g: &'a Graph,
    w: &'a EntropyWeights,
    z: Vec<f64>,
    status: Vec<Status>,
    selected: Vec<usize>,
    threshold: f64,
    policy: ThresholdPolicy,
    /// Pooling loss at the working scores, maintained incrementally.
    loss: f64,
    stamp: Vec<usize>,
    round: usize,
}

impl<'a> ExtractionState<'a> {
    pub fn new(
        g: &'a Graph,
        w: &'a EntropyWeights,
        z: &[f64],
        policy: ThresholdPolicy,
    ) -> Result<Self> {
        if z.len() != g.n() {
            return Err(Error::DimensionMismatch {
                what: "scores vs graph nodes",
                expected: g.n(),
                actual: z.len(),
            });
        }
        if let Some(bad) = z.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::InvalidArgument(format!(
                "score {bad} outside [0, 1]"
            )));
        }
        let loss = pool_loss(g, w, z)?;
        Ok(ExtractionState {
            g,
            w,
            z: z.to_vec(),
            status: vec![Status::Open; g.n()],
            selected: Vec::new(),
            threshold: loss,
            policy,
            loss,
            stamp: vec![usize::MAX; g.n()],
            round: 0,
        })
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn gamma(&self) -> f64 {
        self.w.gamma
    }

    /// Loss at the working scores.
    pub fn working_loss(&self) -> f64 {
        self.loss
    }

    pub fn scores(&self) -> &[f64] {
        &self.z
    }

    /// Selected nodes in commit order.
    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn is_selected(&self, v: usize) -> bool {
        self.status[v] == Status::Selected
    }

    pub fn is_rejected(&self, v: usize) -> bool {
        self.status[v] == Status::Rejected
    }

    pub fn is_resolved(&self, v: usize) -> bool {
        self.status[v] != Status::Open
    }

    pub fn all_resolved(&self) -> bool {
        self.status.iter().all(|&s| s != Status::Open)
    }

    /// Loss after setting `v` to 1 and its neighbors to 0, computed from the
    /// two sums that change.
    pub fn trial_loss(&mut self, v: usize) -> f64 {
        let (g, z, w) = (self.g, &self.z, &self.w.weights);
        self.round += 1;
        let tag = self.round;
        self.stamp[v] = tag;
        for &u in g.neighbors(v) {
            self.stamp[u] = tag;
        }

        let mut linear = -w[v] * (1.0 - z[v]);
        for &u in g.neighbors(v) {
            linear += w[u] * z[u];
        }
        // every edge touching {v} ∪ N(v) vanishes; count each edge once
        let mut quadratic = 0.0;
        for c in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
            for &x in g.neighbors(c) {
                if self.stamp[x] == tag && x < c {
                    continue;
                }
                quadratic += z[c] * z[x];
            }
        }
        self.loss + linear - quadratic
    }

    /// Runs the conditional check on an open node and commits it when the
    /// trial loss is within the threshold. Returns whether `v` was selected.
    pub fn try_commit(&mut self, v: usize) -> bool {
        if self.status[v] != Status::Open {
            return false;
        }
        let trial = self.trial_loss(v);
        if trial > self.threshold {
            return false;
        }
        self.status[v] = Status::Selected;
        self.selected.push(v);
        self.z[v] = 1.0;
        for &u in self.g.neighbors(v) {
            self.status[u] = Status::Rejected;
            self.z[u] = 0.0;
        }
        self.loss = trial;
        if self.policy == ThresholdPolicy::Retighten {
            self.threshold = trial;
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    /// Final set, ascending.
    pub selected: Vec<usize>,
    /// Threshold at entry (the loss of the input scores).
    pub threshold: f64,
    pub gamma: f64,
    /// Whether the main loop left no node unresolved.
    pub resolved_all: bool,
    /// Nodes selected by the main loop, before any maximalization.
    pub committed: usize,
}

/// Visit order: descending score, ties by ascending id.
pub fn visit_order(z: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..z.len()).collect();
    order.sort_by(|&a, &b| z[b].total_cmp(&z[a]).then(a.cmp(&b)));
    order
}

pub fn extract(
    g: &Graph,
    w: &EntropyWeights,
    z: &[f64],
    opts: &ExtractOptions,
) -> Result<Extraction> {
    if w.len() != g.n() {
        return Err(Error::DimensionMismatch {
            what: "weights vs graph nodes",
            expected: g.n(),
            actual: w.len(),
        });
    }
    let mut state = ExtractionState::new(g, w, z, opts.threshold)?;
    let threshold = state.threshold();
    for v in visit_order(z) {
        state.try_commit(v);
    }
    let resolved_all = state.all_resolved();
    let committed = state.selected().len();

    let mut in_set: Vec<bool> = (0..g.n()).map(|v| state.is_selected(v)).collect();
    if opts.maximalize {
        let mut open: Vec<usize> = (0..g.n()).filter(|&v| !state.is_resolved(v)).collect();
        open.sort_by(|&a, &b| w.weights[b].total_cmp(&w.weights[a]).then(a.cmp(&b)));
        for v in open {
            if !g.neighbors(v).iter().any(|&u| in_set[u]) {
                in_set[v] = true;
            }
        }
    }
    let selected = (0..g.n()).filter(|&v| in_set[v]).collect();
    Ok(Extraction {
        selected,
        threshold,
        gamma: w.gamma,
        resolved_all,
        committed,
    })
}

/// True iff no edge has both endpoints in `set`.
pub fn verify_independent(g: &Graph, set: &[usize]) -> Result<bool> {
    Ok(find_internal_edge(g, set)?.is_none())
}

pub(crate) fn find_internal_edge(g: &Graph, set: &[usize]) -> Result<Option<(usize, usize)>> {
    let mut member = vec![false; g.n()];
    for &v in set {
        g.check_node(v)?;
        member[v] = true;
    }
    for &v in set {
        if let Some(&u) = g.neighbors(v).iter().find(|&&u| member[u]) {
            return Ok(Some((v.min(u), v.max(u))));
        }
    }
    Ok(None)
}

/// True iff every node outside `set` has a neighbor inside it.
pub fn is_maximal(g: &Graph, set: &[usize]) -> Result<bool> {
    let mut member = vec![false; g.n()];
    for &v in set {
        g.check_node(v)?;
        member[v] = true;
    }
    Ok((0..g.n()).all(|v| member[v] || g.neighbors(v).iter().any(|&u| member[u])))
}
