//! Exact and greedy maximum-weight independent set solvers.
//!
//! Two exact solvers share no code: plain enumeration of every subset and a
//! branch and bound with clique-cover pruning. Reported weights are always
//! summed over the set in ascending node order, so both report bit-identical
//! values for equal-weight optima.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ENUMERATION_LIMIT: usize = 20;
/// Branch and bound works on 128-bit node masks.
pub const BNB_LIMIT: usize = 128;
pub const DEFAULT_BNB_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    Enumeration,
    BranchAndBound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    /// Ascending node ids.
    pub best_set: Vec<usize>,
    pub best_weight: f64,
    pub nodes_explored: u64,
    pub method: OracleMethod,
}

fn check_weights(g: &Graph, w: &[f64]) -> Result<()> {
    if w.len() != g.n() {
        return Err(Error::DimensionMismatch {
            what: "weights vs graph nodes",
            expected: g.n(),
            actual: w.len(),
        });
    }
    if let Some(bad) = w.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "non-finite node weight {bad}"
        )));
    }
    Ok(())
}

fn mask_ids(mask: u128) -> Vec<usize> {
    let mut ids = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        ids.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    ids
}

fn mask_weight(mask: u128, w: &[f64]) -> f64 {
    let mut total = 0.0;
    let mut m = mask;
    while m != 0 {
        total += w[m.trailing_zeros() as usize];
        m &= m - 1;
    }
    total
}

fn neighbor_masks(g: &Graph) -> Vec<u128> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u128, |m, &u| m | (1u128 << u)))
        .collect()
}

/// Whether the sorted id list of `a` precedes that of `b` lexicographically.
fn lex_less(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let k = diff.trailing_zeros();
    let above = !0u32 << k << 1;
    if a & (1 << k) != 0 {
        // a continues with k; b continues with something larger, or stops
        b & above != 0
    } else {
        a & above == 0
    }
}

/// Scans all `2^n` subsets. Among optimal sets the lexicographically
/// smallest sorted id list wins.
pub fn exact_enumerate(g: &Graph, w: &[f64]) -> Result<OracleResult> {
    let n = g.n();
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            solver: "enumeration",
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    check_weights(g, w)?;
    let nbr: Vec<u32> = neighbor_masks(g).into_iter().map(|m| m as u32).collect();

    let mut best_mask = 0u32;
    let mut best_weight = 0.0;
    let total = 1u32 << n;
    for mask in 0..total {
        let mut independent = true;
        let mut weight = 0.0;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            if nbr[v] & mask != 0 {
                independent = false;
                break;
            }
            weight += w[v];
            m &= m - 1;
        }
        if !independent {
            continue;
        }
        match weight.partial_cmp(&best_weight) {
            Some(Ordering::Greater) => {
                best_mask = mask;
                best_weight = weight;
            }
            Some(Ordering::Equal) if lex_less(mask, best_mask) => best_mask = mask,
            _ => {}
        }
    }
    Ok(OracleResult {
        best_set: mask_ids(best_mask as u128),
        best_weight,
        nodes_explored: total as u64,
        method: OracleMethod::Enumeration,
    })
}

pub fn exact_bnb(g: &Graph, w: &[f64]) -> Result<OracleResult> {
    exact_bnb_with_budget(g, w, DEFAULT_BNB_BUDGET)
}

/// Branch and bound on a maximum-degree open vertex: include it (dropping its
/// neighbors) or exclude it. Open vertices with no open neighbor are taken
/// outright. A subtree is pruned when a greedy clique cover of the open
/// vertices bounds it below the incumbent. Weights must be non-negative.
pub fn exact_bnb_with_budget(g: &Graph, w: &[f64], budget: u64) -> Result<OracleResult> {
    let n = g.n();
    if n > BNB_LIMIT {
        return Err(Error::TooLarge {
            solver: "branch-and-bound",
            n,
            limit: BNB_LIMIT,
        });
    }
    check_weights(g, w)?;
    if let Some(bad) = w.iter().find(|&&x| x < 0.0) {
        return Err(Error::InvalidArgument(format!(
            "branch-and-bound needs non-negative weights, got {bad}"
        )));
    }

    let mut by_weight: Vec<usize> = (0..n).collect();
    by_weight.sort_by(|&a, &b| w[b].total_cmp(&w[a]).then(a.cmp(&b)));
    let incumbent = greedy(g, w)?.into_iter().fold(0u128, |m, v| m | (1 << v));
    let total: f64 = w.iter().sum();

    let mut search = Bnb {
        nbr: neighbor_masks(g),
        w,
        by_weight,
        best_weight: mask_weight(incumbent, w),
        best_mask: incumbent,
        slack: 1e-9 * (1.0 + total),
        explored: 0,
        budget,
    };
    let all = if n == 128 { !0u128 } else { (1u128 << n) - 1 };
    search.run(0, all, 0.0)?;
    Ok(OracleResult {
        best_set: mask_ids(search.best_mask),
        best_weight: search.best_weight,
        nodes_explored: search.explored,
        method: OracleMethod::BranchAndBound,
    })
}

struct Bnb<'a> {
    nbr: Vec<u128>,
    w: &'a [f64],
    by_weight: Vec<usize>,
    best_weight: f64,
    best_mask: u128,
    /// Pruning keeps subtrees whose bound is within this of the incumbent,
    /// so summation-order rounding cannot discard an equal optimum.
    slack: f64,
    explored: u64,
    budget: u64,
}

impl Bnb<'_> {
    fn run(&mut self, chosen: u128, open: u128, chosen_weight: f64) -> Result<()> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }

        let mut chosen = chosen;
        let mut open = open;
        let mut chosen_weight = chosen_weight;
        let mut m = open;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.nbr[v] & open == 0 {
                chosen |= 1 << v;
                open &= !(1 << v);
                chosen_weight += self.w[v];
            }
        }

        if open == 0 {
            let weight = mask_weight(chosen, self.w);
            if weight > self.best_weight {
                self.best_weight = weight;
                self.best_mask = chosen;
            }
            return Ok(());
        }
        if chosen_weight + self.clique_cover_bound(open) + self.slack < self.best_weight {
            return Ok(());
        }

        let mut pick = 0;
        let mut pick_degree = 0;
        let mut m = open;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let d = (self.nbr[v] & open).count_ones();
            if d > pick_degree {
                pick = v;
                pick_degree = d;
            }
        }
        let bit = 1u128 << pick;
        self.run(
            chosen | bit,
            open & !bit & !self.nbr[pick],
            chosen_weight + self.w[pick],
        )?;
        self.run(chosen, open & !bit, chosen_weight)
    }

    /// Greedy partition of `open` into cliques, heaviest vertex first; the
    /// sum of each clique's heaviest weight bounds any independent subset.
    fn clique_cover_bound(&self, open: u128) -> f64 {
        let mut cliques: Vec<u128> = Vec::new();
        let mut bound = 0.0;
        for &v in &self.by_weight {
            if open & (1 << v) == 0 {
                continue;
            }
            match cliques.iter_mut().find(|c| **c & !self.nbr[v] == 0) {
                Some(c) => *c |= 1 << v,
                None => {
                    cliques.push(1 << v);
                    bound += self.w[v];
                }
            }
        }
        bound
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    ratio: f64,
    node: usize,
    degree: usize,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // max-heap: larger ratio first, then smaller id
    fn cmp(&self, other: &Self) -> Ordering {
        self.ratio
            .total_cmp(&other.ratio)
            .then_with(|| Reverse(self.node).cmp(&Reverse(other.node)))
    }
}

/// GWMIN: repeatedly take the open vertex maximizing `w / (residual degree + 1)`
/// (ties to the lower id) and delete it with its neighbors. With unit weights
/// this is minimum-degree greedy. The result is a maximal independent set,
/// ascending.
pub fn greedy(g: &Graph, w: &[f64]) -> Result<Vec<usize>> {
    check_weights(g, w)?;
    let n = g.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let candidate = |v: usize, d: usize| Candidate {
        ratio: w[v] / (d as f64 + 1.0),
        node: v,
        degree: d,
    };
    let mut heap: BinaryHeap<Candidate> = (0..n).map(|v| candidate(v, degree[v])).collect();
    let mut chosen = Vec::new();

    while let Some(c) = heap.pop() {
        let v = c.node;
        if !alive[v] || c.degree != degree[v] {
            continue;
        }
        chosen.push(v);
        alive[v] = false;
        for &u in g.neighbors(v) {
            if !alive[u] {
                continue;
            }
            alive[u] = false;
            for &x in g.neighbors(u) {
                if alive[x] {
                    degree[x] -= 1;
                    heap.push(candidate(x, degree[x]));
                }
            }
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}
