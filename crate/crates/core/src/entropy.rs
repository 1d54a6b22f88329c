//! Node weights from feature smoothness.
//!
//! A node whose features differ strongly from its neighbors' is treated as
//! unlikely: its probability is the softmax of the negated local variation,
//! and its weight is the entropy term `-p ln p` of that probability.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{FeatureMatrix, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// Weights are node entropies computed from features.
    Entropy,
    /// Every weight is 1 (plain maximum independent set).
    Unit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyWeights {
    pub delta: Vec<f64>,
    pub prob: Vec<f64>,
    pub entropy: Vec<f64>,
    pub weights: Vec<f64>,
    /// Sum of `weights` in node order.
    pub gamma: f64,
}

impl EntropyWeights {
    /// Wraps an explicit weight vector. The entropy-model fields are filled
    /// with the uniform placeholders used by unit mode.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if let Some(bad) = weights.iter().find(|w| !w.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite node weight {bad}"
            )));
        }
        let n = weights.len();
        let p = if n == 0 { 0.0 } else { 1.0 / n as f64 };
        let h = entropy_term(p);
        Ok(EntropyWeights {
            delta: vec![0.0; n],
            prob: vec![p; n],
            entropy: vec![h; n],
            gamma: weights.iter().sum(),
            weights,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Total weight of `set`, summed in ascending node order.
    pub fn total(&self, set: &[usize]) -> f64 {
        let mut ids = set.to_vec();
        ids.sort_unstable();
        ids.iter().map(|&v| self.weights[v]).sum()
    }
}

/// Per-node local variation: `sqrt(sum_{j in N(i)} ||x_j - x_i||^2)`.
///
/// Taking the per-dimension variation first and then the L2 norm across
/// dimensions gives the same value, so only the collapsed form is computed.
pub fn local_variation(g: &Graph, x: &FeatureMatrix) -> Result<Vec<f64>> {
    if x.rows() != g.n() {
        return Err(Error::DimensionMismatch {
            what: "feature rows vs graph nodes",
            expected: g.n(),
            actual: x.rows(),
        });
    }
    Ok((0..g.n())
        .map(|i| {
            let xi = x.row(i);
            g.neighbors(i)
                .iter()
                .map(|&j| {
                    x.row(j)
                        .iter()
                        .zip(xi)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                })
                .sum::<f64>()
                .sqrt()
        })
        .collect())
}

/// Softmax of `-delta`, stabilized by subtracting the maximum exponent.
pub fn node_probabilities(delta: &[f64]) -> Result<Vec<f64>> {
    if delta.is_empty() {
        return Err(Error::InvalidArgument(
            "node probabilities need at least one node".into(),
        ));
    }
    if let Some(bad) = delta.iter().find(|d| !d.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "non-finite local variation {bad}"
        )));
    }
    let m = delta.iter().map(|d| -d).fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = delta.iter().map(|d| (-d - m).exp()).collect();
    let total: f64 = exps.iter().sum();
    Ok(exps.into_iter().map(|e| e / total).collect())
}

fn entropy_term(p: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        -p * p.ln()
    }
}

/// `-p ln p` per node, with `0 ln 0 = 0`.
pub fn node_entropies(prob: &[f64]) -> Result<Vec<f64>> {
    prob.iter()
        .map(|&p| {
            if (0.0..=1.0).contains(&p) {
                Ok(entropy_term(p))
            } else {
                Err(Error::InvalidArgument(format!(
                    "probability {p} outside [0, 1]"
                )))
            }
        })
        .collect()
}

pub fn build_weights(
    g: &Graph,
    x: Option<&FeatureMatrix>,
    mode: WeightMode,
) -> Result<EntropyWeights> {
    match mode {
        WeightMode::Unit => EntropyWeights::from_weights(vec![1.0; g.n()]),
        WeightMode::Entropy => {
            let x = x.ok_or_else(|| {
                Error::InvalidArgument("entropy weights require node features".into())
            })?;
            let delta = local_variation(g, x)?;
            if delta.is_empty() {
                return EntropyWeights::from_weights(Vec::new());
            }
            let prob = node_probabilities(&delta)?;
            let entropy = node_entropies(&prob)?;
            let weights = entropy.clone();
            Ok(EntropyWeights {
                gamma: weights.iter().sum(),
                delta,
                prob,
                entropy,
                weights,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn constant_features_have_zero_variation() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let x = FeatureMatrix::constant(4, &[2.0, -1.0, 0.5]).unwrap();
        assert_eq!(local_variation(&g, &x).unwrap(), vec![0.0; 4]);
    }

    #[test]
    fn single_edge_variation() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let x = FeatureMatrix::from_rows(&[vec![0.0], vec![3.0]]).unwrap();
        assert_eq!(local_variation(&g, &x).unwrap(), vec![3.0, 3.0]);
    }

    #[test]
    fn star_variation() {
        let g = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let x = FeatureMatrix::from_rows(&[vec![0.0], vec![1.0], vec![1.0]]).unwrap();
        let d = local_variation(&g, &x).unwrap();
        assert!(close(d[0], 2f64.sqrt(), 1e-15));
        assert_eq!(&d[1..], &[1.0, 1.0]);
    }

    #[test]
    fn isolated_node_has_zero_variation() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let x = FeatureMatrix::from_rows(&[vec![0.0], vec![5.0], vec![9.0]]).unwrap();
        assert_eq!(local_variation(&g, &x).unwrap()[2], 0.0);
    }

    #[test]
    fn variation_rejects_row_mismatch() {
        let g = Graph::empty(3);
        let x = FeatureMatrix::constant(2, &[1.0]).unwrap();
        assert!(matches!(
            local_variation(&g, &x),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn probabilities_closed_forms() {
        assert_eq!(node_probabilities(&[0.0; 4]).unwrap(), vec![0.25; 4]);
        let p = node_probabilities(&[0.0, 3f64.ln()]).unwrap();
        assert!(close(p[0], 0.75, 1e-15) && close(p[1], 0.25, 1e-15));
        assert!(node_probabilities(&[]).is_err());
    }

    #[test]
    fn probabilities_survive_huge_variation() {
        let p = node_probabilities(&[1e6, 0.0, 0.0]).unwrap();
        assert_eq!(p[0], 0.0);
        assert!(close(p.iter().sum::<f64>(), 1.0, 1e-12));
        // every entry huge: a naive softmax would divide 0 by 0
        let p = node_probabilities(&[1e6, 1e6 + 1.0]).unwrap();
        assert!(p.iter().all(|x| x.is_finite()));
        assert!(close(p.iter().sum::<f64>(), 1.0, 1e-12));
    }

    #[test]
    fn entropy_edge_values() {
        let h = node_entropies(&[1.0, 0.0, 0.25]).unwrap();
        assert_eq!(h[0], 0.0);
        assert_eq!(h[1], 0.0);
        assert!(close(h[2], 0.25 * 4f64.ln(), 1e-15));
        assert!(close(h[2], 0.34657, 1e-5));
        assert!(node_entropies(&[1.5]).is_err());
        assert!(node_entropies(&[-0.1]).is_err());
    }

    #[test]
    fn unit_weights() {
        let w = build_weights(&Graph::empty(5), None, WeightMode::Unit).unwrap();
        assert_eq!(w.weights, vec![1.0; 5]);
        assert_eq!(w.gamma, 5.0);
        assert_eq!(w.prob, vec![0.2; 5]);
        assert!(close(w.entropy[0], 0.2 * 5f64.ln(), 1e-15));
    }

    #[test]
    fn entropy_weights_constant_features() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let x = FeatureMatrix::constant(4, &[1.0]).unwrap();
        let w = build_weights(&g, Some(&x), WeightMode::Entropy).unwrap();
        for &wi in &w.weights {
            assert!(close(wi, 0.34657359, 1e-8));
        }
        assert!(close(w.gamma, 1.38629436, 1e-8));
    }

    #[test]
    fn entropy_weights_single_node() {
        let g = Graph::empty(1);
        let x = FeatureMatrix::constant(1, &[3.0]).unwrap();
        let w = build_weights(&g, Some(&x), WeightMode::Entropy).unwrap();
        assert_eq!(w.prob, vec![1.0]);
        assert_eq!(w.weights, vec![0.0]);
        assert_eq!(w.gamma, 0.0);
    }

    #[test]
    fn entropy_mode_needs_features() {
        assert!(build_weights(&Graph::empty(2), None, WeightMode::Entropy).is_err());
    }
}
