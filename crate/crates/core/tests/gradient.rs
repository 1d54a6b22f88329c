mod common;

use common::*;
use mewis_core::scorer::{loss_gradient, node_inputs};
use mewis_core::{Aggregation, EntropyWeights, Graph};

#[test]
fn reverse_mode_matches_finite_differences() {
    for seed in 0..20 {
        let (g, w, model) = gradient_instance(seed);
        let x = node_inputs(&g, &w, true).unwrap();
        let (_, analytic) = loss_gradient(&model, &g, &w, x.view()).unwrap();
        let numeric = finite_difference_gradient(&model, &g, &w, &x, 1e-5);
        for (k, (a, b)) in analytic.iter().zip(&numeric).enumerate() {
            let err = gradient_mismatch(*a, *b);
            assert!(
                err < 1e-4,
                "seed {seed} param {k}: analytic {a} numeric {b} rel {err}"
            );
        }
    }
}

#[test]
fn zero_hidden_weights_still_match() {
    let (g, w, mut model) = gradient_instance(3);
    for layer in &mut model.layers {
        layer.w2.fill(0.0);
    }
    let x = node_inputs(&g, &w, true).unwrap();
    let (_, analytic) = loss_gradient(&model, &g, &w, x.view()).unwrap();
    let numeric = finite_difference_gradient(&model, &g, &w, &x, 1e-5);
    for (a, b) in analytic.iter().zip(&numeric) {
        assert!(gradient_mismatch(*a, *b) < 1e-4, "{a} vs {b}");
    }
}

#[test]
fn disjoint_copy_doubles_the_gradient() {
    let (g, w, model) = gradient_instance(7);
    let n = g.n();
    let doubled = Graph::from_edges(
        2 * n,
        g.edges()
            .iter()
            .flat_map(|&(u, v)| [(u, v), (u + n, v + n)]),
    )
    .unwrap();
    let w2 = EntropyWeights::from_weights(w.weights.iter().chain(&w.weights).copied().collect())
        .unwrap();
    let x = node_inputs(&g, &w, true).unwrap();
    let x2 = ndarray::concatenate(ndarray::Axis(0), &[x.view(), x.view()]).unwrap();

    let (loss1, g1) = loss_gradient(&model, &g, &w, x.view()).unwrap();
    let (loss2, g2) = loss_gradient(&model, &doubled, &w2, x2.view()).unwrap();
    assert!((loss2 - 2.0 * loss1).abs() < 1e-12 * (1.0 + loss1.abs()));
    for (a, b) in g1.iter().zip(&g2) {
        assert!((2.0 * a - b).abs() <= 1e-10 * (1.0 + b.abs()), "{a} {b}");
    }
}

#[test]
fn sum_aggregation_matches_finite_differences() {
    for seed in 20..30 {
        let (g, w, model) = gradient_instance(seed);
        let model = model.with_aggregation(Aggregation::Sum);
        let x = node_inputs(&g, &w, true).unwrap();
        let (_, analytic) = loss_gradient(&model, &g, &w, x.view()).unwrap();
        let numeric = finite_difference_gradient(&model, &g, &w, &x, 1e-5);
        for (a, b) in analytic.iter().zip(&numeric) {
            assert!(gradient_mismatch(*a, *b) < 1e-4, "seed {seed}: {a} vs {b}");
        }
    }
}
