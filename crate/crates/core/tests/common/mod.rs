//! Reference implementations used only by tests. None of these share code
//! with the library paths they check.
#![allow(dead_code)]

use mewis_core::entropy::{build_weights, WeightMode};
use mewis_core::{gen_random, EntropyWeights, FeatureMatrix, Graph, RandomModel, ScorerModel};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn dense_adjacency(g: &Graph) -> Vec<Vec<u64>> {
    let mut a = vec![vec![0u64; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        a[u][v] = 1;
        a[v][u] = 1;
    }
    a
}

fn matmul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut c = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

/// `(1 - I) ⊙ clip(A² + A³)` restricted to `subset`, by dense matrix powers.
pub fn dense_reach(g: &Graph, subset: &[usize]) -> Vec<Vec<bool>> {
    let a = dense_adjacency(g);
    let a2 = matmul(&a, &a);
    let a3 = matmul(&a2, &a);
    subset
        .iter()
        .map(|&u| {
            subset
                .iter()
                .map(|&v| u != v && (a2[u][v] + a3[u][v]).min(1) == 1)
                .collect()
        })
        .collect()
}

/// Random connected graph: a random spanning tree plus G(n, p) extras.
pub fn random_connected(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    Graph::from_edges(n, edges.into_iter().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

pub fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm
}

pub fn is_independent_bruteforce(g: &Graph, set: &[usize]) -> bool {
    set.iter().all(|&u| {
        set.iter()
            .all(|&v| u == v || !g.edges().contains(&(u.min(v), u.max(v))))
    })
}

/// Every maximal independent set of a small graph, by subset scan.
pub fn maximal_independent_sets(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    assert!(n <= 16);
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | (1 << u)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let independent = (0..n).all(|v| mask & (1 << v) == 0 || nbr[v] & mask == 0);
        let maximal = (0..n).all(|v| mask & (1 << v) != 0 || nbr[v] & mask != 0);
        if independent && maximal {
            out.push((0..n).filter(|&v| mask & (1 << v) != 0).collect());
        }
    }
    out
}

/// Loss from scratch: `gamma - Σ w z + Σ_edges z z`.
pub fn loss_reference(g: &Graph, w: &EntropyWeights, z: &[f64]) -> f64 {
    let gamma: f64 = w.weights.iter().sum();
    let mut loss = gamma;
    for i in 0..g.n() {
        loss -= w.weights[i] * z[i];
    }
    for &(u, v) in g.edges() {
        loss += z[u] * z[v];
    }
    loss
}

/// Straight transcription of the extraction loop, recomputing the loss in
/// full for every trial.
pub fn extract_reference(g: &Graph, w: &EntropyWeights, z_in: &[f64]) -> Vec<usize> {
    let n = g.n();
    let threshold = loss_reference(g, w, z_in);
    let mut z = z_in.to_vec();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| z_in[b].partial_cmp(&z_in[a]).unwrap().then(a.cmp(&b)));
    let mut selected = vec![false; n];
    let mut rejected = vec![false; n];
    for v in order {
        if selected[v] || rejected[v] {
            continue;
        }
        let mut s = z.clone();
        s[v] = 1.0;
        for &u in g.neighbors(v) {
            s[u] = 0.0;
        }
        if loss_reference(g, w, &s) <= threshold + 1e-12 {
            selected[v] = true;
            z[v] = 1.0;
            for &u in g.neighbors(v) {
                rejected[u] = true;
                z[u] = 0.0;
            }
        }
    }
    (0..n).filter(|&v| selected[v]).collect()
}

/// Central finite differences of loss(forward(params)) for every parameter.
pub fn finite_difference_gradient(
    model: &ScorerModel,
    g: &Graph,
    w: &EntropyWeights,
    inputs: &Array2<f64>,
    step: f64,
) -> Vec<f64> {
    let base = model.to_flat();
    let mut probe = model.clone();
    let mut eval = |params: &[f64]| {
        probe.set_flat(params).unwrap();
        let z = probe.forward(g, inputs.view()).unwrap();
        loss_reference(g, w, &z)
    };
    (0..base.len())
        .map(|k| {
            let mut plus = base.clone();
            plus[k] += step;
            let mut minus = base.clone();
            minus[k] -= step;
            (eval(&plus) - eval(&minus)) / (2.0 * step)
        })
        .collect()
}

/// Relative error with an absolute floor, as used for gradient checks.
pub fn gradient_mismatch(analytic: f64, numeric: f64) -> f64 {
    let scale = analytic.abs().max(numeric.abs());
    let diff = (analytic - numeric).abs();
    if diff <= 1e-8 {
        0.0
    } else {
        diff / scale
    }
}

/// Random weights, graph (n <= 10) and a 2-layer width-8 scorer whose
/// parameters are nudged off their initial values.
pub fn gradient_instance(seed: u64) -> (Graph, EntropyWeights, ScorerModel) {
    let mut r = rng(seed);
    let n = r.gen_range(1..=10);
    let g = gen_random(RandomModel::ErdosRenyi, n, 0.4, seed).unwrap();
    let w = if seed % 2 == 0 {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)])
            .collect();
        build_weights(
            &g,
            Some(&FeatureMatrix::from_rows(&rows).unwrap()),
            WeightMode::Entropy,
        )
        .unwrap()
    } else {
        EntropyWeights::from_weights((0..n).map(|_| r.gen_range(0.0..2.0)).collect()).unwrap()
    };
    let mut model = ScorerModel::new(2, 8, 2, seed).unwrap();
    // move away from the zero biases and eps of a fresh model
    let params: Vec<f64> = model
        .to_flat()
        .iter()
        .map(|p| p + r.gen_range(-0.2..0.2))
        .collect();
    model.set_flat(&params).unwrap();
    (g, w, model)
}
