//! GIN-style message-passing scorer trained on the relaxed MWIS objective.
//!
//! Each layer computes `h'_i = MLP((1 + eps) h_i + c_i sum_{j in N(i)} h_j)`
//! where the MLP is `relu(relu(a W1 + b1) W2 + b2)`. With [`Aggregation::Mean`]
//! (the default) `c_i = 1 / max(1, deg i)`; with [`Aggregation::Sum`] it is 1.
//! A linear head followed by the logistic function gives the per-node score
//! `z_i`.
//!
//! Parameters flatten layer-major, each matrix row-major:
//! `eps, W1, b1, W2, b2` for every layer, then `head_w, head_b`. Checkpoints
//! and the optimizer use this order.

use std::time::Instant;

use ndarray::{Array1, Array2, ArrayView2, Axis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::EntropyWeights;
use crate::error::{Error, Result};
use crate::extraction::{extract, ExtractOptions};
use crate::graph::Graph;
use crate::report::SolveResult;

/// Scores are clamped into `[Z_MIN, 1 - Z_MIN]`.
pub const Z_MIN: f64 = 1e-7;

/// Neighbor aggregation. Plain sums grow by roughly a factor of the degree per
/// layer, which saturates the logistic head on dense or deep inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    #[default]
    Mean,
    Sum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GinLayer {
    pub eps: f64,
    pub w1: Array2<f64>,
    pub b1: Array1<f64>,
    pub w2: Array2<f64>,
    pub b2: Array1<f64>,
}

impl GinLayer {
    fn zeros(input: usize, hidden: usize) -> Self {
        GinLayer {
            eps: 0.0,
            w1: Array2::zeros((input, hidden)),
            b1: Array1::zeros(hidden),
            w2: Array2::zeros((hidden, hidden)),
            b2: Array1::zeros(hidden),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScorerModel {
    input_dim: usize,
    hidden: usize,
    pub aggregation: Aggregation,
    pub layers: Vec<GinLayer>,
    pub head_w: Array1<f64>,
    pub head_b: f64,
}

fn glorot(rng: &mut ChaCha8Rng, fan_in: usize, fan_out: usize) -> Array2<f64> {
    let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
    Array2::from_shape_fn((fan_in, fan_out), |_| rng.gen_range(-limit..=limit))
}

impl ScorerModel {
    /// Glorot-uniform weights, zero biases, `eps = 0`, mean aggregation.
    pub fn new(input_dim: usize, hidden: usize, depth: usize, seed: u64) -> Result<Self> {
        if input_dim == 0 || hidden == 0 || depth == 0 {
            return Err(Error::InvalidArgument(format!(
                "scorer dimensions must be positive (input {input_dim}, hidden {hidden}, depth {depth})"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let layers = (0..depth)
            .map(|k| {
                let input = if k == 0 { input_dim } else { hidden };
                GinLayer {
                    eps: 0.0,
                    w1: glorot(&mut rng, input, hidden),
                    b1: Array1::zeros(hidden),
                    w2: glorot(&mut rng, hidden, hidden),
                    b2: Array1::zeros(hidden),
                }
            })
            .collect();
        let head = glorot(&mut rng, hidden, 1);
        Ok(ScorerModel {
            input_dim,
            hidden,
            aggregation: Aggregation::default(),
            layers,
            head_w: head.column(0).to_owned(),
            head_b: 0.0,
        })
    }

    pub fn with_aggregation(mut self, aggregation: Aggregation) -> Self {
        self.aggregation = aggregation;
        self
    }

    fn zeros_like(&self) -> Self {
        ScorerModel {
            input_dim: self.input_dim,
            hidden: self.hidden,
            aggregation: self.aggregation,
            layers: (0..self.depth())
                .map(|k| {
                    GinLayer::zeros(
                        if k == 0 { self.input_dim } else { self.hidden },
                        self.hidden,
                    )
                })
                .collect(),
            head_w: Array1::zeros(self.hidden),
            head_b: 0.0,
        }
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn hidden(&self) -> usize {
        self.hidden
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn param_count_for(input_dim: usize, hidden: usize, depth: usize) -> usize {
        if depth == 0 {
            return 0;
        }
        let layer = |input: usize| 1 + input * hidden + hidden + hidden * hidden + hidden;
        layer(input_dim) + (depth - 1) * layer(hidden) + hidden + 1
    }

    pub fn param_count(&self) -> usize {
        Self::param_count_for(self.input_dim, self.hidden, self.depth())
    }

    pub fn to_flat(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.param_count());
        for layer in &self.layers {
            out.push(layer.eps);
            out.extend(layer.w1.iter());
            out.extend(layer.b1.iter());
            out.extend(layer.w2.iter());
            out.extend(layer.b2.iter());
        }
        out.extend(self.head_w.iter());
        out.push(self.head_b);
        out
    }

    pub fn set_flat(&mut self, flat: &[f64]) -> Result<()> {
        if flat.len() != self.param_count() {
            return Err(Error::DimensionMismatch {
                what: "flat parameter vector",
                expected: self.param_count(),
                actual: flat.len(),
            });
        }
        let mut it = flat.iter().copied();
        let mut fill = |dst: &mut dyn Iterator<Item = &mut f64>| {
            for x in dst {
                *x = it.next().expect("length checked above");
            }
        };
        for layer in &mut self.layers {
            fill(&mut std::iter::once(&mut layer.eps));
            fill(&mut layer.w1.iter_mut());
            fill(&mut layer.b1.iter_mut());
            fill(&mut layer.w2.iter_mut());
            fill(&mut layer.b2.iter_mut());
        }
        fill(&mut self.head_w.iter_mut());
        fill(&mut std::iter::once(&mut self.head_b));
        Ok(())
    }

    pub fn to_checkpoint(&self) -> Checkpoint {
        Checkpoint {
            input_dim: self.input_dim,
            hidden: self.hidden,
            depth: self.depth(),
            aggregation: self.aggregation,
            params: self.to_flat(),
        }
    }

    pub fn from_checkpoint(ckpt: &Checkpoint) -> Result<Self> {
        let mut model = ScorerModel::new(ckpt.input_dim, ckpt.hidden, ckpt.depth, 0)?
            .with_aggregation(ckpt.aggregation);
        model.set_flat(&ckpt.params)?;
        Ok(model)
    }

    fn check_inputs(&self, g: &Graph, inputs: ArrayView2<f64>) -> Result<()> {
        if inputs.nrows() != g.n() {
            return Err(Error::DimensionMismatch {
                what: "input rows vs graph nodes",
                expected: g.n(),
                actual: inputs.nrows(),
            });
        }
        if inputs.ncols() != self.input_dim {
            return Err(Error::DimensionMismatch {
                what: "input columns",
                expected: self.input_dim,
                actual: inputs.ncols(),
            });
        }
        Ok(())
    }

    /// Per-node scores in `[Z_MIN, 1 - Z_MIN]`.
    pub fn forward(&self, g: &Graph, inputs: ArrayView2<f64>) -> Result<Vec<f64>> {
        Ok(self.forward_cached(g, inputs)?.z)
    }

    fn forward_cached(&self, g: &Graph, inputs: ArrayView2<f64>) -> Result<ForwardCache> {
        self.check_inputs(g, inputs)?;
        let mut layers = Vec::with_capacity(self.depth());
        let mut h = inputs.to_owned();
        for layer in &self.layers {
            let agg = aggregate(g, h.view(), layer.eps, self.aggregation);
            let pre1 = agg.dot(&layer.w1) + &layer.b1;
            let post1 = pre1.mapv(relu);
            let pre2 = post1.dot(&layer.w2) + &layer.b2;
            let out = pre2.mapv(relu);
            layers.push(LayerCache {
                input: std::mem::replace(&mut h, out),
                agg,
                pre1,
                post1,
                pre2,
            });
        }
        let logits = h.dot(&self.head_w) + self.head_b;
        let z = logits
            .iter()
            .map(|&o| logistic(o).clamp(Z_MIN, 1.0 - Z_MIN))
            .collect();
        Ok(ForwardCache {
            layers,
            last: h,
            logits,
            z,
        })
    }
}

/// Serialized model: dimensions plus the flat parameter vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub input_dim: usize,
    pub hidden: usize,
    pub depth: usize,
    /// Absent in older files, which were all mean-aggregated.
    #[serde(default)]
    pub aggregation: Aggregation,
    pub params: Vec<f64>,
}

struct LayerCache {
    input: Array2<f64>,
    agg: Array2<f64>,
    pre1: Array2<f64>,
    post1: Array2<f64>,
    pre2: Array2<f64>,
}

struct ForwardCache {
    layers: Vec<LayerCache>,
    last: Array2<f64>,
    logits: Array1<f64>,
    z: Vec<f64>,
}

fn relu(x: f64) -> f64 {
    x.max(0.0)
}

fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

fn neighbor_scale(g: &Graph, i: usize, mode: Aggregation) -> f64 {
    match mode {
        Aggregation::Mean => 1.0 / g.degree(i).max(1) as f64,
        Aggregation::Sum => 1.0,
    }
}

/// `(1 + eps) h_i + c_i sum_{j in N(i)} h_j` for every node.
fn aggregate(g: &Graph, h: ArrayView2<f64>, eps: f64, mode: Aggregation) -> Array2<f64> {
    let mut out = h.to_owned() * (1.0 + eps);
    for i in 0..g.n() {
        let c = neighbor_scale(g, i, mode);
        let mut row = out.row_mut(i);
        for &j in g.neighbors(i) {
            row.scaled_add(c, &h.row(j));
        }
    }
    out
}

/// Transpose of [`aggregate`]: `(1 + eps) d_j + sum_{i in N(j)} c_i d_i`.
fn aggregate_transpose(g: &Graph, d: ArrayView2<f64>, eps: f64, mode: Aggregation) -> Array2<f64> {
    let mut out = d.to_owned() * (1.0 + eps);
    for j in 0..g.n() {
        let mut row = out.row_mut(j);
        for &i in g.neighbors(j) {
            row.scaled_add(neighbor_scale(g, i, mode), &d.row(i));
        }
    }
    out
}

/// Scorer inputs: column 0 is the node weight, column 1 (optional) the
/// degree scaled by the maximum degree.
pub fn node_inputs(g: &Graph, w: &EntropyWeights, with_degree: bool) -> Result<Array2<f64>> {
    if w.len() != g.n() {
        return Err(Error::DimensionMismatch {
            what: "weights vs graph nodes",
            expected: g.n(),
            actual: w.len(),
        });
    }
    let cols = if with_degree { 2 } else { 1 };
    let scale = g.max_degree().max(1) as f64;
    Ok(Array2::from_shape_fn((g.n(), cols), |(i, c)| {
        if c == 0 {
            w.weights[i]
        } else {
            g.degree(i) as f64 / scale
        }
    }))
}

/// `gamma - sum_i w_i z_i + sum_{(i,j) in E} z_i z_j`, each undirected edge once.
pub fn pool_loss(g: &Graph, w: &EntropyWeights, z: &[f64]) -> Result<f64> {
    for (what, len) in [
        ("weights vs graph nodes", w.len()),
        ("scores vs graph nodes", z.len()),
    ] {
        if len != g.n() {
            return Err(Error::DimensionMismatch {
                what,
                expected: g.n(),
                actual: len,
            });
        }
    }
    let linear: f64 = w.weights.iter().zip(z).map(|(wi, zi)| wi * zi).sum();
    let quadratic: f64 = g.edges().iter().map(|&(u, v)| z[u] * z[v]).sum();
    Ok(w.gamma - linear + quadratic)
}

/// Loss and its exact gradient, flattened in parameter order.
pub fn loss_gradient(
    model: &ScorerModel,
    g: &Graph,
    w: &EntropyWeights,
    inputs: ArrayView2<f64>,
) -> Result<(f64, Vec<f64>)> {
    let cache = model.forward_cached(g, inputs)?;
    let z = &cache.z;
    let loss = pool_loss(g, w, z)?;
    let mut grad = model.zeros_like();
    let n = g.n();

    // dL/dz_i = -w_i + sum_{j in N(i)} z_j, then through the logistic
    let d_logit = Array1::from_shape_fn(n, |i| {
        let zi = z[i];
        let raw = logistic(cache.logits[i]);
        if !(Z_MIN..=1.0 - Z_MIN).contains(&raw) {
            return 0.0;
        }
        let dz = -w.weights[i] + g.neighbors(i).iter().map(|&j| z[j]).sum::<f64>();
        dz * zi * (1.0 - zi)
    });
    grad.head_w = cache.last.t().dot(&d_logit);
    grad.head_b = d_logit.sum();

    let d_logit_col = d_logit.insert_axis(Axis(1));
    let mut d_out = d_logit_col.dot(&model.head_w.view().insert_axis(Axis(0)));

    for (k, (layer, c)) in model.layers.iter().zip(&cache.layers).enumerate().rev() {
        let d_pre2 = &d_out * &c.pre2.mapv(|x| if x > 0.0 { 1.0 } else { 0.0 });
        let d_post1 = d_pre2.dot(&layer.w2.t());
        let d_pre1 = &d_post1 * &c.pre1.mapv(|x| if x > 0.0 { 1.0 } else { 0.0 });
        let d_agg = d_pre1.dot(&layer.w1.t());

        let gl = &mut grad.layers[k];
        gl.w2 = c.post1.t().dot(&d_pre2);
        gl.b2 = d_pre2.sum_axis(Axis(0));
        gl.w1 = c.agg.t().dot(&d_pre1);
        gl.b1 = d_pre1.sum_axis(Axis(0));
        gl.eps = (&d_agg * &c.input).sum();

        if k > 0 {
            d_out = aggregate_transpose(g, d_agg.view(), layer.eps, model.aggregation);
        }
    }
    Ok((loss, grad.to_flat()))
}

#[derive(Debug, Clone)]
pub struct Adam {
    lr: f64,
    beta1: f64,
    beta2: f64,
    eps: f64,
    t: i32,
    m: Vec<f64>,
    v: Vec<f64>,
}

impl Adam {
    pub fn new(len: usize, lr: f64, beta1: f64, beta2: f64, eps: f64) -> Self {
        Adam {
            lr,
            beta1,
            beta2,
            eps,
            t: 0,
            m: vec![0.0; len],
            v: vec![0.0; len],
        }
    }

    pub fn step(&mut self, params: &mut [f64], grads: &[f64]) {
        self.t += 1;
        let c1 = 1.0 - self.beta1.powi(self.t);
        let c2 = 1.0 - self.beta2.powi(self.t);
        for (((p, &g), m), v) in params
            .iter_mut()
            .zip(grads)
            .zip(&mut self.m)
            .zip(&mut self.v)
        {
            *m = self.beta1 * *m + (1.0 - self.beta1) * g;
            *v = self.beta2 * *v + (1.0 - self.beta2) * g * g;
            let m_hat = *m / c1;
            let v_hat = *v / c2;
            *p -= self.lr * m_hat / (v_hat.sqrt() + self.eps);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub seed: u64,
    /// Epochs between trial extractions; the final model is always extracted.
    pub extract_every: usize,
    pub adam_beta1: f64,
    pub adam_beta2: f64,
    pub adam_eps: f64,
    pub hidden: usize,
    pub layers: usize,
    /// Append the scaled degree to the weight column of the scorer input.
    pub degree_feature: bool,
    #[serde(default)]
    pub aggregation: Aggregation,
    pub extraction: ExtractOptions,
}

impl TrainConfig {
    /// Six layers, maximalized extraction.
    pub fn mis() -> Self {
        TrainConfig {
            epochs: 200,
            learning_rate: 1e-3,
            seed: 0,
            extract_every: 10,
            adam_beta1: 0.9,
            adam_beta2: 0.999,
            adam_eps: 1e-8,
            hidden: 32,
            layers: 6,
            degree_feature: true,
            aggregation: Aggregation::Mean,
            extraction: ExtractOptions {
                maximalize: true,
                ..ExtractOptions::default()
            },
        }
    }

    /// Three layers, raw extraction.
    pub fn pooling() -> Self {
        TrainConfig {
            layers: 3,
            extraction: ExtractOptions {
                maximalize: false,
                ..ExtractOptions::default()
            },
            ..TrainConfig::mis()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.epochs < 1 {
            return bad("epochs must be at least 1".into());
        }
        if self.extract_every < 1 {
            return bad("extract_every must be at least 1".into());
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad(format!(
                "learning rate must be positive, got {}",
                self.learning_rate
            ));
        }
        if !(0.0..1.0).contains(&self.adam_beta1) || !(0.0..1.0).contains(&self.adam_beta2) {
            return bad("Adam betas must lie in [0, 1)".into());
        }
        if self.adam_eps.is_nan() || self.adam_eps <= 0.0 {
            return bad("Adam eps must be positive".into());
        }
        if self.hidden == 0 || self.layers == 0 {
            return bad("hidden width and layer count must be positive".into());
        }
        Ok(())
    }

    pub fn input_dim(&self) -> usize {
        if self.degree_feature {
            2
        } else {
            1
        }
    }
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig::mis()
    }
}

/// Full-batch Adam on the pooling loss, extracting an independent set every
/// `extract_every` epochs and from the final model. Returns the final model
/// and the heaviest set seen.
pub fn train(
    g: &Graph,
    w: &EntropyWeights,
    cfg: &TrainConfig,
) -> Result<(ScorerModel, SolveResult)> {
    cfg.validate()?;
    let start = Instant::now();
    let inputs = node_inputs(g, w, cfg.degree_feature)?;
    let mut model = ScorerModel::new(cfg.input_dim(), cfg.hidden, cfg.layers, cfg.seed)?
        .with_aggregation(cfg.aggregation);
    let mut params = model.to_flat();
    let mut adam = Adam::new(
        params.len(),
        cfg.learning_rate,
        cfg.adam_beta1,
        cfg.adam_beta2,
        cfg.adam_eps,
    );

    let mut best: Option<(Vec<usize>, f64)> = None;
    let mut consider = |z: &[f64]| -> Result<()> {
        let set = extract(g, w, z, &cfg.extraction)?.selected;
        let weight = w.total(&set);
        if best.as_ref().is_none_or(|(_, bw)| weight > *bw) {
            best = Some((set, weight));
        }
        Ok(())
    };

    let mut trace = Vec::with_capacity(cfg.epochs);
    for epoch in 0..cfg.epochs {
        let (loss, grads) = loss_gradient(&model, g, w, inputs.view())?;
        trace.push(loss);
        if epoch % cfg.extract_every == 0 {
            consider(&model.forward(g, inputs.view())?)?;
        }
        adam.step(&mut params, &grads);
        model.set_flat(&params)?;
    }
    consider(&model.forward(g, inputs.view())?)?;

    let (selected, total_weight) = best.expect("final extraction always runs");
    let result = SolveResult {
        solver: "mewis".into(),
        graph_name: String::new(),
        n: g.n(),
        m: g.num_edges(),
        size: selected.len(),
        selected,
        total_weight,
        loss_trace: Some(trace),
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        seed: cfg.seed,
        config: serde_json::to_value(cfg).expect("config serializes"),
    };
    Ok((model, result))
}
