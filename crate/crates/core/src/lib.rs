//! Maximum-entropy weighted independent set pooling.
//!
//! Node weights come from feature smoothness ([`entropy`]); a message-passing
//! scorer is trained without supervision on the relaxed independent set
//! objective ([`scorer`]); its scores are rounded to a valid independent set
//! by conditional expectation ([`extraction`]); and the kept nodes are
//! reconnected through short walks to form a pooled graph ([`pooling`]).
//! [`oracle`] holds exact and greedy baselines.

pub mod dataset;
pub mod entropy;
pub mod error;
pub mod extraction;
pub mod graph;
pub mod oracle;
pub mod pooling;
pub mod report;
pub mod scorer;

pub use entropy::{build_weights, EntropyWeights, WeightMode};
pub use error::{Error, Result};
pub use extraction::{extract, verify_independent, ExtractOptions, Extraction, ThresholdPolicy};
pub use graph::{
    convert_raw, gen_random, load_edge_list, load_features, walk_reachability, FeatureMatrix,
    Graph, RandomModel,
};
pub use oracle::{exact_bnb, exact_enumerate, greedy, OracleResult};
pub use pooling::{mewis_pool, pool_chain, reconstruct, PooledGraph};
pub use report::SolveResult;
pub use scorer::{pool_loss, train, Aggregation, ScorerModel, TrainConfig};
