//! Network Pearson correlation of node signals, gated by a spectral
//! certificate on the weight matrix.
//!
//! The correlation of two node signals `x`, `y` on a graph is
//!
//! ```text
//! rho = sum_ij W_ij x̂_i ŷ_j / sqrt((sum_ij W_ij x̂_i x̂_j) (sum_ij W_ij ŷ_i ŷ_j))
//! ```
//!
//! with `x̂`, `ŷ` the mean-centered signals. It is real, finite and inside
//! `[-1, 1]` for every pair of non-constant signals exactly when `W` is
//! positive definite on the vectors orthogonal to the all-ones vector.
//! [`spectral::certify_weight`] decides that by double-centering `W` and
//! inspecting the spectrum; [`correlation::network_pearson`] refuses to run
//! without a valid certificate.
//!
//! Weights of the form `exp(-k D)` are valid for every `k > 0` whenever `D`
//! is a metric of negative type. Two such metrics are provided in
//! [`metrics`]: effective resistance and Euclidean distances between node
//! embeddings. Shortest-path distances are generally *not* of negative type;
//! [`scan`] searches random graphs for counterexamples.

pub mod cli;
pub mod correlation;
pub mod error;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod report;
pub mod scan;
pub mod spectral;
pub mod weights;

pub use correlation::{CorrelationResult, CorrelationValue, OverrideResult, Signal};
pub use error::{Error, Result};
pub use graph::Graph;
pub use metrics::{DistanceKind, DistanceMatrix, Embedding};
pub use spectral::{Certificate, SpectralVerdict, Verdict};
pub use weights::{WeightMatrix, WeightSource};

/// Default relative zero-threshold for spectral certificates.
pub const DEFAULT_REL_TOL: f64 = 1e-9;
