//! Embedding analyses: PCA projection, k-means clustering, and Euclidean
//! nearest-neighbor similarity.

mod kmeans;
mod neighbors;
mod pca;

pub use kmeans::{kmeans, ClusterResult, DEFAULT_KMEANS_MAX_ITERS, DEFAULT_KMEANS_TOL};
pub use neighbors::{nearest_neighbors, Neighbor};
pub use pca::{pca_project, PcaResult};

use alloc::string::String;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("PCA needs at least 2 rows, got {rows}")]
    TooFewRows { rows: usize },
    #[error("requested {requested} principal components but at most {max} are available")]
    ComponentCount { requested: usize, max: usize },
    #[error("cluster count k={k} is invalid for {n} points (need 1 <= k <= n)")]
    InvalidClusterCount { k: usize, n: usize },
    #[error("unknown entity key {key:?}")]
    UnknownKey { key: String },
}
