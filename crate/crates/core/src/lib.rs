//! Joint vector embeddings for road-cycling riders and races, learned from
//! historical results.
//!
//! Each result is scored by the rider's points divided by the edition
//! winner's points; a rider's aptitude at a race is modeled as the sigmoid
//! of the dot product of their embeddings, trained by minimizing binary
//! cross-entropy with full-batch Adam. The learned embeddings can then be
//! projected with PCA, clustered with k-means, and queried for Euclidean
//! nearest neighbors.
//!
//! The crate is `no_std`-compatible (with `alloc`); all file and terminal
//! handling lives in the companion CLI crate. Math goes through `libm` and
//! all randomness is seeded, so identical inputs give bit-identical output
//! on any platform.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analysis;
pub mod dataset;
pub mod entity;
pub mod matrix;
pub mod model;
pub mod trainer;

pub use analysis::{
    kmeans, nearest_neighbors, pca_project, AnalysisError, ClusterResult, Neighbor, PcaResult,
};
pub use dataset::{
    ingest, DatasetError, Ingestion, IngestionSummary, ResultRow, TrainingExample,
};
pub use entity::{EntityIndex, EntityKey, RaceKey};
pub use matrix::Matrix;
pub use model::{loss, loss_gradients, predict, sigmoid, EmbeddingSet, ModelError};
pub use trainer::{adam_step, init_embeddings, train, AdamState, TrainConfig, TrainError};
