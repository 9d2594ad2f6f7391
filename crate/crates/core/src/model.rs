//! The embedding model: sigmoid of a rider/race dot product, binary
//! cross-entropy loss over winner-normalized scores, and its analytic
//! gradients.
//!
//! Transcendentals go through `libm` so results are bit-identical across
//! platforms.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use thiserror::Error;

use crate::dataset::TrainingExample;
use crate::entity::{EntityIndex, EntityKey};
use crate::matrix::{dot, Matrix};

/// Probabilities are clamped into `[EPSILON, 1 - EPSILON]` before logs and
/// before being reported, so the loss stays finite and predictions stay
/// strictly inside (0, 1). Gradients use the unclamped sigmoid.
pub const PROBABILITY_EPSILON: f64 = 1e-12;

/// Numerically stable logistic function, exact at 0 and monotone.
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + libm::exp(-x))
    } else {
        let e = libm::exp(x);
        e / (1.0 + e)
    }
}

fn clamp_probability(p: f64) -> f64 {
    p.clamp(PROBABILITY_EPSILON, 1.0 - PROBABILITY_EPSILON)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("embedding dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("{entity} matrix has {rows} rows but the index names {index_size}")]
    RowCountMismatch {
        entity: &'static str,
        rows: usize,
        index_size: usize,
    },
    #[error("non-finite value in {entity} matrix at row {row}, column {col}")]
    NonFinite {
        entity: &'static str,
        row: usize,
        col: usize,
    },
    #[error("{entity} index {index} out of range ({len} {entity}s)")]
    IndexOutOfRange {
        entity: &'static str,
        index: usize,
        len: usize,
    },
}

/// Rider and race embedding matrices plus the index naming their rows.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSet {
    riders: Matrix,
    races: Matrix,
    index: EntityIndex,
}

impl EmbeddingSet {
    /// Validates shapes against the index and that every entry is finite.
    pub fn new(riders: Matrix, races: Matrix, index: EntityIndex) -> Result<Self, ModelError> {
        if riders.rows() != index.n_riders() {
            return Err(ModelError::RowCountMismatch {
                entity: "rider",
                rows: riders.rows(),
                index_size: index.n_riders(),
            });
        }
        if races.rows() != index.n_races() {
            return Err(ModelError::RowCountMismatch {
                entity: "race",
                rows: races.rows(),
                index_size: index.n_races(),
            });
        }
        if riders.cols() != races.cols() {
            return Err(ModelError::DimensionMismatch {
                left: riders.cols(),
                right: races.cols(),
            });
        }
        for (entity, matrix) in [("rider", &riders), ("race", &races)] {
            for (row, values) in matrix.iter_rows().enumerate() {
                if let Some(col) = values.iter().position(|v| !v.is_finite()) {
                    return Err(ModelError::NonFinite { entity, row, col });
                }
            }
        }
        Ok(Self {
            riders,
            races,
            index,
        })
    }

    pub fn riders(&self) -> &Matrix {
        &self.riders
    }

    pub fn races(&self) -> &Matrix {
        &self.races
    }

    pub fn index(&self) -> &EntityIndex {
        &self.index
    }

    /// Embedding dimension D.
    pub fn dim(&self) -> usize {
        self.riders.cols()
    }

    /// Embedding vector for any entity key, if it is indexed.
    pub fn vector(&self, key: &EntityKey) -> Option<&[f64]> {
        let row = self.index.entity_index(key)?;
        match key {
            EntityKey::Rider(_) => Some(self.riders.row(row)),
            EntityKey::Race(_) => Some(self.races.row(row)),
        }
    }

    pub(crate) fn riders_mut(&mut self) -> &mut Matrix {
        &mut self.riders
    }

    pub(crate) fn races_mut(&mut self) -> &mut Matrix {
        &mut self.races
    }

    pub fn into_parts(self) -> (Matrix, Matrix, EntityIndex) {
        (self.riders, self.races, self.index)
    }

    fn example_rows(&self, ex: &TrainingExample) -> Result<(&[f64], &[f64]), ModelError> {
        if ex.rider_index >= self.riders.rows() {
            return Err(ModelError::IndexOutOfRange {
                entity: "rider",
                index: ex.rider_index,
                len: self.riders.rows(),
            });
        }
        if ex.race_index >= self.races.rows() {
            return Err(ModelError::IndexOutOfRange {
                entity: "race",
                index: ex.race_index,
                len: self.races.rows(),
            });
        }
        Ok((self.riders.row(ex.rider_index), self.races.row(ex.race_index)))
    }
}

/// Predicted aptitude of a rider at a race: sigmoid of the dot product,
/// clamped strictly inside (0, 1).
pub fn predict(rider_vec: &[f64], race_vec: &[f64]) -> Result<f64, ModelError> {
    if rider_vec.len() != race_vec.len() {
        return Err(ModelError::DimensionMismatch {
            left: rider_vec.len(),
            right: race_vec.len(),
        });
    }
    Ok(clamp_probability(sigmoid(dot(rider_vec, race_vec))))
}

/// Mean binary cross-entropy between predictions and normalized scores.
///
/// The targets may be fractional; the formula is applied to them as-is.
/// Returns 0 for an empty example list.
pub fn loss(embeddings: &EmbeddingSet, examples: &[TrainingExample]) -> Result<f64, ModelError> {
    if examples.is_empty() {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for ex in examples {
        let (rider, race) = embeddings.example_rows(ex)?;
        let p = clamp_probability(sigmoid(dot(rider, race)));
        total += ex.target * libm::log(p) + (1.0 - ex.target) * libm::log(1.0 - p);
    }
    Ok(-total / examples.len() as f64)
}

/// Gradients of [`loss`] with respect to the rider and race matrices.
///
/// For each example, `(p - y) / N` times the opposite entity's vector is
/// accumulated into the corresponding row; entities appearing in several
/// examples accumulate all their contributions. Examples are processed in
/// order so the reduction is deterministic.
pub fn loss_gradients(
    embeddings: &EmbeddingSet,
    examples: &[TrainingExample],
) -> Result<(Matrix, Matrix), ModelError> {
    let dim = embeddings.dim();
    let mut grad_riders = Matrix::zeros(embeddings.riders().rows(), dim);
    let mut grad_races = Matrix::zeros(embeddings.races().rows(), dim);
    if examples.is_empty() {
        return Ok((grad_riders, grad_races));
    }
    let scale = 1.0 / examples.len() as f64;
    for ex in examples {
        let (rider, race) = embeddings.example_rows(ex)?;
        let p = sigmoid(dot(rider, race));
        let coefficient = scale * (p - ex.target);
        let grad_rider_row = grad_riders.row_mut(ex.rider_index);
        for d in 0..dim {
            grad_rider_row[d] += coefficient * race[d];
        }
        let grad_race_row = grad_races.row_mut(ex.race_index);
        for d in 0..dim {
            grad_race_row[d] += coefficient * rider[d];
        }
    }
    Ok((grad_riders, grad_races))
}

/// Builds a readable list of indexed keys closest to `key` in sort order,
/// for "unknown key" error messages.
pub fn nearest_key_suggestions(index: &EntityIndex, key: &EntityKey, count: usize) -> Vec<String> {
    let mut keys: Vec<String> = match key {
        EntityKey::Rider(_) => index
            .riders()
            .iter()
            .map(|id| EntityKey::Rider(id.clone()).to_string())
            .collect(),
        EntityKey::Race(_) => index
            .races()
            .iter()
            .map(|race| EntityKey::Race(race.clone()).to_string())
            .collect(),
    };
    keys.sort_unstable();
    let target = key.to_string();
    let insertion = keys.partition_point(|k| k < &target);
    let start = insertion.saturating_sub(1);
    let end = keys.len().min(start + count);
    keys[start..end].to_vec()
}
