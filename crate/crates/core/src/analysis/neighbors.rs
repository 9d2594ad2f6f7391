//! Euclidean nearest-neighbor lookup among embeddings of one entity type.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::AnalysisError;
use crate::entity::EntityKey;
use crate::matrix::{squared_distance, Matrix};
use crate::model::EmbeddingSet;

/// One ranked neighbor.
#[derive(Debug, Clone, PartialEq)]
pub struct Neighbor {
    pub key: EntityKey,
    pub distance: f64,
}

/// Ranks the entities of the query's type by ascending Euclidean distance
/// to the query embedding. The query itself is excluded; distance ties are
/// broken by lexicographic key order.
pub fn nearest_neighbors(
    query: &EntityKey,
    embeddings: &EmbeddingSet,
    count: usize,
) -> Result<Vec<Neighbor>, AnalysisError> {
    let index = embeddings.index();
    let query_row = index
        .entity_index(query)
        .ok_or_else(|| AnalysisError::UnknownKey {
            key: query.to_string(),
        })?;

    let (matrix, keys): (&Matrix, Vec<EntityKey>) = match query {
        EntityKey::Rider(_) => (
            embeddings.riders(),
            index
                .riders()
                .iter()
                .map(|id| EntityKey::Rider(id.clone()))
                .collect(),
        ),
        EntityKey::Race(_) => (
            embeddings.races(),
            index
                .races()
                .iter()
                .map(|race| EntityKey::Race(race.clone()))
                .collect(),
        ),
    };

    let query_vec = matrix.row(query_row);
    let mut ranked: Vec<(f64, String, EntityKey)> = keys
        .into_iter()
        .enumerate()
        .filter(|(row, _)| *row != query_row)
        .map(|(row, key)| {
            let distance = libm::sqrt(squared_distance(query_vec, matrix.row(row)));
            (distance, key.to_string(), key)
        })
        .collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    ranked.truncate(count);

    Ok(ranked
        .into_iter()
        .map(|(distance, _, key)| Neighbor { key, distance })
        .collect())
}
