//! Text formats for trained embeddings and analysis outputs.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! written file parses back to bit-identical values.

use std::str::FromStr;

use thiserror::Error;
use veloembed_core::entity::{EntityIndex, EntityKey, RaceKey};
use veloembed_core::matrix::Matrix;
use veloembed_core::model::EmbeddingSet;

#[derive(Debug, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Renders embeddings as `entity_type,entity_key,d0,...,d{D-1}` with rider
/// rows first, both in index order.
pub fn render_embeddings(embeddings: &EmbeddingSet) -> String {
    let dim = embeddings.dim();
    let mut out = String::from("entity_type,entity_key");
    for d in 0..dim {
        out.push_str(&format!(",d{d}"));
    }
    out.push('\n');
    let index = embeddings.index();
    for (row, rider_id) in index.riders().iter().enumerate() {
        push_row(
            &mut out,
            "rider",
            &EntityKey::Rider(rider_id.clone()),
            embeddings.riders().row(row),
        );
    }
    for (row, race_key) in index.races().iter().enumerate() {
        push_row(
            &mut out,
            "race",
            &EntityKey::Race(race_key.clone()),
            embeddings.races().row(row),
        );
    }
    out
}

fn push_row(out: &mut String, entity_type: &str, key: &EntityKey, values: &[f64]) {
    out.push_str(entity_type);
    out.push(',');
    out.push_str(&key.to_string());
    for value in values {
        out.push(',');
        out.push_str(&value.to_string());
    }
    out.push('\n');
}

/// Parses an embeddings file back into an [`EmbeddingSet`].
///
/// Rows may list riders and races in any order; each entity's matrix row is
/// its position among rows of its own type. Errors carry the offending line
/// number.
pub fn parse_embeddings(content: &str) -> Result<EmbeddingSet, FormatError> {
    let mut lines = content.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| FormatError::new(1, "empty embeddings file"))?;
    let header_fields: Vec<&str> = header.trim_end_matches('\r').split(',').collect();
    if header_fields.len() < 3
        || header_fields[0] != "entity_type"
        || header_fields[1] != "entity_key"
    {
        return Err(FormatError::new(
            1,
            format!("expected header entity_type,entity_key,d0,..., found {header:?}"),
        ));
    }
    let dim = header_fields.len() - 2;
    for (d, field) in header_fields[2..].iter().enumerate() {
        if *field != format!("d{d}") {
            return Err(FormatError::new(
                1,
                format!("expected dimension column d{d}, found {field:?}"),
            ));
        }
    }

    let mut rider_keys: Vec<String> = Vec::new();
    let mut rider_rows: Vec<Vec<f64>> = Vec::new();
    let mut race_keys: Vec<RaceKey> = Vec::new();
    let mut race_rows: Vec<Vec<f64>> = Vec::new();

    for (offset, raw) in lines {
        let line = offset + 1;
        let text = raw.trim_end_matches('\r');
        if text.is_empty() {
            continue;
        }
        let fields: Vec<&str> = text.split(',').collect();
        if fields.len() != dim + 2 {
            return Err(FormatError::new(
                line,
                format!("expected {} fields, found {}", dim + 2, fields.len()),
            ));
        }
        let key = EntityKey::from_str(fields[1])
            .map_err(|e| FormatError::new(line, e.to_string()))?;
        if key.to_string() != fields[1] {
            return Err(FormatError::new(
                line,
                format!("entity key {:?} is not in canonical form", fields[1]),
            ));
        }
        match (fields[0], &key) {
            ("rider", EntityKey::Rider(_)) | ("race", EntityKey::Race(_)) => {}
            _ => {
                return Err(FormatError::new(
                    line,
                    format!(
                        "entity_type {:?} does not match key {:?}",
                        fields[0], fields[1]
                    ),
                ));
            }
        }
        let mut values = Vec::with_capacity(dim);
        for field in &fields[2..] {
            let value: f64 = field.parse().map_err(|_| {
                FormatError::new(line, format!("bad embedding value {field:?}"))
            })?;
            if !value.is_finite() {
                return Err(FormatError::new(
                    line,
                    format!("non-finite embedding value {field:?}"),
                ));
            }
            values.push(value);
        }
        match key {
            EntityKey::Rider(id) => {
                if rider_keys.contains(&id) {
                    return Err(FormatError::new(line, format!("duplicate key rider:{id}")));
                }
                rider_keys.push(id);
                rider_rows.push(values);
            }
            EntityKey::Race(race) => {
                if race_keys.contains(&race) {
                    return Err(FormatError::new(line, format!("duplicate key {race}")));
                }
                race_keys.push(race);
                race_rows.push(values);
            }
        }
    }

    let index = EntityIndex::from_keys(rider_keys, race_keys)
        .expect("duplicates were rejected during parsing");
    let riders = Matrix::from_rows(rider_rows, dim);
    let races = Matrix::from_rows(race_rows, dim);
    EmbeddingSet::new(riders, races, index)
        .map_err(|e| FormatError::new(1, e.to_string()))
}

/// Renders the per-epoch loss history as `epoch,loss`.
pub fn render_loss_history(history: &[f64]) -> String {
    let mut out = String::from("epoch,loss\n");
    for (epoch, loss) in history.iter().enumerate() {
        out.push_str(&format!("{epoch},{loss}\n"));
    }
    out
}

/// Renders `entity_key,pc1,pc2,color` rows.
pub fn render_pca(rows: &[(String, f64, f64, String)]) -> String {
    let mut out = String::from("entity_key,pc1,pc2,color\n");
    for (key, pc1, pc2, color) in rows {
        out.push_str(&format!("{key},{pc1},{pc2},{color}\n"));
    }
    out
}

/// Renders `entity_key,cluster` rows.
pub fn render_clusters(rows: &[(String, usize)]) -> String {
    let mut out = String::from("entity_key,cluster\n");
    for (key, cluster) in rows {
        out.push_str(&format!("{key},{cluster}\n"));
    }
    out
}
