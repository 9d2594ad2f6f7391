//! The run manifest written next to every training run: tool version,
//! input digest, full configuration, and ingestion counters. Re-running
//! with the same manifest inputs reproduces the outputs byte for byte.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use veloembed_core::dataset::IngestionSummary;
use veloembed_core::trainer::TrainConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    /// `sha256:<hex>` over the raw bytes of the results file.
    pub input_digest: String,
    pub optimizer: String,
    pub config: ManifestConfig,
    pub summary: ManifestSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestConfig {
    pub dim: usize,
    pub learning_rate: f64,
    pub epochs: usize,
    pub seed: u64,
    pub beta1: f64,
    pub beta2: f64,
    pub adam_epsilon: f64,
    pub init_scale: f64,
    pub min_rider_points: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestSummary {
    pub rows_read: usize,
    pub rows_filtered: usize,
    pub editions_dropped_zero_winner: usize,
    pub riders_indexed: usize,
    pub races_indexed: usize,
    pub examples: usize,
}

impl From<IngestionSummary> for ManifestSummary {
    fn from(s: IngestionSummary) -> Self {
        Self {
            rows_read: s.rows_read,
            rows_filtered: s.rows_filtered,
            editions_dropped_zero_winner: s.editions_dropped_zero_winner,
            riders_indexed: s.riders_indexed,
            races_indexed: s.races_indexed,
            examples: s.examples,
        }
    }
}

impl RunManifest {
    pub fn new(
        config: &TrainConfig,
        min_rider_points: f64,
        input_bytes: &[u8],
        summary: IngestionSummary,
    ) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest: digest(input_bytes),
            optimizer: "adam".to_string(),
            config: ManifestConfig {
                dim: config.dim,
                learning_rate: config.learning_rate,
                epochs: config.epochs,
                seed: config.seed,
                beta1: config.beta1,
                beta2: config.beta2,
                adam_epsilon: config.adam_epsilon,
                init_scale: config.init_scale,
                min_rider_points,
            },
            summary: summary.into(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}
