//! Implementations of the CLI subcommands. Each takes plain arguments and a
//! writer for its terminal output so the behavior is testable without
//! spawning the binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use veloembed_core::analysis::{
    kmeans, nearest_neighbors, pca_project, AnalysisError, DEFAULT_KMEANS_MAX_ITERS,
    DEFAULT_KMEANS_TOL,
};
use veloembed_core::dataset::{self, ingest, race_profile_scores};
use veloembed_core::entity::EntityKey;
use veloembed_core::model::{nearest_key_suggestions, predict, EmbeddingSet};
use veloembed_core::trainer::{train, TrainConfig};

use crate::formats;
use crate::manifest::RunManifest;

pub const EMBEDDINGS_FILE: &str = "embeddings.csv";
pub const LOSS_HISTORY_FILE: &str = "loss_history.csv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const RIDER_PCA_FILE: &str = "rider_pca.csv";
pub const RACE_PCA_FILE: &str = "race_pca.csv";
pub const CLUSTERS_FILE: &str = "clusters.csv";

/// Removes every registered output unless the run reaches `commit`, so a
/// failed command never leaves partial outputs behind.
struct OutputGuard {
    paths: Vec<PathBuf>,
    committed: bool,
}

impl OutputGuard {
    fn new() -> Self {
        Self {
            paths: Vec::new(),
            committed: false,
        }
    }

    fn write(&mut self, path: PathBuf, contents: &str) -> Result<()> {
        self.paths.push(path.clone());
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
    }

    fn commit(mut self) {
        self.committed = true;
    }
}

impl Drop for OutputGuard {
    fn drop(&mut self) {
        if !self.committed {
            for path in &self.paths {
                let _ = fs::remove_file(path);
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrainArgs {
    pub results: PathBuf,
    pub output_dir: PathBuf,
    pub dim: usize,
    pub learning_rate: f64,
    pub epochs: usize,
    pub seed: u64,
    pub min_rider_points: f64,
}

/// Ingests the results file, trains embeddings, and writes
/// `embeddings.csv`, `loss_history.csv`, and `manifest.json` to the output
/// directory. Prints the ingestion summary as key=value lines.
pub fn cmd_train(args: &TrainArgs, out: &mut impl Write) -> Result<()> {
    let bytes = fs::read(&args.results)
        .with_context(|| format!("reading {}", args.results.display()))?;
    let text = String::from_utf8(bytes.clone())
        .with_context(|| format!("{} is not valid UTF-8", args.results.display()))?;
    let ingestion = ingest(&text, args.min_rider_points)
        .with_context(|| format!("ingesting {}", args.results.display()))?;
    if ingestion.examples.is_empty() {
        bail!("no training examples");
    }

    let config = TrainConfig {
        dim: args.dim,
        learning_rate: args.learning_rate,
        epochs: args.epochs,
        seed: args.seed,
        ..TrainConfig::default()
    };
    let (embeddings, history) = train(&ingestion.examples, &ingestion.index, &config)?;
    let manifest = RunManifest::new(&config, args.min_rider_points, &bytes, ingestion.summary);

    fs::create_dir_all(&args.output_dir)
        .with_context(|| format!("creating {}", args.output_dir.display()))?;
    let mut guard = OutputGuard::new();
    guard.write(
        args.output_dir.join(EMBEDDINGS_FILE),
        &formats::render_embeddings(&embeddings),
    )?;
    guard.write(
        args.output_dir.join(LOSS_HISTORY_FILE),
        &formats::render_loss_history(&history),
    )?;
    guard.write(args.output_dir.join(MANIFEST_FILE), &manifest.to_json())?;
    guard.commit();

    writeln!(out, "{}", ingestion.summary)?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct AnalyzeArgs {
    pub embeddings: PathBuf,
    pub output_dir: PathBuf,
    pub k: usize,
    pub seed: u64,
    pub profile_scores: Option<PathBuf>,
}

/// Projects riders and races to 2D with PCA, clusters riders with k-means,
/// and writes `rider_pca.csv` (colored by cluster), `race_pca.csv` (colored
/// by profile score when a results file is supplied), and `clusters.csv`.
pub fn cmd_analyze(args: &AnalyzeArgs, out: &mut impl Write) -> Result<()> {
    let embeddings = read_embeddings(&args.embeddings)?;
    let index = embeddings.index();

    let rider_pca = pca_project(embeddings.riders(), 2)
        .context("projecting rider embeddings")?;
    let clusters = kmeans(
        embeddings.riders(),
        args.k,
        args.seed,
        DEFAULT_KMEANS_MAX_ITERS,
        DEFAULT_KMEANS_TOL,
    )
    .context("clustering rider embeddings")?;
    let race_pca = pca_project(embeddings.races(), 2)
        .context("projecting race embeddings")?;

    let profile_scores = match &args.profile_scores {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let rows = dataset::parse_results(&text)
                .with_context(|| format!("parsing {}", path.display()))?;
            race_profile_scores(&dataset::filter_rows(rows))
        }
        None => Default::default(),
    };

    let rider_rows: Vec<(String, f64, f64, String)> = index
        .riders()
        .iter()
        .enumerate()
        .map(|(row, id)| {
            (
                EntityKey::Rider(id.clone()).to_string(),
                rider_pca.projections.get(row, 0),
                rider_pca.projections.get(row, 1),
                clusters.assignments[row].to_string(),
            )
        })
        .collect();
    let race_rows: Vec<(String, f64, f64, String)> = index
        .races()
        .iter()
        .enumerate()
        .map(|(row, key)| {
            let color = profile_scores
                .get(key)
                .map(|score| score.to_string())
                .unwrap_or_default();
            (
                EntityKey::Race(key.clone()).to_string(),
                race_pca.projections.get(row, 0),
                race_pca.projections.get(row, 1),
                color,
            )
        })
        .collect();
    let cluster_rows: Vec<(String, usize)> = index
        .riders()
        .iter()
        .enumerate()
        .map(|(row, id)| {
            (
                EntityKey::Rider(id.clone()).to_string(),
                clusters.assignments[row],
            )
        })
        .collect();

    fs::create_dir_all(&args.output_dir)
        .with_context(|| format!("creating {}", args.output_dir.display()))?;
    let mut guard = OutputGuard::new();
    guard.write(
        args.output_dir.join(RIDER_PCA_FILE),
        &formats::render_pca(&rider_rows),
    )?;
    guard.write(
        args.output_dir.join(RACE_PCA_FILE),
        &formats::render_pca(&race_rows),
    )?;
    guard.write(
        args.output_dir.join(CLUSTERS_FILE),
        &formats::render_clusters(&cluster_rows),
    )?;
    guard.commit();

    writeln!(
        out,
        "riders={} races={} clusters={} kmeans_iterations={} inertia={}",
        index.n_riders(),
        index.n_races(),
        args.k,
        clusters.iterations,
        clusters.inertia
    )?;
    Ok(())
}

/// Prints the `count` nearest same-type neighbors of `query` as
/// `rank,entity_key,distance` CSV on standard output.
pub fn cmd_similar(
    embeddings_path: &Path,
    query: &str,
    count: usize,
    out: &mut impl Write,
) -> Result<()> {
    let embeddings = read_embeddings(embeddings_path)?;
    let key = parse_key(query)?;
    let neighbors = match nearest_neighbors(&key, &embeddings, count) {
        Ok(neighbors) => neighbors,
        Err(AnalysisError::UnknownKey { key: unknown }) => {
            let suggestions = nearest_key_suggestions(embeddings.index(), &key, 3);
            if suggestions.is_empty() {
                bail!("unknown key {unknown:?}; the file has no entities of that type");
            }
            bail!(
                "unknown key {unknown:?}; nearest known keys: {}",
                suggestions.join(", ")
            );
        }
        Err(other) => return Err(other.into()),
    };
    writeln!(out, "rank,entity_key,distance")?;
    for (rank, neighbor) in neighbors.iter().enumerate() {
        writeln!(out, "{},{},{}", rank + 1, neighbor.key, neighbor.distance)?;
    }
    Ok(())
}

/// Prints the predicted normalized score for a rider at a race.
pub fn cmd_predict(
    embeddings_path: &Path,
    rider: &str,
    race: &str,
    out: &mut impl Write,
) -> Result<()> {
    let embeddings = read_embeddings(embeddings_path)?;
    let rider_key = parse_key(rider)?;
    if !rider_key.is_rider() {
        bail!("{rider:?} is not a rider key");
    }
    let race_key = parse_key(race)?;
    if !race_key.is_race() {
        bail!("{race:?} is not a race key");
    }
    let rider_vec = embeddings
        .vector(&rider_key)
        .with_context(|| format!("unknown key {rider:?}"))?;
    let race_vec = embeddings
        .vector(&race_key)
        .with_context(|| format!("unknown key {race:?}"))?;
    let probability = predict(rider_vec, race_vec)?;
    writeln!(out, "{probability}")?;
    Ok(())
}

/// Runs the ingestion pipeline and prints the summary, writing nothing.
pub fn cmd_ingest_check(
    results: &Path,
    min_rider_points: f64,
    out: &mut impl Write,
) -> Result<()> {
    let text =
        fs::read_to_string(results).with_context(|| format!("reading {}", results.display()))?;
    let ingestion =
        ingest(&text, min_rider_points).with_context(|| format!("ingesting {}", results.display()))?;
    writeln!(out, "{}", ingestion.summary)?;
    Ok(())
}

fn read_embeddings(path: &Path) -> Result<EmbeddingSet> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let embeddings = formats::parse_embeddings(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(embeddings)
}

fn parse_key(text: &str) -> Result<EntityKey> {
    EntityKey::from_str(text).map_err(Into::into)
}
