use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use veloembed_cli::commands::{self, AnalyzeArgs, TrainArgs};

/// Learn and analyze rider/race embeddings from road-cycling results.
#[derive(Parser)]
#[command(name = "veloembed", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train embeddings from a results file and write embeddings,
    /// loss history, and a run manifest.
    Train {
        /// Results file (season,race_id,...,pcs_points).
        results: PathBuf,
        /// Directory for embeddings.csv, loss_history.csv, manifest.json.
        output_dir: PathBuf,
        /// Embedding dimension D.
        #[arg(long, default_value_t = 5)]
        dim: usize,
        /// Adam learning rate.
        #[arg(long = "lr", default_value_t = 0.001)]
        learning_rate: f64,
        /// Full-batch training epochs.
        #[arg(long, default_value_t = 100)]
        epochs: usize,
        /// Seed for the embedding initialization.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Minimum summed raw points for a rider to be embedded (inclusive).
        #[arg(long, default_value_t = 25.0)]
        min_rider_points: f64,
    },
    /// Project embeddings to 2D with PCA and cluster riders with k-means.
    Analyze {
        /// Embeddings file written by `train`.
        embeddings: PathBuf,
        /// Directory for rider_pca.csv, race_pca.csv, clusters.csv.
        #[arg(long, short = 'o', default_value = ".")]
        output_dir: PathBuf,
        /// Number of rider clusters.
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Seed for the k-means initialization.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Results file supplying race profile scores for coloring.
        #[arg(long)]
        profile_scores: Option<PathBuf>,
    },
    /// Rank the nearest same-type neighbors of an entity by Euclidean
    /// distance.
    Similar {
        /// Embeddings file written by `train`.
        embeddings: PathBuf,
        /// Entity key, e.g. rider:sagan or race:oneday:rvv.
        query: String,
        /// Number of neighbors to print.
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Print the predicted normalized score for a rider at a race.
    Predict {
        /// Embeddings file written by `train`.
        embeddings: PathBuf,
        /// Rider key, e.g. rider:sagan.
        rider: String,
        /// Race key, e.g. race:oneday:rvv or race:stage:tdf:2017:9.
        race: String,
    },
    /// Run the ingestion pipeline and print its summary without training.
    IngestCheck {
        /// Results file to check.
        results: PathBuf,
        /// Minimum summed raw points for a rider to be embedded (inclusive).
        #[arg(long, default_value_t = 25.0)]
        min_rider_points: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Train {
            results,
            output_dir,
            dim,
            learning_rate,
            epochs,
            seed,
            min_rider_points,
        } => commands::cmd_train(
            &TrainArgs {
                results,
                output_dir,
                dim,
                learning_rate,
                epochs,
                seed,
                min_rider_points,
            },
            &mut out,
        ),
        Command::Analyze {
            embeddings,
            output_dir,
            k,
            seed,
            profile_scores,
        } => commands::cmd_analyze(
            &AnalyzeArgs {
                embeddings,
                output_dir,
                k,
                seed,
                profile_scores,
            },
            &mut out,
        ),
        Command::Similar {
            embeddings,
            query,
            count,
        } => commands::cmd_similar(&embeddings, &query, count, &mut out),
        Command::Predict {
            embeddings,
            rider,
            race,
        } => commands::cmd_predict(&embeddings, &rider, &race, &mut out),
        Command::IngestCheck {
            results,
            min_rider_points,
        } => commands::cmd_ingest_check(&results, min_rider_points, &mut out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
