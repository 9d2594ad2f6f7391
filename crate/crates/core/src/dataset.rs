//! Result-table ingestion: parsing, filtering, score normalization, and
//! assembly of the training set.
//!
//! The pipeline is a chain of pure functions over parsed rows:
//! `parse_results` -> `filter_rows` -> (`normalize_scores`, `build_entity_index`)
//! -> `assemble_training_set`. `ingest` runs the whole chain and reports
//! summary counters.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use thiserror::Error;

use crate::entity::{EntityIndex, RaceKey};

/// Exact header line required of a results file.
pub const RESULTS_HEADER: &str =
    "season,race_id,race_name,race_type,stage,profile_score,rider_id,rider_name,pcs_points";

/// Riders below this many raw points over the whole dataset get no embedding.
pub const DEFAULT_MIN_RIDER_POINTS: f64 = 25.0;

const COLUMNS: [&str; 9] = [
    "season",
    "race_id",
    "race_name",
    "race_type",
    "stage",
    "profile_score",
    "rider_id",
    "rider_name",
    "pcs_points",
];

/// Result category of a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RaceType {
    OneDay,
    Stage,
    IndividualTimeTrialStage,
    TeamTimeTrial,
    GeneralClassification,
}

impl RaceType {
    fn parse(text: &str) -> Option<Self> {
        match text {
            "one_day" => Some(Self::OneDay),
            "stage" => Some(Self::Stage),
            "individual_time_trial_stage" => Some(Self::IndividualTimeTrialStage),
            "team_time_trial" => Some(Self::TeamTimeTrial),
            "general_classification" => Some(Self::GeneralClassification),
            _ => None,
        }
    }

    /// Stage-race units carry a stage label; one-day races and overall
    /// classifications must not.
    pub fn requires_stage_label(self) -> bool {
        matches!(
            self,
            Self::Stage | Self::IndividualTimeTrialStage | Self::TeamTimeTrial
        )
    }

    /// Categories excluded from modeling entirely.
    pub fn is_excluded(self) -> bool {
        matches!(self, Self::TeamTimeTrial | Self::GeneralClassification)
    }
}

/// One finish record from the results table.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub season: i32,
    pub race_id: String,
    pub race_name: String,
    pub race_type: RaceType,
    pub stage: Option<String>,
    pub profile_score: Option<f64>,
    pub rider_id: String,
    pub rider_name: String,
    pub pcs_points: f64,
}

impl ResultRow {
    /// Embedding key for this row, or `None` for excluded categories.
    pub fn race_key(&self) -> Option<RaceKey> {
        match self.race_type {
            RaceType::OneDay => Some(RaceKey::OneDay {
                race_id: self.race_id.clone(),
            }),
            RaceType::Stage | RaceType::IndividualTimeTrialStage => Some(RaceKey::Stage {
                race_id: self.race_id.clone(),
                season: self.season,
                stage: self.stage.clone().expect("stage label validated at parse"),
            }),
            RaceType::TeamTimeTrial | RaceType::GeneralClassification => None,
        }
    }
}

/// One result with its winner-normalized score, still keyed by name.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedResult {
    pub race_key: RaceKey,
    /// Season of the edition the score was normalized within. One-day race
    /// keys merge seasons, but winners are always per-edition.
    pub season: i32,
    pub rider_id: String,
    /// Points divided by the edition winner's points, in `[0, 1]`.
    pub score: f64,
}

/// Output of [`normalize_scores`].
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedScores {
    pub results: Vec<NormalizedResult>,
    /// Editions dropped because their best result scored zero points.
    pub editions_dropped: usize,
}

/// One (rider row, race row, target) triple ready for training.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainingExample {
    pub rider_index: usize,
    pub race_index: usize,
    /// Winner-normalized score in `[0, 1]`.
    pub target: f64,
}

/// Counters reported after running the full ingestion pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IngestionSummary {
    pub rows_read: usize,
    /// Rows removed because their category is excluded.
    pub rows_filtered: usize,
    pub editions_dropped_zero_winner: usize,
    pub riders_indexed: usize,
    pub races_indexed: usize,
    pub examples: usize,
}

impl fmt::Display for IngestionSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rows_read={}\nrows_filtered={}\neditions_dropped_zero_winner={}\nriders_indexed={}\nraces_indexed={}\nexamples={}",
            self.rows_read,
            self.rows_filtered,
            self.editions_dropped_zero_winner,
            self.riders_indexed,
            self.races_indexed,
            self.examples
        )
    }
}

/// Everything [`ingest`] produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Ingestion {
    pub examples: Vec<TrainingExample>,
    pub index: EntityIndex,
    pub summary: IngestionSummary,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DatasetError {
    #[error("results header is missing column {name:?}")]
    MissingColumn { name: &'static str },
    #[error("results header must be exactly {RESULTS_HEADER:?}, found {found:?}")]
    HeaderMismatch { found: String },
    #[error("line {line}: expected 9 comma-separated fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: bad {column} value {value:?}")]
    BadNumber {
        line: usize,
        column: &'static str,
        value: String,
    },
    #[error("line {line}: unknown race_type {value:?}")]
    BadRaceType { line: usize, value: String },
    #[error("line {line}: stage label is required for stage-race result types")]
    MissingStage { line: usize },
    #[error("line {line}: stage label is not allowed for this race_type")]
    UnexpectedStage { line: usize },
    #[error("line {line}: {column} {message}")]
    BadIdentifier {
        line: usize,
        column: &'static str,
        message: &'static str,
    },
}

fn parse_number(
    text: &str,
    line: usize,
    column: &'static str,
    allow_negative: bool,
) -> Result<f64, DatasetError> {
    let bad = || DatasetError::BadNumber {
        line,
        column,
        value: text.to_string(),
    };
    let value: f64 = text.parse().map_err(|_| bad())?;
    if !value.is_finite() || (!allow_negative && value < 0.0) {
        return Err(bad());
    }
    Ok(value)
}

/// Parses a full results file.
///
/// The format is strict: the exact [`RESULTS_HEADER`] line followed by
/// comma-separated records, empty string for absent optional fields. Race
/// ids must not contain `:` so that race keys stay unambiguous when
/// serialized.
pub fn parse_results(source: &str) -> Result<Vec<ResultRow>, DatasetError> {
    let source = source.strip_prefix('\u{feff}').unwrap_or(source);
    let mut lines = source.lines();
    let header = lines.next().unwrap_or("").trim_end_matches('\r');
    if header != RESULTS_HEADER {
        let found: BTreeSet<&str> = header.split(',').collect();
        for name in COLUMNS {
            if !found.contains(name) {
                return Err(DatasetError::MissingColumn { name });
            }
        }
        return Err(DatasetError::HeaderMismatch {
            found: header.to_string(),
        });
    }

    let mut rows = Vec::new();
    for (offset, raw) in lines.enumerate() {
        let line = offset + 2;
        let text = raw.trim_end_matches('\r');
        if text.is_empty() {
            continue;
        }
        let fields: Vec<&str> = text.split(',').collect();
        if fields.len() != COLUMNS.len() {
            return Err(DatasetError::FieldCount {
                line,
                found: fields.len(),
            });
        }

        let season: i32 = fields[0].parse().map_err(|_| DatasetError::BadNumber {
            line,
            column: "season",
            value: fields[0].to_string(),
        })?;
        let race_id = fields[1];
        if race_id.is_empty() {
            return Err(DatasetError::BadIdentifier {
                line,
                column: "race_id",
                message: "must not be empty",
            });
        }
        if race_id.contains(':') {
            return Err(DatasetError::BadIdentifier {
                line,
                column: "race_id",
                message: "must not contain ':'",
            });
        }
        let race_type = RaceType::parse(fields[3]).ok_or_else(|| DatasetError::BadRaceType {
            line,
            value: fields[3].to_string(),
        })?;
        let stage = if fields[4].is_empty() {
            None
        } else {
            Some(fields[4].to_string())
        };
        match (race_type.requires_stage_label(), &stage) {
            (true, None) => return Err(DatasetError::MissingStage { line }),
            (false, Some(_)) => return Err(DatasetError::UnexpectedStage { line }),
            _ => {}
        }
        let profile_score = if fields[5].is_empty() {
            None
        } else {
            Some(parse_number(fields[5], line, "profile_score", false)?)
        };
        let rider_id = fields[6];
        if rider_id.is_empty() {
            return Err(DatasetError::BadIdentifier {
                line,
                column: "rider_id",
                message: "must not be empty",
            });
        }
        let pcs_points = parse_number(fields[8], line, "pcs_points", false)?;

        rows.push(ResultRow {
            season,
            race_id: race_id.to_string(),
            race_name: fields[2].to_string(),
            race_type,
            stage,
            profile_score,
            rider_id: rider_id.to_string(),
            rider_name: fields[7].to_string(),
            pcs_points,
        });
    }
    Ok(rows)
}

/// Drops team time trials and overall classifications; keeps everything else.
pub fn filter_rows(mut rows: Vec<ResultRow>) -> Vec<ResultRow> {
    rows.retain(|row| !row.race_type.is_excluded());
    rows
}

/// Divides each result's points by the winning score of its race edition.
///
/// The grouping unit is always the per-season edition, even for one-day
/// races whose embedding key merges seasons. Editions whose best result is
/// zero have no defined winner share and are dropped and counted.
pub fn normalize_scores(rows: &[ResultRow]) -> NormalizedScores {
    let mut editions: BTreeMap<(RaceKey, i32), Vec<&ResultRow>> = BTreeMap::new();
    for row in rows {
        if let Some(key) = row.race_key() {
            editions.entry((key, row.season)).or_default().push(row);
        }
    }

    let mut results = Vec::new();
    let mut editions_dropped = 0;
    for ((race_key, season), rows) in editions {
        let winner_points = rows.iter().map(|r| r.pcs_points).fold(0.0, f64::max);
        if winner_points <= 0.0 {
            editions_dropped += 1;
            continue;
        }
        for row in rows {
            results.push(NormalizedResult {
                race_key: race_key.clone(),
                season,
                rider_id: row.rider_id.clone(),
                score: row.pcs_points / winner_points,
            });
        }
    }
    NormalizedScores {
        results,
        editions_dropped,
    }
}

/// Indexes every race key and every rider whose summed raw points over the
/// whole dataset reach `min_rider_points` (inclusive). Keys are sorted so
/// indices are stable across runs.
pub fn build_entity_index(rows: &[ResultRow], min_rider_points: f64) -> EntityIndex {
    let mut rider_points: BTreeMap<&str, f64> = BTreeMap::new();
    let mut races: BTreeSet<RaceKey> = BTreeSet::new();
    for row in rows {
        let Some(key) = row.race_key() else { continue };
        races.insert(key);
        *rider_points.entry(&row.rider_id).or_insert(0.0) += row.pcs_points;
    }
    let riders: Vec<String> = rider_points
        .into_iter()
        .filter(|(_, points)| *points >= min_rider_points)
        .map(|(id, _)| id.to_string())
        .collect();
    EntityIndex::from_keys(riders, races.into_iter().collect())
        .expect("sorted sets cannot contain duplicates")
}

/// Converts normalized results into index-based training examples.
///
/// Results whose rider (or race) is absent from the index are dropped;
/// that is how the minimum-points rider filter takes effect.
pub fn assemble_training_set(
    normalized: &[NormalizedResult],
    index: &EntityIndex,
) -> Vec<TrainingExample> {
    normalized
        .iter()
        .filter_map(|result| {
            let rider_index = index.rider_index(&result.rider_id)?;
            let race_index = index.race_index(&result.race_key)?;
            Some(TrainingExample {
                rider_index,
                race_index,
                target: result.score,
            })
        })
        .collect()
}

/// Per-race profile scores for coloring race projections.
///
/// Values are taken per edition; for one-day races merged across seasons the
/// most recent season's value wins. Within one edition the first value in
/// row order wins.
pub fn race_profile_scores(rows: &[ResultRow]) -> BTreeMap<RaceKey, f64> {
    let mut best: BTreeMap<RaceKey, (i32, f64)> = BTreeMap::new();
    for row in rows {
        let (Some(key), Some(score)) = (row.race_key(), row.profile_score) else {
            continue;
        };
        match best.get(&key) {
            Some((season, _)) if *season >= row.season => {}
            _ => {
                best.insert(key, (row.season, score));
            }
        }
    }
    best.into_iter()
        .map(|(key, (_, score))| (key, score))
        .collect()
}

/// Runs the full ingestion pipeline on raw file contents.
pub fn ingest(source: &str, min_rider_points: f64) -> Result<Ingestion, DatasetError> {
    let rows = parse_results(source)?;
    let rows_read = rows.len();
    let rows = filter_rows(rows);
    let rows_filtered = rows_read - rows.len();
    let normalized = normalize_scores(&rows);
    let index = build_entity_index(&rows, min_rider_points);
    let examples = assemble_training_set(&normalized.results, &index);
    let summary = IngestionSummary {
        rows_read,
        rows_filtered,
        editions_dropped_zero_winner: normalized.editions_dropped,
        riders_indexed: index.n_riders(),
        races_indexed: index.n_races(),
        examples: examples.len(),
    };
    Ok(Ingestion {
        examples,
        index,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    fn row(
        season: i32,
        race_id: &str,
        race_type: RaceType,
        stage: Option<&str>,
        rider_id: &str,
        pcs_points: f64,
    ) -> ResultRow {
        ResultRow {
            season,
            race_id: race_id.to_string(),
            race_name: race_id.to_uppercase(),
            race_type,
            stage: stage.map(|s| s.to_string()),
            profile_score: None,
            rider_id: rider_id.to_string(),
            rider_name: rider_id.to_uppercase(),
            pcs_points,
        }
    }

    #[test]
    fn parse_maps_fields_directly() {
        let source = format!("{RESULTS_HEADER}\n2016,rvv,Ronde,one_day,,234,sagan,SAGAN Peter,500\n");
        let rows = parse_results(&source).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!(r.season, 2016);
        assert_eq!(r.race_id, "rvv");
        assert_eq!(r.race_name, "Ronde");
        assert_eq!(r.race_type, RaceType::OneDay);
        assert_eq!(r.stage, None);
        assert_eq!(r.profile_score, Some(234.0));
        assert_eq!(r.rider_id, "sagan");
        assert_eq!(r.rider_name, "SAGAN Peter");
        assert_eq!(r.pcs_points, 500.0);
    }

    #[test]
    fn parse_empty_file_with_header() {
        let rows = parse_results(&format!("{RESULTS_HEADER}\n")).unwrap();
        assert!(rows.is_empty());
    }

    #[test]
    fn parse_rejects_bad_points_with_line_number() {
        let source = format!("{RESULTS_HEADER}\n2016,rvv,Ronde,one_day,,,sagan,SAGAN Peter,abc\n");
        let err = parse_results(&source).unwrap_err();
        assert_eq!(
            err,
            DatasetError::BadNumber {
                line: 2,
                column: "pcs_points",
                value: "abc".to_string()
            }
        );
    }

    #[test]
    fn parse_rejects_negative_and_non_finite_points() {
        for bad in ["-5", "inf", "NaN"] {
            let source = format!("{RESULTS_HEADER}\n2016,rvv,Ronde,one_day,,,sagan,S,{bad}\n");
            assert!(parse_results(&source).is_err(), "accepted {bad}");
        }
    }

    #[test]
    fn parse_names_missing_header_column() {
        let err = parse_results("season,race_id\n").unwrap_err();
        assert_eq!(err, DatasetError::MissingColumn { name: "race_name" });
    }

    #[test]
    fn parse_rejects_reordered_header() {
        let reordered =
            "race_id,season,race_name,race_type,stage,profile_score,rider_id,rider_name,pcs_points";
        let err = parse_results(&format!("{reordered}\n")).unwrap_err();
        assert!(matches!(err, DatasetError::HeaderMismatch { .. }));
    }

    #[test]
    fn parse_enforces_stage_label_rules() {
        let missing = format!("{RESULTS_HEADER}\n2016,tdf,Tour,stage,,,sagan,S,100\n");
        assert_eq!(
            parse_results(&missing).unwrap_err(),
            DatasetError::MissingStage { line: 2 }
        );
        let extra = format!("{RESULTS_HEADER}\n2016,rvv,Ronde,one_day,3,,sagan,S,100\n");
        assert_eq!(
            parse_results(&extra).unwrap_err(),
            DatasetError::UnexpectedStage { line: 2 }
        );
        let gc = format!("{RESULTS_HEADER}\n2016,tdf,Tour,general_classification,3,,sagan,S,100\n");
        assert_eq!(
            parse_results(&gc).unwrap_err(),
            DatasetError::UnexpectedStage { line: 2 }
        );
    }

    #[test]
    fn parse_strips_bom_and_carriage_returns() {
        let source =
            format!("\u{feff}{RESULTS_HEADER}\r\n2016,rvv,Ronde,one_day,,,sagan,S,500\r\n");
        let rows = parse_results(&source).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].rider_name, "S");
    }

    #[test]
    fn parse_rejects_wrong_field_count() {
        let source = format!("{RESULTS_HEADER}\n2016,rvv,Ronde,one_day,,234\n");
        assert_eq!(
            parse_results(&source).unwrap_err(),
            DatasetError::FieldCount { line: 2, found: 6 }
        );
    }

    #[test]
    fn filter_drops_ttt_and_gc_only() {
        let rows = vec![
            row(2016, "tdf", RaceType::TeamTimeTrial, Some("1"), "a", 10.0),
            row(2016, "tdf", RaceType::Stage, Some("2"), "a", 10.0),
        ];
        let kept = filter_rows(rows);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].race_type, RaceType::Stage);

        let rows = vec![row(2016, "tdf", RaceType::GeneralClassification, None, "a", 10.0)];
        assert!(filter_rows(rows).is_empty());

        let rows = vec![
            row(2016, "rvv", RaceType::OneDay, None, "a", 10.0),
            row(2017, "msr", RaceType::OneDay, None, "b", 20.0),
        ];
        assert_eq!(filter_rows(rows.clone()), rows);
    }

    #[test]
    fn normalize_divides_by_edition_winner() {
        let rows = vec![
            row(2016, "rvv", RaceType::OneDay, None, "winner", 500.0),
            row(2016, "rvv", RaceType::OneDay, None, "second", 300.0),
        ];
        let out = normalize_scores(&rows);
        assert_eq!(out.editions_dropped, 0);
        let scores: Vec<f64> = out.results.iter().map(|r| r.score).collect();
        assert_eq!(scores, vec![1.0, 0.6]);
    }

    #[test]
    fn normalize_keeps_zero_point_finishers() {
        let rows = vec![
            row(2016, "rvv", RaceType::OneDay, None, "a", 80.0),
            row(2016, "rvv", RaceType::OneDay, None, "b", 0.0),
            row(2016, "rvv", RaceType::OneDay, None, "c", 0.0),
        ];
        let out = normalize_scores(&rows);
        let scores: Vec<f64> = out.results.iter().map(|r| r.score).collect();
        assert_eq!(scores, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn normalize_drops_zero_winner_editions() {
        let rows = vec![
            row(2016, "rvv", RaceType::OneDay, None, "a", 0.0),
            row(2016, "rvv", RaceType::OneDay, None, "b", 0.0),
        ];
        let out = normalize_scores(&rows);
        assert!(out.results.is_empty());
        assert_eq!(out.editions_dropped, 1);
    }

    #[test]
    fn normalize_groups_one_day_by_season() {
        // Same merged race key, but winners are decided per season.
        let rows = vec![
            row(2016, "rvv", RaceType::OneDay, None, "a", 400.0),
            row(2017, "rvv", RaceType::OneDay, None, "a", 100.0),
            row(2017, "rvv", RaceType::OneDay, None, "b", 200.0),
        ];
        let out = normalize_scores(&rows);
        let mut by_season: BTreeMap<(i32, String), f64> = BTreeMap::new();
        for r in &out.results {
            by_season.insert((r.season, r.rider_id.clone()), r.score);
        }
        assert_eq!(by_season[&(2016, "a".to_string())], 1.0);
        assert_eq!(by_season[&(2017, "a".to_string())], 0.5);
        assert_eq!(by_season[&(2017, "b".to_string())], 1.0);
    }

    #[test]
    fn index_threshold_is_inclusive() {
        let rows = vec![
            row(2016, "rvv", RaceType::OneDay, None, "under", 24.9),
            row(2016, "rvv", RaceType::OneDay, None, "exact", 25.0),
        ];
        let index = build_entity_index(&rows, DEFAULT_MIN_RIDER_POINTS);
        assert_eq!(index.rider_index("under"), None);
        assert!(index.rider_index("exact").is_some());
    }

    #[test]
    fn index_sums_points_across_dataset() {
        let rows = vec![
            row(2016, "rvv", RaceType::OneDay, None, "a", 15.0),
            row(2017, "msr", RaceType::OneDay, None, "a", 10.0),
        ];
        let index = build_entity_index(&rows, 25.0);
        assert!(index.rider_index("a").is_some());
    }

    #[test]
    fn index_merges_one_day_seasons() {
        let rows = vec![
            row(2016, "rvv", RaceType::OneDay, None, "a", 100.0),
            row(2017, "rvv", RaceType::OneDay, None, "a", 100.0),
        ];
        let index = build_entity_index(&rows, 0.0);
        assert_eq!(index.n_races(), 1);
    }

    #[test]
    fn index_keeps_stage_editions_separate() {
        let rows = vec![
            row(2016, "tdf", RaceType::Stage, Some("3"), "a", 100.0),
            row(2017, "tdf", RaceType::Stage, Some("3"), "a", 100.0),
        ];
        let index = build_entity_index(&rows, 0.0);
        assert_eq!(index.n_races(), 2);
    }

    #[test]
    fn assemble_keeps_indexed_riders_only() {
        let rows = vec![
            row(2016, "rvv", RaceType::OneDay, None, "big", 500.0),
            row(2016, "rvv", RaceType::OneDay, None, "mid", 300.0),
            row(2016, "rvv", RaceType::OneDay, None, "tiny", 5.0),
        ];
        let normalized = normalize_scores(&rows);
        assert_eq!(
            assemble_training_set(&normalized.results, &build_entity_index(&rows, 0.0)).len(),
            3
        );
        let examples =
            assemble_training_set(&normalized.results, &build_entity_index(&rows, 25.0));
        assert_eq!(examples.len(), 2);
    }

    #[test]
    fn ingest_reports_summary_counters() {
        let source = format!(
            "{RESULTS_HEADER}\n\
             2016,rvv,Ronde,one_day,,,a,A,500\n\
             2016,rvv,Ronde,one_day,,,b,B,300\n\
             2016,tdf,Tour,team_time_trial,1,,a,A,40\n\
             2016,podunk,Podunk GP,one_day,,,c,C,0\n"
        );
        let ingestion = ingest(&source, 25.0).unwrap();
        let s = ingestion.summary;
        assert_eq!(s.rows_read, 4);
        assert_eq!(s.rows_filtered, 1);
        assert_eq!(s.editions_dropped_zero_winner, 1);
        assert_eq!(s.riders_indexed, 2);
        assert_eq!(s.races_indexed, 2);
        assert_eq!(s.examples, 2);
        assert_eq!(
            format!("{s}"),
            "rows_read=4\nrows_filtered=1\neditions_dropped_zero_winner=1\nriders_indexed=2\nraces_indexed=2\nexamples=2"
        );
    }

    #[test]
    fn profile_scores_prefer_latest_season() {
        let mut a = row(2016, "rvv", RaceType::OneDay, None, "x", 10.0);
        a.profile_score = Some(100.0);
        let mut b = row(2018, "rvv", RaceType::OneDay, None, "x", 10.0);
        b.profile_score = Some(250.0);
        let mut c = row(2017, "rvv", RaceType::OneDay, None, "x", 10.0);
        c.profile_score = Some(175.0);
        let scores = race_profile_scores(&[a, b, c]);
        let key = RaceKey::OneDay {
            race_id: "rvv".to_string(),
        };
        assert_eq!(scores[&key], 250.0);
    }
}
