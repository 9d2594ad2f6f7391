//! Entity identity: race keys, textual entity keys, and the dense index
//! that maps riders and races to matrix rows.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use thiserror::Error;

/// Identity of a race embedding.
///
/// One-day races share one key across seasons; stages of multi-day races
/// are keyed per (race, season, stage) because the same stage number can
/// cover completely different terrain from one year to the next.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RaceKey {
    OneDay {
        race_id: String,
    },
    Stage {
        race_id: String,
        season: i32,
        stage: String,
    },
}

impl fmt::Display for RaceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RaceKey::OneDay { race_id } => write!(f, "race:oneday:{race_id}"),
            RaceKey::Stage {
                race_id,
                season,
                stage,
            } => write!(f, "race:stage:{race_id}:{season}:{stage}"),
        }
    }
}

/// Textual key for any embedded entity, as spelled in the embeddings file:
/// `rider:<rider_id>`, `race:oneday:<race_id>`, or
/// `race:stage:<race_id>:<season>:<stage>`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityKey {
    Rider(String),
    Race(RaceKey),
}

impl EntityKey {
    pub fn is_rider(&self) -> bool {
        matches!(self, EntityKey::Rider(_))
    }

    pub fn is_race(&self) -> bool {
        matches!(self, EntityKey::Race(_))
    }
}

impl fmt::Display for EntityKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntityKey::Rider(id) => write!(f, "rider:{id}"),
            EntityKey::Race(key) => key.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid entity key {input:?}: {reason}")]
pub struct ParseKeyError {
    pub input: String,
    pub reason: &'static str,
}

impl ParseKeyError {
    fn new(input: &str, reason: &'static str) -> Self {
        Self {
            input: input.to_string(),
            reason,
        }
    }
}

impl FromStr for EntityKey {
    type Err = ParseKeyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(id) = s.strip_prefix("rider:") {
            if id.is_empty() {
                return Err(ParseKeyError::new(s, "empty rider id"));
            }
            return Ok(EntityKey::Rider(id.to_string()));
        }
        if let Some(race_id) = s.strip_prefix("race:oneday:") {
            if race_id.is_empty() {
                return Err(ParseKeyError::new(s, "empty race id"));
            }
            return Ok(EntityKey::Race(RaceKey::OneDay {
                race_id: race_id.to_string(),
            }));
        }
        if let Some(rest) = s.strip_prefix("race:stage:") {
            let mut parts = rest.splitn(3, ':');
            let race_id = parts.next().unwrap_or("");
            let season = parts.next().unwrap_or("");
            let stage = parts.next().unwrap_or("");
            if race_id.is_empty() || stage.is_empty() {
                return Err(ParseKeyError::new(
                    s,
                    "expected race:stage:<race_id>:<season>:<stage>",
                ));
            }
            let season: i32 = season
                .parse()
                .map_err(|_| ParseKeyError::new(s, "season is not an integer"))?;
            return Ok(EntityKey::Race(RaceKey::Stage {
                race_id: race_id.to_string(),
                season,
                stage: stage.to_string(),
            }));
        }
        Err(ParseKeyError::new(
            s,
            "expected rider:<id>, race:oneday:<race_id>, or race:stage:<race_id>:<season>:<stage>",
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("duplicate rider key {0:?}")]
    DuplicateRider(String),
    #[error("duplicate race key {0}")]
    DuplicateRace(RaceKey),
}

/// Bidirectional mapping from rider ids and race keys to dense matrix rows.
///
/// Indices are dense `0..n` in the order the keys were supplied; the
/// ingestion pipeline supplies them sorted so indices are stable across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityIndex {
    riders: Vec<String>,
    races: Vec<RaceKey>,
    rider_lookup: BTreeMap<String, usize>,
    race_lookup: BTreeMap<RaceKey, usize>,
}

impl EntityIndex {
    /// Builds an index from explicit key lists, preserving their order.
    pub fn from_keys(riders: Vec<String>, races: Vec<RaceKey>) -> Result<Self, IndexError> {
        let mut rider_lookup = BTreeMap::new();
        for (i, id) in riders.iter().enumerate() {
            if rider_lookup.insert(id.clone(), i).is_some() {
                return Err(IndexError::DuplicateRider(id.clone()));
            }
        }
        let mut race_lookup = BTreeMap::new();
        for (i, key) in races.iter().enumerate() {
            if race_lookup.insert(key.clone(), i).is_some() {
                return Err(IndexError::DuplicateRace(key.clone()));
            }
        }
        Ok(Self {
            riders,
            races,
            rider_lookup,
            race_lookup,
        })
    }

    pub fn rider_index(&self, id: &str) -> Option<usize> {
        self.rider_lookup.get(id).copied()
    }

    pub fn race_index(&self, key: &RaceKey) -> Option<usize> {
        self.race_lookup.get(key).copied()
    }

    /// Row index for any entity key, rider or race.
    pub fn entity_index(&self, key: &EntityKey) -> Option<usize> {
        match key {
            EntityKey::Rider(id) => self.rider_index(id),
            EntityKey::Race(race) => self.race_index(race),
        }
    }

    pub fn riders(&self) -> &[String] {
        &self.riders
    }

    pub fn races(&self) -> &[RaceKey] {
        &self.races
    }

    pub fn n_riders(&self) -> usize {
        self.riders.len()
    }

    pub fn n_races(&self) -> usize {
        self.races.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn stage(race_id: &str, season: i32, stage: &str) -> RaceKey {
        RaceKey::Stage {
            race_id: race_id.to_string(),
            season,
            stage: stage.to_string(),
        }
    }

    fn oneday(race_id: &str) -> RaceKey {
        RaceKey::OneDay {
            race_id: race_id.to_string(),
        }
    }

    #[test]
    fn key_display_round_trips() {
        let keys = [
            EntityKey::Rider("sagan".to_string()),
            EntityKey::Race(oneday("rvv")),
            EntityKey::Race(stage("tdf", 2016, "9")),
            EntityKey::Race(stage("tdf", 2016, "9b (itt)")),
        ];
        for key in keys {
            let text = key.to_string();
            let parsed: EntityKey = text.parse().unwrap();
            assert_eq!(parsed, key, "round trip failed for {text}");
        }
    }

    #[test]
    fn key_parse_rejects_garbage() {
        assert!("".parse::<EntityKey>().is_err());
        assert!("rider:".parse::<EntityKey>().is_err());
        assert!("race:oneday:".parse::<EntityKey>().is_err());
        assert!("race:stage:tdf:notayear:3".parse::<EntityKey>().is_err());
        assert!("race:stage:tdf:2016".parse::<EntityKey>().is_err());
        assert!("team:sky".parse::<EntityKey>().is_err());
    }

    #[test]
    fn index_round_trips_keys() {
        let index = EntityIndex::from_keys(
            vec!["alaphilippe".to_string(), "sagan".to_string()],
            vec![oneday("msr"), stage("giro", 2017, "14")],
        )
        .unwrap();
        assert_eq!(index.n_riders(), 2);
        assert_eq!(index.n_races(), 2);
        for (i, id) in index.riders().iter().enumerate() {
            assert_eq!(index.rider_index(id), Some(i));
        }
        for (i, key) in index.races().iter().enumerate() {
            assert_eq!(index.race_index(key), Some(i));
        }
        assert_eq!(index.rider_index("cavendish"), None);
    }

    #[test]
    fn index_rejects_duplicates() {
        let err = EntityIndex::from_keys(
            vec!["sagan".to_string(), "sagan".to_string()],
            vec![],
        )
        .unwrap_err();
        assert_eq!(err, IndexError::DuplicateRider("sagan".to_string()));

        let err = EntityIndex::from_keys(vec![], vec![oneday("rvv"), oneday("rvv")]).unwrap_err();
        assert_eq!(err, IndexError::DuplicateRace(oneday("rvv")));
    }
}
