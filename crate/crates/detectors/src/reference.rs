use forgescan_model::RepoSnapshot;
use serde::{Deserialize, Serialize};

use crate::DetectorError;

/// Star count at or above which a repository is considered popular enough to
/// serve as a typo-squatting reference.
pub const DEFAULT_REFERENCE_STAR_FLOOR: u64 = 1_000;

/// A well-known repository that typo-squatters might imitate.
///
/// Only the fields the typo-squatting predicate consumes are kept, so
/// reference lists stay cheap to ship and load independently of full
/// snapshots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PopularReference {
    /// `owner/name` identifier of the reference repository.
    pub full_name: String,
    /// README text used for content-similarity comparison.
    pub readme: String,
    /// Stargazer count backing the popularity-ratio clause.
    pub star_count: u64,
}

impl PopularReference {
    /// Repository name without the owner prefix.
    pub fn name(&self) -> &str {
        self.full_name
            .split_once('/')
            .map_or(self.full_name.as_str(), |(_, name)| name)
    }

    /// Builds a reference entry from a full repository snapshot.
    pub fn from_snapshot(repo: &RepoSnapshot) -> Self {
        PopularReference {
            full_name: repo.full_name.clone(),
            readme: repo.readme.clone(),
            star_count: repo.star_count,
        }
    }

    /// Checks the identifier is well formed and the repository clears the
    /// popularity floor expected of a reference.
    pub fn validate(&self, star_floor: u64) -> Result<(), DetectorError> {
        let mut parts = self.full_name.splitn(2, '/');
        let owner = parts.next().unwrap_or("");
        let name = parts.next().unwrap_or("");
        if owner.is_empty() || name.is_empty() {
            return Err(DetectorError::InvalidInput(format!(
                "reference {:?} is not an owner/name identifier",
                self.full_name
            )));
        }
        if self.star_count < star_floor {
            return Err(DetectorError::InvalidInput(format!(
                "reference {} has {} stars, below the floor of {star_floor}",
                self.full_name, self.star_count
            )));
        }
        Ok(())
    }
}
