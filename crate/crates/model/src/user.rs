use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::{ModelError, Timestamp};

/// Public activity event kinds distinguished by the detectors.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActivityKind {
    Commit,
    IssueOpened,
    IssueComment,
    PrOpened,
    PrReview,
    PrComment,
    Star,
    Fork,
    #[default]
    Other,
}

/// One public activity event of a user.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActivityEvent {
    pub kind: ActivityKind,
    pub timestamp: Timestamp,
    /// `owner/name` for repo-level events, `owner/name#number` for events
    /// targeting a specific issue or pull request.
    pub target: String,
}

/// One repository owned by a user, with its star count.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OwnedRepo {
    pub full_name: String,
    pub star_count: u64,
}

/// Offline snapshot of one user account.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UserSnapshot {
    pub login: String,
    pub follower_count: u64,
    /// Full names of repositories this user has starred; duplicate-free.
    pub starred_repos: Vec<String>,
    pub owned_repos: Vec<OwnedRepo>,
    /// Sorted non-decreasing by `timestamp`.
    pub activity: Vec<ActivityEvent>,
    pub profile_readme: String,
    /// Stat-widget image URLs embedded in `profile_readme`.
    pub stat_widget_urls: Vec<String>,
    /// Star total claimed in a machine-readable profile field, if any.
    /// Free-text extraction from profile prose is deliberately not attempted.
    pub claimed_star_count: Option<u64>,
    pub snapshot_at: Timestamp,
}

impl UserSnapshot {
    /// Number of activity events with timestamp in the half-open interval
    /// `[start, end)`. Errors when `start > end`.
    pub fn activity_count(&self, start: Timestamp, end: Timestamp) -> Result<usize, ModelError> {
        if start > end {
            return Err(ModelError::InvalidInterval { start: start.secs(), end: end.secs() });
        }
        Ok(self
            .activity
            .iter()
            .filter(|e| e.timestamp >= start && e.timestamp < end)
            .count())
    }

    /// Sum of star counts over the user's owned repositories.
    pub fn owned_star_total(&self) -> u64 {
        self.owned_repos.iter().map(|r| r.star_count).sum()
    }

    /// Check every structural invariant, returning the first violation.
    pub fn validate(&self) -> Result<(), ModelError> {
        let invariant = |msg: String| Err(ModelError::Invariant(msg));

        if self.login.is_empty() {
            return invariant("login must be non-empty".into());
        }

        for pair in self.activity.windows(2) {
            if pair[0].timestamp > pair[1].timestamp {
                return invariant(format!(
                    "activity out of order at {} > {}",
                    pair[0].timestamp, pair[1].timestamp
                ));
            }
        }
        for ev in &self.activity {
            if ev.timestamp > self.snapshot_at {
                return invariant(format!(
                    "activity at {} is after snapshot_at {}",
                    ev.timestamp, self.snapshot_at
                ));
            }
        }

        let mut seen = HashSet::new();
        for name in &self.starred_repos {
            if !seen.insert(name.as_str()) {
                return invariant(format!("duplicate starred repo {name:?}"));
            }
        }

        for url in &self.stat_widget_urls {
            if !self.profile_readme.contains(url.as_str()) {
                return invariant(format!("widget url {url:?} not present in profile_readme"));
            }
        }

        Ok(())
    }
}
