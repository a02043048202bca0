use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::{ModelError, Timestamp};

/// One star event on a repository, as observed at snapshot time.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarEvent {
    pub login: String,
    pub starred_at: Timestamp,
}

/// One commit with its diffstat and attribution trailers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommitRecord {
    /// 40-char hex object id, unique within the snapshot.
    pub sha: String,
    pub author_login: String,
    /// Names parsed from `Co-authored-by:` trailers in the commit message.
    pub co_authors: Vec<String>,
    pub timestamp: Timestamp,
    pub lines_added: u64,
    pub lines_deleted: u64,
    pub touched_paths: Vec<String>,
}

impl CommitRecord {
    /// Total lines touched by this commit (additions plus deletions).
    pub fn lines_touched(&self) -> u64 {
        self.lines_added + self.lines_deleted
    }

    /// Whether `login` is attributed on this commit, as author or co-author.
    /// Login comparison is case-insensitive, matching GitHub semantics.
    pub fn attributes(&self, login: &str) -> bool {
        self.author_login.eq_ignore_ascii_case(login)
            || self.co_authors.iter().any(|c| c.eq_ignore_ascii_case(login))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IssueState {
    #[default]
    Open,
    Closed,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IssueRecord {
    pub number: u64,
    pub author_login: String,
    pub title: String,
    pub body: String,
    pub created_at: Timestamp,
    /// Present exactly when `state` is `closed`.
    pub closed_at: Option<Timestamp>,
    pub state: IssueState,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PullState {
    #[default]
    Open,
    Closed,
    Merged,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PullRequestRecord {
    pub number: u64,
    pub author_login: String,
    pub title: String,
    pub body: String,
    pub created_at: Timestamp,
    /// Present exactly when `state` is not `open`.
    pub merged_or_closed_at: Option<Timestamp>,
    pub state: PullState,
}

/// Offline snapshot of one repository.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepoSnapshot {
    /// `owner/name`, exactly one slash, both segments non-empty.
    pub full_name: String,
    pub description: String,
    pub readme: String,
    /// Repository topics plus description tokens; no empties, no duplicates.
    pub keywords: Vec<String>,
    pub star_count: u64,
    pub fork_count: u64,
    /// Sorted non-decreasing by `starred_at`.
    pub star_events: Vec<StarEvent>,
    /// Sorted non-decreasing by `timestamp`.
    pub commits: Vec<CommitRecord>,
    pub issues: Vec<IssueRecord>,
    pub pull_requests: Vec<PullRequestRecord>,
    pub snapshot_at: Timestamp,
}

impl RepoSnapshot {
    /// The `owner` half of `full_name`.
    pub fn owner(&self) -> &str {
        self.full_name.split_once('/').map_or("", |(o, _)| o)
    }

    /// The `name` half of `full_name` (the segment compared for typo-squats).
    pub fn name(&self) -> &str {
        self.full_name.split_once('/').map_or(self.full_name.as_str(), |(_, n)| n)
    }

    /// Star event recorded for `login`, if any (first match by time).
    pub fn star_event_for(&self, login: &str) -> Option<&StarEvent> {
        self.star_events.iter().find(|e| e.login.eq_ignore_ascii_case(login))
    }

    /// Check every structural invariant, returning the first violation.
    pub fn validate(&self) -> Result<(), ModelError> {
        let invariant = |msg: String| Err(ModelError::Invariant(msg));

        match self.full_name.split_once('/') {
            Some((owner, name)) if !owner.is_empty() && !name.is_empty() && !name.contains('/') => {}
            _ => {
                return invariant(format!(
                    "full_name {:?} must be \"owner/name\" with non-empty segments",
                    self.full_name
                ))
            }
        }

        for pair in self.star_events.windows(2) {
            if pair[0].starred_at > pair[1].starred_at {
                return invariant(format!(
                    "star_events out of order at {} > {}",
                    pair[0].starred_at, pair[1].starred_at
                ));
            }
        }
        for ev in &self.star_events {
            if ev.login.is_empty() {
                return invariant("star event with empty login".into());
            }
            if ev.starred_at > self.snapshot_at {
                return invariant(format!(
                    "star event at {} is after snapshot_at {}",
                    ev.starred_at, self.snapshot_at
                ));
            }
        }

        let mut shas = HashSet::new();
        for pair in self.commits.windows(2) {
            if pair[0].timestamp > pair[1].timestamp {
                return invariant(format!(
                    "commits out of order at {} > {}",
                    pair[0].timestamp, pair[1].timestamp
                ));
            }
        }
        for c in &self.commits {
            if c.sha.len() != 40 || !c.sha.bytes().all(|b| b.is_ascii_hexdigit()) {
                return invariant(format!("commit sha {:?} is not 40 hex chars", c.sha));
            }
            if !shas.insert(c.sha.as_str()) {
                return invariant(format!("duplicate commit sha {:?}", c.sha));
            }
        }

        let mut seen_keywords = HashSet::new();
        for k in &self.keywords {
            if k.is_empty() {
                return invariant("empty string in keywords".into());
            }
            if !seen_keywords.insert(k.as_str()) {
                return invariant(format!("duplicate keyword {k:?}"));
            }
        }

        for issue in &self.issues {
            let closed = issue.state == IssueState::Closed;
            match issue.closed_at {
                Some(t) if !closed => {
                    return invariant(format!("open issue #{} has closed_at {t}", issue.number))
                }
                None if closed => {
                    return invariant(format!("closed issue #{} lacks closed_at", issue.number))
                }
                Some(t) if t < issue.created_at => {
                    return invariant(format!("issue #{} closed before created", issue.number))
                }
                _ => {}
            }
        }
        for pr in &self.pull_requests {
            let resolved = pr.state != PullState::Open;
            match pr.merged_or_closed_at {
                Some(t) if !resolved => {
                    return invariant(format!("open PR #{} has merged_or_closed_at {t}", pr.number))
                }
                None if resolved => {
                    return invariant(format!(
                        "{:?} PR #{} lacks merged_or_closed_at",
                        pr.state, pr.number
                    ))
                }
                Some(t) if t < pr.created_at => {
                    return invariant(format!("PR #{} resolved before created", pr.number))
                }
                _ => {}
            }
        }

        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_repo() -> RepoSnapshot {
        RepoSnapshot {
            full_name: "octocat/hello-world".into(),
            snapshot_at: Timestamp(1_700_000_000),
            ..RepoSnapshot::default()
        }
    }

    #[test]
    fn minimal_repo_is_valid() {
        minimal_repo().validate().unwrap();
    }

    #[test]
    fn rejects_bad_full_name() {
        for name in ["", "noslash", "/x", "x/", "a/b/c"] {
            let repo = RepoSnapshot { full_name: name.into(), ..minimal_repo() };
            assert!(repo.validate().is_err(), "{name:?} should be rejected");
        }
    }

    #[test]
    fn rejects_unsorted_star_events() {
        let mut repo = minimal_repo();
        repo.star_events = vec![
            StarEvent { login: "a".into(), starred_at: Timestamp(200) },
            StarEvent { login: "b".into(), starred_at: Timestamp(100) },
        ];
        assert!(repo.validate().is_err());
    }

    #[test]
    fn rejects_duplicate_commit_sha() {
        let sha = "a".repeat(40);
        let mut repo = minimal_repo();
        repo.commits = vec![
            CommitRecord { sha: sha.clone(), timestamp: Timestamp(1), ..CommitRecord::default() },
            CommitRecord { sha, timestamp: Timestamp(2), ..CommitRecord::default() },
        ];
        assert!(repo.validate().is_err());
    }

    #[test]
    fn rejects_closed_issue_without_timestamp() {
        let mut repo = minimal_repo();
        repo.issues = vec![IssueRecord {
            number: 1,
            state: IssueState::Closed,
            ..IssueRecord::default()
        }];
        assert!(repo.validate().is_err());
    }

    #[test]
    fn attribution_covers_author_and_co_authors() {
        let commit = CommitRecord {
            sha: "b".repeat(40),
            author_login: "alice".into(),
            co_authors: vec!["Bob".into()],
            ..CommitRecord::default()
        };
        assert!(commit.attributes("alice"));
        assert!(commit.attributes("ALICE"));
        assert!(commit.attributes("bob"));
        assert!(!commit.attributes("carol"));
    }
}
