//! Offline snapshot model for GitHub repositories and user accounts.
//!
//! Detectors operate on these types only; nothing in this crate touches the
//! network. Snapshots are plain data: construct them, [`validate`](Snapshot::validate)
//! them at trust boundaries, and share them freely across threads.

mod config;
mod error;
mod popularity;
mod repo;
mod snapshot;
mod time;
mod user;
mod verdict;

pub use config::ThresholdConfig;
pub use error::ModelError;
pub use popularity::{
    normalized_popularity, repo_popularity, user_popularity, REPO_STAR_SCALE_CAP,
    USER_FOLLOWER_SCALE_CAP,
};
pub use repo::{CommitRecord, IssueRecord, IssueState, PullRequestRecord, PullState, RepoSnapshot, StarEvent};
pub use snapshot::{Snapshot, SCHEMA_VERSION};
pub use time::Timestamp;
pub use user::{ActivityEvent, ActivityKind, OwnedRepo, UserSnapshot};
pub use verdict::{DetectionVerdict, DetectorKind, EvidenceClause, SubjectKind};
