//! Detectors for abusive behavior on a GitHub-like forge.
//!
//! Each detector evaluates one behavior — fake stars, scripted update
//! inflation, keyword stuffing, typo-squatting, spoofed contributor
//! attribution, issue spam, reputation farming on closed threads, and
//! fabricated profile statistics — as a deterministic predicate over offline
//! [`forgescan_model::Snapshot`] data. Thresholds come from a shared
//! [`forgescan_model::ThresholdConfig`] so operators can tune sensitivity
//! without touching detector code.
//!
//! Two layers are exposed:
//!
//! * **Detection functions** (`detect_*`): pure functions from snapshots and
//!   thresholds to [`forgescan_model::DetectionVerdict`]s. These take exactly
//!   the inputs the predicate needs and are the unit-tested core.
//! * **The [`Detector`] trait and [`DetectorRegistry`]**: object-safe
//!   strategy wrappers that adapt each function to a whole [`ScanBatch`],
//!   letting callers pick detectors by name at runtime.
//!
//! Every verdict carries one [`forgescan_model::EvidenceClause`] per clause of
//! the underlying predicate, so a flagged verdict is auditable: the observed
//! value and the threshold it was compared against are both recorded.

mod auto_updates;
mod batch;
mod error;
mod fake_stars;
mod fake_stats;
mod issue_spam;
mod keyword_stuffing;
mod reference;
mod registry;
mod reputation_farming;
mod spoofed_contributor;
mod typo_squat;

pub use auto_updates::detect_automatic_updates;
pub use batch::ScanBatch;
pub use error::DetectorError;
pub use fake_stars::detect_fake_stars;
pub use fake_stats::detect_fake_stats;
pub use issue_spam::detect_issue_spam;
pub use keyword_stuffing::detect_keyword_stuffing;
pub use reference::{PopularReference, DEFAULT_REFERENCE_STAR_FLOOR};
pub use registry::{run_scan, Detector, DetectorRegistry};
pub use reputation_farming::detect_reputation_farming;
pub use spoofed_contributor::detect_spoofed_contributor;
pub use typo_squat::detect_typo_squatting;

#[cfg(test)]
mod testutil {
    use forgescan_model::{
        CommitRecord, RepoSnapshot, StarEvent, Timestamp, UserSnapshot,
    };

    /// Base instant for fixtures; far enough from zero that subtracting
    /// windows never goes negative.
    pub const T0: i64 = 1_750_000_000;

    /// Deterministic 40-hex commit id derived from a small seed.
    pub fn sha(seed: u64) -> String {
        format!("{seed:040x}")
    }

    pub fn repo(full_name: &str) -> RepoSnapshot {
        RepoSnapshot {
            full_name: full_name.to_string(),
            snapshot_at: Timestamp::new(T0),
            ..RepoSnapshot::default()
        }
    }

    pub fn user(login: &str) -> UserSnapshot {
        UserSnapshot {
            login: login.to_string(),
            snapshot_at: Timestamp::new(T0),
            ..UserSnapshot::default()
        }
    }

    pub fn commit(seed: u64, ts: i64, author: &str, added: u64, deleted: u64) -> CommitRecord {
        CommitRecord {
            sha: sha(seed),
            author_login: author.to_string(),
            co_authors: Vec::new(),
            timestamp: Timestamp::new(ts),
            lines_added: added,
            lines_deleted: deleted,
            touched_paths: vec!["src/main.rs".to_string()],
        }
    }

    pub fn star(login: &str, ts: i64) -> StarEvent {
        StarEvent {
            login: login.to_string(),
            starred_at: Timestamp::new(ts),
        }
    }
}
