use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// The eight abuse behaviors this toolkit detects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetectorKind {
    FakeStars,
    AutomaticUpdates,
    KeywordStuffing,
    TypoSquatting,
    SpoofedContributor,
    IssueSpam,
    ReputationFarming,
    FakeStats,
}

/// What kind of snapshot a detector or labeled instance is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubjectKind {
    Repo,
    User,
}

impl DetectorKind {
    /// All detectors in canonical order.
    pub const ALL: [DetectorKind; 8] = [
        DetectorKind::FakeStars,
        DetectorKind::AutomaticUpdates,
        DetectorKind::KeywordStuffing,
        DetectorKind::TypoSquatting,
        DetectorKind::SpoofedContributor,
        DetectorKind::IssueSpam,
        DetectorKind::ReputationFarming,
        DetectorKind::FakeStats,
    ];

    /// Stable kebab-case name used on the command line and in registries.
    pub fn name(self) -> &'static str {
        match self {
            DetectorKind::FakeStars => "fake-stars",
            DetectorKind::AutomaticUpdates => "automatic-updates",
            DetectorKind::KeywordStuffing => "keyword-stuffing",
            DetectorKind::TypoSquatting => "typo-squatting",
            DetectorKind::SpoofedContributor => "spoofed-contributor",
            DetectorKind::IssueSpam => "issue-spam",
            DetectorKind::ReputationFarming => "reputation-farming",
            DetectorKind::FakeStats => "fake-stats",
        }
    }

    /// Whether this detector judges repositories or user accounts.
    pub fn subject_kind(self) -> SubjectKind {
        match self {
            DetectorKind::ReputationFarming | DetectorKind::FakeStats => SubjectKind::User,
            _ => SubjectKind::Repo,
        }
    }
}

impl fmt::Display for DetectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DetectorKind {
    type Err = String;

    /// Accepts the kebab-case name; underscores are tolerated as separators.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let normalized = s.trim().to_ascii_lowercase().replace('_', "-");
        DetectorKind::ALL
            .into_iter()
            .find(|k| k.name() == normalized)
            .ok_or_else(|| format!("unknown detector {s:?}"))
    }
}

/// One evaluated predicate clause: what was measured, against what bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceClause {
    pub clause: String,
    pub observed: Value,
    pub threshold: Value,
}

impl EvidenceClause {
    pub fn new(clause: impl Into<String>, observed: impl Into<Value>, threshold: impl Into<Value>) -> Self {
        EvidenceClause { clause: clause.into(), observed: observed.into(), threshold: threshold.into() }
    }

    /// A clause that records an observation with no threshold attached.
    pub fn note(clause: impl Into<String>, observed: impl Into<Value>) -> Self {
        EvidenceClause { clause: clause.into(), observed: observed.into(), threshold: Value::Null }
    }
}

/// Outcome of running one detector against one subject.
///
/// When `flagged` is true, `evidence` carries every clause of the predicate
/// with the observed and threshold values that made it fire. A verdict may
/// instead be `indeterminate` when the snapshot does not cover the full
/// observation window, in which case it is never flagged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectionVerdict {
    pub detector: DetectorKind,
    /// Repo `owner/name`, user login, or `owner/name#number` for per-issue
    /// verdicts.
    pub subject: String,
    pub flagged: bool,
    #[serde(default)]
    pub indeterminate: bool,
    pub evidence: Vec<EvidenceClause>,
}

impl DetectionVerdict {
    pub fn new(detector: DetectorKind, subject: impl Into<String>) -> Self {
        DetectionVerdict {
            detector,
            subject: subject.into(),
            flagged: false,
            indeterminate: false,
            evidence: Vec::new(),
        }
    }

    pub fn flagged(mut self, flagged: bool) -> Self {
        self.flagged = flagged;
        self
    }

    pub fn indeterminate(mut self) -> Self {
        self.indeterminate = true;
        self.flagged = false;
        self
    }

    pub fn with_evidence(mut self, evidence: Vec<EvidenceClause>) -> Self {
        self.evidence = evidence;
        self
    }

    /// Render a float for evidence without losing precision.
    pub fn num(v: f64) -> Value {
        json!(v)
    }
}
