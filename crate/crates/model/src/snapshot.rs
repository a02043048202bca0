//! Versioned JSON envelope for snapshot documents.
//!
//! One document per snapshot: the snapshot's own fields plus a
//! `schema_version` and a `kind` discriminator ("repo" or "user").
//! Loading rejects unknown versions, unknown kinds, and unknown fields.

use serde::Serialize;
use serde_json::Value;

use crate::{ModelError, RepoSnapshot, UserSnapshot};

/// Version written into every snapshot document this build produces.
pub const SCHEMA_VERSION: u32 = 1;

/// A repository or user snapshot, as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub enum Snapshot {
    Repo(RepoSnapshot),
    User(UserSnapshot),
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    kind: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

impl Snapshot {
    pub fn kind(&self) -> &'static str {
        match self {
            Snapshot::Repo(_) => "repo",
            Snapshot::User(_) => "user",
        }
    }

    /// Repo full name or user login.
    pub fn subject(&self) -> &str {
        match self {
            Snapshot::Repo(r) => &r.full_name,
            Snapshot::User(u) => &u.login,
        }
    }

    pub fn as_repo(&self) -> Option<&RepoSnapshot> {
        match self {
            Snapshot::Repo(r) => Some(r),
            Snapshot::User(_) => None,
        }
    }

    pub fn as_user(&self) -> Option<&UserSnapshot> {
        match self {
            Snapshot::User(u) => Some(u),
            Snapshot::Repo(_) => None,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            Snapshot::Repo(r) => r.validate(),
            Snapshot::User(u) => u.validate(),
        }
    }

    /// Serialize to the versioned document form (compact JSON, no newline).
    pub fn to_json_string(&self) -> Result<String, ModelError> {
        let doc = match self {
            Snapshot::Repo(body) => {
                serde_json::to_string(&Envelope { schema_version: SCHEMA_VERSION, kind: "repo", body })?
            }
            Snapshot::User(body) => {
                serde_json::to_string(&Envelope { schema_version: SCHEMA_VERSION, kind: "user", body })?
            }
        };
        Ok(doc)
    }

    /// Parse and validate a versioned snapshot document.
    pub fn from_json_str(s: &str) -> Result<Self, ModelError> {
        let value: Value = serde_json::from_str(s)?;
        let Value::Object(mut obj) = value else {
            return Err(ModelError::Malformed("document is not a JSON object".into()));
        };

        let version = obj
            .remove("schema_version")
            .ok_or_else(|| ModelError::Malformed("missing schema_version".into()))?;
        let version = version
            .as_u64()
            .ok_or_else(|| ModelError::Malformed("schema_version is not an integer".into()))?;
        if version != u64::from(SCHEMA_VERSION) {
            return Err(ModelError::SchemaVersion { found: version, expected: SCHEMA_VERSION });
        }

        let kind = obj
            .remove("kind")
            .ok_or_else(|| ModelError::Malformed("missing kind".into()))?;
        let kind = kind
            .as_str()
            .ok_or_else(|| ModelError::Malformed("kind is not a string".into()))?
            .to_owned();

        let body = Value::Object(obj);
        let snapshot = match kind.as_str() {
            "repo" => Snapshot::Repo(serde_json::from_value(body)?),
            "user" => Snapshot::User(serde_json::from_value(body)?),
            other => return Err(ModelError::UnknownKind(other.to_owned())),
        };
        snapshot.validate()?;
        Ok(snapshot)
    }
}

impl From<RepoSnapshot> for Snapshot {
    fn from(r: RepoSnapshot) -> Self {
        Snapshot::Repo(r)
    }
}

impl From<UserSnapshot> for Snapshot {
    fn from(u: UserSnapshot) -> Self {
        Snapshot::User(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Timestamp, UserSnapshot};

    fn sample_user() -> UserSnapshot {
        UserSnapshot {
            login: "octofan".into(),
            follower_count: 5,
            starred_repos: vec!["octocat/hello-world".into()],
            snapshot_at: Timestamp(1_700_000_000),
            ..UserSnapshot::default()
        }
    }

    #[test]
    fn round_trips_user_snapshots() {
        let snap = Snapshot::User(sample_user());
        let text = snap.to_json_string().unwrap();
        assert!(text.starts_with("{\"schema_version\":1,\"kind\":\"user\""));
        let back = Snapshot::from_json_str(&text).unwrap();
        assert_eq!(back, snap);
    }

    #[test]
    fn round_trips_repo_snapshots() {
        let repo = RepoSnapshot {
            full_name: "octocat/hello-world".into(),
            description: "demo".into(),
            snapshot_at: Timestamp(1_700_000_000),
            ..RepoSnapshot::default()
        };
        let snap = Snapshot::Repo(repo);
        let back = Snapshot::from_json_str(&snap.to_json_string().unwrap()).unwrap();
        assert_eq!(back, snap);
    }

    #[test]
    fn rejects_wrong_schema_version_naming_both() {
        let text = Snapshot::User(sample_user())
            .to_json_string()
            .unwrap()
            .replace("\"schema_version\":1", "\"schema_version\":3");
        let err = Snapshot::from_json_str(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains('3') && msg.contains('1'), "got: {msg}");
    }

    #[test]
    fn rejects_unknown_kind() {
        let text = Snapshot::User(sample_user())
            .to_json_string()
            .unwrap()
            .replace("\"kind\":\"user\"", "\"kind\":\"org\"");
        assert!(matches!(Snapshot::from_json_str(&text), Err(ModelError::UnknownKind(k)) if k == "org"));
    }

    #[test]
    fn rejects_unknown_fields() {
        let mut doc: Value = serde_json::from_str(
            &Snapshot::User(sample_user()).to_json_string().unwrap(),
        )
        .unwrap();
        doc.as_object_mut().unwrap().insert("surprise".into(), Value::Bool(true));
        assert!(Snapshot::from_json_str(&doc.to_string()).is_err());
    }

    #[test]
    fn accepts_iso_timestamps_on_load() {
        let text = r#"{
            "schema_version": 1,
            "kind": "user",
            "login": "octofan",
            "follower_count": 0,
            "starred_repos": [],
            "owned_repos": [],
            "activity": [],
            "profile_readme": "",
            "stat_widget_urls": [],
            "claimed_star_count": null,
            "snapshot_at": "2024-01-15T09:00:00Z"
        }"#;
        let snap = Snapshot::from_json_str(text).unwrap();
        assert_eq!(snap.as_user().unwrap().snapshot_at, Timestamp(1_705_309_200));
    }
}
