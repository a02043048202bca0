use std::fs;
use std::path::Path;

use forgescan_model::Snapshot;

use crate::IngestError;

/// Writes a snapshot to `path` as one line of canonical JSON.
pub fn store_snapshot(snapshot: &Snapshot, path: &Path) -> Result<(), IngestError> {
    let mut text = snapshot.to_json_string()?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Reads a snapshot previously written by [`store_snapshot`]. The parser
/// tolerates trailing whitespace, so hand-edited files load too.
pub fn load_snapshot(path: &Path) -> Result<Snapshot, IngestError> {
    let text = fs::read_to_string(path)?;
    Ok(Snapshot::from_json_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use forgescan_model::{RepoSnapshot, Timestamp};

    #[test]
    fn snapshots_survive_a_store_load_roundtrip() {
        let snapshot = Snapshot::from(RepoSnapshot {
            full_name: "octo/app".into(),
            description: "a demo".into(),
            readme: "A small demo application.".into(),
            keywords: vec!["demo".into()],
            star_count: 3,
            fork_count: 0,
            star_events: Vec::new(),
            commits: Vec::new(),
            issues: Vec::new(),
            pull_requests: Vec::new(),
            snapshot_at: Timestamp::new(1_700_000_000),
        });
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("octo-app.json");
        store_snapshot(&snapshot, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.ends_with('\n'), "stored file should end with a newline");
        assert_eq!(load_snapshot(&path).unwrap(), snapshot);
    }
}
