use std::collections::BTreeSet;
use std::path::Path;

use forgescan_model::{DetectorKind, SubjectKind};
use serde::{Deserialize, Serialize};

use crate::EvalError;

/// One labeled corpus entry: a snapshot on disk, the abuse subcategory it
/// exemplifies (or narrowly avoids), and its ground-truth label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabeledInstance {
    pub instance_id: String,
    pub subcategory: DetectorKind,
    pub subject_kind: SubjectKind,
    /// Relative to the manifest's directory.
    pub snapshot_path: String,
    /// True means abusive.
    pub label: bool,
}

impl LabeledInstance {
    pub fn validate(&self) -> Result<(), EvalError> {
        if self.instance_id.is_empty() {
            return Err(EvalError::InvalidInput("instance with empty instance_id".into()));
        }
        if self.subject_kind != self.subcategory.subject_kind() {
            return Err(EvalError::Instance {
                instance_id: self.instance_id.clone(),
                detail: format!(
                    "subject_kind {:?} does not match the {} subcategory",
                    self.subject_kind, self.subcategory
                ),
            });
        }
        Ok(())
    }
}

/// Serializes instances as JSON-lines, one per labeled instance.
pub fn manifest_to_string(instances: &[LabeledInstance]) -> Result<String, EvalError> {
    let mut out = String::new();
    for instance in instances {
        out.push_str(&serde_json::to_string(instance)?);
        out.push('\n');
    }
    Ok(out)
}

/// Parses a JSON-lines manifest, checking per-instance shape and id
/// uniqueness. Blank lines are skipped.
pub fn parse_manifest(text: &str) -> Result<Vec<LabeledInstance>, EvalError> {
    let mut instances = Vec::new();
    let mut seen = BTreeSet::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let instance: LabeledInstance = serde_json::from_str(line).map_err(|e| {
            EvalError::InvalidInput(format!("manifest line {}: {e}", lineno + 1))
        })?;
        instance.validate()?;
        if !seen.insert(instance.instance_id.clone()) {
            return Err(EvalError::InvalidInput(format!(
                "duplicate instance_id {:?}",
                instance.instance_id
            )));
        }
        instances.push(instance);
    }
    Ok(instances)
}

/// Reads and parses a manifest file.
pub fn read_manifest(path: &Path) -> Result<Vec<LabeledInstance>, EvalError> {
    parse_manifest(&std::fs::read_to_string(path)?)
}
