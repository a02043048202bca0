use std::path::Path;

use forgescan_detectors::{
    DetectorRegistry, PopularReference, ScanBatch, DEFAULT_REFERENCE_STAR_FLOOR,
};
use forgescan_model::{Snapshot, SubjectKind, ThresholdConfig};
use forgescan_textkit::SpamModelFile;

use crate::{EvalError, LabeledInstance};

/// Well-known file names inside a corpus directory. The manifest sits at the
/// root; every other path is resolved relative to it.
pub const MANIFEST_FILE: &str = "manifest.jsonl";
pub const SNAPSHOT_DIR: &str = "snapshots";
pub const AUX_DIR: &str = "aux";
pub const REFERENCES_FILE: &str = "references.json";
pub const SPAM_MODEL_FILE: &str = "spam_model.json";
pub const NEAR_MISS_FILE: &str = "near_misses.jsonl";

/// Corpus-wide context shared by every instance: the popular-repository
/// reference list and the trained spam model. Both are optional on disk —
/// corpora without typo-squatting or issue-spam instances need neither.
#[derive(Debug, Clone, Default)]
pub struct CorpusContext {
    pub references: Vec<PopularReference>,
    pub spam_model: Option<SpamModelFile>,
}

impl CorpusContext {
    /// Loads `references.json` and `spam_model.json` from the corpus root,
    /// treating a missing file as "none".
    pub fn load(root: &Path) -> Result<Self, EvalError> {
        let references_path = root.join(REFERENCES_FILE);
        let references = if references_path.exists() {
            serde_json::from_str(&std::fs::read_to_string(&references_path)?).map_err(|e| {
                EvalError::InvalidInput(format!("{}: {e}", references_path.display()))
            })?
        } else {
            Vec::new()
        };

        let model_path = root.join(SPAM_MODEL_FILE);
        let spam_model = if model_path.exists() {
            Some(SpamModelFile::from_json_str(&std::fs::read_to_string(
                &model_path,
            )?)?)
        } else {
            None
        };

        Ok(CorpusContext { references, spam_model })
    }
}

/// Reads one snapshot file.
pub fn load_snapshot(path: &Path) -> Result<Snapshot, EvalError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| EvalError::InvalidInput(format!("{}: {e}", path.display())))?;
    Ok(Snapshot::from_json_str(&text)?)
}

fn instance_error(instance: &LabeledInstance, detail: impl Into<String>) -> EvalError {
    EvalError::Instance {
        instance_id: instance.instance_id.clone(),
        detail: detail.into(),
    }
}

/// Assembles the scan batch for one labeled instance: its subject snapshot,
/// any companion snapshots under `aux/<instance_id>/` (in file-name order),
/// the corpus references, and the spam model. `threshold_override` replaces
/// the spam classifier's decision threshold for this batch only.
pub fn instance_batch(
    root: &Path,
    instance: &LabeledInstance,
    context: &CorpusContext,
    threshold_override: Option<f64>,
) -> Result<ScanBatch, EvalError> {
    let subject_path = root.join(&instance.snapshot_path);
    let subject = load_snapshot(&subject_path)
        .map_err(|e| instance_error(instance, format!("cannot load subject snapshot: {e}")))?;
    let subject_kind = match subject {
        Snapshot::Repo(_) => SubjectKind::Repo,
        Snapshot::User(_) => SubjectKind::User,
    };
    if subject_kind != instance.subject_kind {
        return Err(instance_error(
            instance,
            format!(
                "snapshot at {} is a {:?} snapshot but the instance says {:?}",
                instance.snapshot_path, subject_kind, instance.subject_kind
            ),
        ));
    }

    let mut snapshots = vec![subject];
    let aux_dir = root.join(AUX_DIR).join(&instance.instance_id);
    if aux_dir.is_dir() {
        let mut paths: Vec<_> = std::fs::read_dir(&aux_dir)?
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .map(|entry| entry.path())
            .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
            .collect();
        paths.sort();
        for path in paths {
            snapshots.push(load_snapshot(&path).map_err(|e| {
                instance_error(instance, format!("cannot load companion snapshot: {e}"))
            })?);
        }
    }

    let mut batch = ScanBatch::new(snapshots)?
        .with_references(context.references.clone(), DEFAULT_REFERENCE_STAR_FLOOR)?;
    if let Some(model) = &context.spam_model {
        let mut model = model.clone();
        if let Some(threshold) = threshold_override {
            model.classifier.set_threshold(threshold);
        }
        batch = batch.with_spam_model(model);
    }
    Ok(batch)
}

/// Runs exactly the instance's own subcategory detector over its batch and
/// reduces the verdicts to one decision: did anything get flagged?
pub fn decide(
    root: &Path,
    instance: &LabeledInstance,
    cfg: &ThresholdConfig,
    context: &CorpusContext,
    threshold_override: Option<f64>,
) -> Result<bool, EvalError> {
    let batch = instance_batch(root, instance, context, threshold_override)?;
    let registry = DetectorRegistry::with_builtins();
    let detector = registry
        .get(instance.subcategory.name())
        .expect("every built-in subcategory has a registered detector");
    let verdicts = detector
        .run(&batch, cfg)
        .map_err(|e| instance_error(instance, e.to_string()))?;
    Ok(verdicts.iter().any(|v| v.flagged))
}
