use std::path::Path;

use forgescan_model::{DetectorKind, ThresholdConfig};
use forgescan_textkit::SpamModelFile;

use crate::corpus::{decide, CorpusContext};
use crate::{read_manifest, ConfusionAccumulator, EvalError, MetricsRow};

/// Scores a labeled corpus: runs every instance through its own
/// subcategory's detector (and nothing else), accumulates confusion counts
/// per subcategory, and derives the metric rows in canonical order.
///
/// `spam_model_path` overrides the corpus's own `spam_model.json`; one of
/// the two must exist when the manifest contains issue-spam instances.
///
/// Instances are scored independently and the counts are accumulated
/// commutatively, so the resulting rows do not depend on manifest order.
pub fn evaluate(
    manifest_path: &Path,
    cfg: &ThresholdConfig,
    spam_model_path: Option<&Path>,
) -> Result<Vec<MetricsRow>, EvalError> {
    let root = manifest_path.parent().unwrap_or_else(|| Path::new("."));
    let instances = read_manifest(manifest_path)?;

    let mut context = CorpusContext::load(root)?;
    if let Some(path) = spam_model_path {
        context.spam_model = Some(SpamModelFile::from_json_str(&std::fs::read_to_string(
            path,
        )?)?);
    }
    if context.spam_model.is_none() {
        if let Some(instance) = instances
            .iter()
            .find(|i| i.subcategory == DetectorKind::IssueSpam)
        {
            return Err(EvalError::Instance {
                instance_id: instance.instance_id.clone(),
                detail: "issue-spam instances need a trained spam model (no spam_model.json \
                         next to the manifest and no model path given)"
                    .into(),
            });
        }
    }

    let mut counts = ConfusionAccumulator::new();
    for instance in &instances {
        let decision = decide(root, instance, cfg, &context, None)?;
        counts.record(instance.subcategory, instance.label, decision);
    }
    Ok(counts.rows())
}
