//! Labeled corpora, fixture synthesis, and precision/recall scoring for the
//! abuse detectors.
//!
//! The crate covers three jobs:
//!
//! * **Corpus format**: a corpus is a directory with a JSON-lines manifest of
//!   [`LabeledInstance`] records, one snapshot file per instance, optional
//!   companion snapshots under `aux/<instance_id>/`, a shared reference list,
//!   and a trained spam model. External corpora in the same layout evaluate
//!   exactly like generated ones.
//! * **Fixture generation** ([`generate_fixture_corpus`]): deterministically
//!   synthesizes snapshots that exhibit — or narrowly avoid — each of the
//!   eight abuse behaviors under a given [`forgescan_model::ThresholdConfig`].
//!   Negatives include designated near-misses that fail exactly one conjunct
//!   of their predicate; each near-miss records the threshold knob that flips
//!   it to flagged. The generator re-judges everything it wrote through the
//!   real detectors before returning.
//! * **Evaluation** ([`evaluate`] / [`emit_report`]): runs every instance
//!   through its own subcategory's detector, aggregates per-subcategory
//!   confusion counts, and renders [`MetricsRow`]s as JSON-lines, CSV, or a
//!   markdown table. Ratios with zero denominators are reported as absent,
//!   never as zero.

mod corpus;
mod error;
mod evaluate;
mod generate;
mod instance;
mod metrics;
mod report;

pub use corpus::{
    decide, instance_batch, load_snapshot, CorpusContext, AUX_DIR, MANIFEST_FILE, NEAR_MISS_FILE,
    REFERENCES_FILE, SNAPSHOT_DIR, SPAM_MODEL_FILE,
};
pub use error::EvalError;
pub use evaluate::evaluate;
pub use generate::{
    apply_knob, generate_fixture_corpus, read_near_misses, reference_repos, CorpusPlan,
    CorpusSummary, Knob, KnobbedSettings, NearMissRecord, BASE_TIME, CLASSIFIER_THRESHOLD_FIELD,
};
pub use instance::{manifest_to_string, parse_manifest, read_manifest, LabeledInstance};
pub use metrics::{ConfusionAccumulator, MetricsRow};
pub use report::{emit_report, ReportFormat};
