use forgescan_detectors::DetectorError;
use forgescan_model::ModelError;
use forgescan_textkit::TextkitError;
use thiserror::Error;

/// Errors raised while generating, loading, or evaluating a labeled corpus.
#[derive(Debug, Error)]
pub enum EvalError {
    /// The caller supplied something unusable (bad counts, empty rows,
    /// unknown knob field, malformed manifest line).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Something about one labeled instance is broken; the id pins it down.
    #[error("instance {instance_id}: {detail}")]
    Instance { instance_id: String, detail: String },

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Detector(#[from] DetectorError),

    #[error(transparent)]
    Text(#[from] TextkitError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
