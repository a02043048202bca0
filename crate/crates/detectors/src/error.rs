use forgescan_model::ModelError;
use forgescan_textkit::TextkitError;
use thiserror::Error;

/// Errors produced while building scan inputs or running detectors.
#[derive(Debug, Error)]
pub enum DetectorError {
    /// A detector precondition does not hold for the given inputs.
    #[error("invalid detector input: {0}")]
    InvalidInput(String),

    /// A detector needs a resource the caller did not supply (for example a
    /// trained spam model).
    #[error("missing resource: {0}")]
    MissingResource(String),

    /// No registered detector matches the requested name.
    #[error("unknown detector {0:?}")]
    UnknownDetector(String),

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Text(#[from] TextkitError),
}
