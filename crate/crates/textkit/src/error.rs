use thiserror::Error;

#[derive(Debug, Error)]
pub enum TextkitError {
    /// A document id was queried that is not registered in the corpus.
    #[error("document {0:?} is not registered in the corpus")]
    DocNotFound(String),

    /// The same document id was registered twice.
    #[error("duplicate document id {0:?}")]
    DuplicateDoc(String),

    /// A fit or train call received unusable input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A vector's dimension does not match the model it is used with.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
