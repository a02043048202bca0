use forgescan_model::ModelError;
use thiserror::Error;

/// Errors raised while fetching, replaying, or storing snapshots.
#[derive(Debug, Error)]
pub enum IngestError {
    /// The API says the requested repository or user does not exist.
    #[error("subject not found: {0}")]
    SubjectNotFound(String),

    /// Every allowed attempt at one request failed; the message names the
    /// last failure.
    #[error("request to {path} failed after {attempts} attempts: {last_error}")]
    RetryBudgetExhausted {
        path: String,
        attempts: u32,
        last_error: String,
    },

    /// A non-retryable API error status.
    #[error("api returned {status} for {path}")]
    Api { status: u16, path: String },

    /// Network-level failure executing a request.
    #[error("transport error: {0}")]
    Transport(String),

    /// The replay transcript cannot serve the request.
    #[error("replay: {0}")]
    Replay(String),

    /// A response body did not have the expected shape.
    #[error("unexpected response shape for {path}: {detail}")]
    Shape { path: String, detail: String },

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
