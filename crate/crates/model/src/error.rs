use thiserror::Error;

/// Errors raised while constructing, validating, or (de)serializing snapshots.
#[derive(Debug, Error)]
pub enum ModelError {
    /// An interval query was made with `start > end`.
    #[error("invalid interval: start {start} is after end {end}")]
    InvalidInterval { start: i64, end: i64 },

    /// A snapshot document carried an unsupported schema version.
    #[error("unsupported schema_version {found}, expected {expected}")]
    SchemaVersion { found: u64, expected: u32 },

    /// A snapshot document carried an unknown `kind` discriminator.
    #[error("unknown snapshot kind {0:?}, expected \"repo\" or \"user\"")]
    UnknownKind(String),

    /// A snapshot document was structurally malformed (not an object, missing
    /// the envelope fields, and so on).
    #[error("malformed snapshot document: {0}")]
    Malformed(String),

    /// A type-level invariant does not hold on the data.
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
