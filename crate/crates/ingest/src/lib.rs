//! Ingestion layer: turns live GitHub API traffic (or a recorded transcript
//! of it) into validated [`forgescan_model::Snapshot`]s.
//!
//! The pieces compose around two small traits:
//!
//! * [`Transport`] executes one HTTP request. [`HttpTransport`] talks to the
//!   real API; [`ReplayTransport`] serves a recorded transcript so every
//!   fetch is reproducible offline; [`RecordingTransport`] wraps another
//!   transport and captures such transcripts.
//! * [`Clock`] supplies time and sleeping, so rate-limit waits are testable
//!   without real delays.
//!
//! [`ApiClient`] adds the operational policy on top: a concurrency cap, a
//! retry budget, rate-limit pauses, and pagination. The `fetch_*` functions
//! drive it endpoint by endpoint and assemble snapshots, reporting what they
//! did in a [`FetchReport`].

mod api;
mod client;
mod clock;
mod error;
mod fetch_repo;
mod fetch_user;
mod http;
mod replay;
mod search;
mod store;

pub use api::{ApiClientConfig, ApiRequest, ApiResponse, Transport};
pub use client::{ApiClient, FetchReport};
pub use clock::{Clock, ManualClock, SystemClock};
pub use error::IngestError;
pub use fetch_repo::{fetch_repo_snapshot, RepoFetchOptions};
pub use fetch_user::{fetch_user_snapshot, UserFetchOptions, DEFAULT_WIDGET_HOSTS};
pub use http::HttpTransport;
pub use replay::{ReplayTransport, RecordingTransport, TranscriptEntry};
pub use search::candidate_repos_recent_updates;
pub use store::{load_snapshot, store_snapshot};
