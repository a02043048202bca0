use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::IngestError;

/// Connection settings for [`crate::ApiClient`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ApiClientConfig {
    /// API root; override to point at a proxy or a test server.
    pub base_url: String,
    /// Bearer token. Callers usually fill this from an environment variable
    /// (the CLI reads `GH_TOKEN` by default); unauthenticated requests work
    /// but hit much lower rate limits.
    pub auth_token: Option<String>,
    /// Maximum requests in flight at once.
    pub max_in_flight: usize,
    /// Retries allowed per request on top of the first attempt.
    pub retry_budget: u32,
    /// Items requested per page on list endpoints.
    pub per_page: u32,
}

impl Default for ApiClientConfig {
    fn default() -> Self {
        ApiClientConfig {
            base_url: "https://api.github.com".into(),
            auth_token: None,
            max_in_flight: 4,
            retry_budget: 3,
            per_page: 100,
        }
    }
}

/// One API request, fully describing what a transport must execute.
///
/// The query map is ordered so the same logical request always serializes
/// identically — transcripts match on these three fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApiRequest {
    pub method: String,
    /// Path below the API root, starting with `/`.
    pub path: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub query: BTreeMap<String, String>,
    /// Accept header override; not part of the request identity.
    #[serde(skip)]
    pub accept: Option<String>,
}

impl ApiRequest {
    pub fn get(path: impl Into<String>) -> Self {
        ApiRequest {
            method: "GET".into(),
            path: path.into(),
            query: BTreeMap::new(),
            accept: None,
        }
    }

    pub fn with_query(mut self, key: &str, value: impl ToString) -> Self {
        self.query.insert(key.into(), value.to_string());
        self
    }

    pub fn with_accept(mut self, accept: &str) -> Self {
        self.accept = Some(accept.into());
        self
    }

    /// `path?k=v&…` with keys in sorted order; used in errors and logs.
    pub fn display(&self) -> String {
        if self.query.is_empty() {
            return self.path.clone();
        }
        let qs: Vec<String> = self.query.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}?{}", self.path, qs.join("&"))
    }
}

/// One API response as a transport returns it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApiResponse {
    pub status: u16,
    /// Header names lowercased.
    #[serde(default)]
    pub headers: BTreeMap<String, String>,
    #[serde(default)]
    pub body: Value,
}

impl ApiResponse {
    pub fn header(&self, name: &str) -> Option<&str> {
        self.headers.get(&name.to_ascii_lowercase()).map(String::as_str)
    }
}

/// Executes one request. Implementations must be safe to call from several
/// threads at once; the client enforces its concurrency cap around calls.
pub trait Transport: Send + Sync {
    fn execute(&self, request: &ApiRequest) -> Result<ApiResponse, IngestError>;
}
