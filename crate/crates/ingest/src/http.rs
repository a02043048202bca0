use std::collections::BTreeMap;
use std::time::Duration;

use serde_json::Value;

use crate::{ApiRequest, ApiResponse, IngestError, Transport};

const USER_AGENT: &str = concat!("forgescan/", env!("CARGO_PKG_VERSION"));
const API_VERSION: &str = "2022-11-28";
const DEFAULT_ACCEPT: &str = "application/vnd.github+json";

/// Real HTTP transport over `reqwest`'s blocking client.
pub struct HttpTransport {
    base_url: String,
    auth_token: Option<String>,
    client: reqwest::blocking::Client,
}

impl HttpTransport {
    pub fn new(base_url: impl Into<String>, auth_token: Option<String>) -> Result<Self, IngestError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(30))
            .build()
            .map_err(|e| IngestError::Transport(e.to_string()))?;
        Ok(HttpTransport {
            base_url: base_url.into().trim_end_matches('/').to_string(),
            auth_token,
            client,
        })
    }
}

impl Transport for HttpTransport {
    fn execute(&self, request: &ApiRequest) -> Result<ApiResponse, IngestError> {
        if request.method != "GET" {
            return Err(IngestError::Transport(format!(
                "unsupported method {}",
                request.method
            )));
        }
        let url = format!("{}{}", self.base_url, request.path);
        let mut builder = self
            .client
            .get(&url)
            .header("User-Agent", USER_AGENT)
            .header("X-GitHub-Api-Version", API_VERSION)
            .header(
                "Accept",
                request.accept.as_deref().unwrap_or(DEFAULT_ACCEPT),
            );
        if let Some(token) = &self.auth_token {
            builder = builder.header("Authorization", format!("Bearer {token}"));
        }
        if !request.query.is_empty() {
            let pairs: Vec<(&String, &String)> = request.query.iter().collect();
            builder = builder.query(&pairs);
        }

        let response = builder
            .send()
            .map_err(|e| IngestError::Transport(e.to_string()))?;
        let status = response.status().as_u16();
        let mut headers = BTreeMap::new();
        for (name, value) in response.headers() {
            if let Ok(text) = value.to_str() {
                headers.insert(name.as_str().to_ascii_lowercase(), text.to_string());
            }
        }
        let text = response
            .text()
            .map_err(|e| IngestError::Transport(e.to_string()))?;
        // Bodies are JSON on every endpoint we call; keep anything else as a
        // raw string so the caller sees what arrived.
        let body = if text.is_empty() {
            Value::Null
        } else {
            serde_json::from_str(&text).unwrap_or(Value::String(text))
        };
        Ok(ApiResponse { status, headers, body })
    }
}
