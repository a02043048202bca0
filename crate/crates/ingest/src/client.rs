use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Condvar, Mutex};
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use crate::{ApiClientConfig, ApiRequest, ApiResponse, Clock, IngestError, Transport};

/// What one fetch did: how much traffic, whether anything was cut short, and
/// anything odd worth surfacing.
#[derive(Debug, Clone, Serialize)]
pub struct FetchReport {
    /// Repo `owner/name` or user login the fetch was about.
    pub subject: String,
    /// API requests executed on the wire (retries included).
    pub requests_made: u64,
    /// Last `x-ratelimit-remaining` the API reported, if any.
    pub rate_limit_remaining: Option<u64>,
    /// True when a list was cut at its configured maximum.
    pub truncated: bool,
    pub warnings: Vec<String>,
}

/// Counting semaphore bounding concurrent transport calls.
struct Semaphore {
    permits: Mutex<usize>,
    available: Condvar,
}

struct Permit<'a>(&'a Semaphore);

impl Semaphore {
    fn new(permits: usize) -> Self {
        Semaphore {
            permits: Mutex::new(permits.max(1)),
            available: Condvar::new(),
        }
    }

    fn acquire(&self) -> Permit<'_> {
        let mut permits = self.permits.lock().unwrap();
        while *permits == 0 {
            permits = self.available.wait(permits).unwrap();
        }
        *permits -= 1;
        Permit(self)
    }
}

impl Drop for Permit<'_> {
    fn drop(&mut self) {
        let mut permits = self.0.permits.lock().unwrap();
        *permits += 1;
        self.0.available.notify_one();
    }
}

/// Transport-agnostic API client enforcing the operational policy:
///
/// * at most `max_in_flight` requests execute concurrently (across all
///   threads sharing the client);
/// * each request gets `retry_budget` retries beyond the first attempt,
///   consumed by transport failures, 5xx responses and rate-limit pauses;
/// * a primary rate-limit response (403/429 with the remaining counter at 0
///   or a `retry-after` header) pauses until the advertised reset time, then
///   retries;
/// * 404 is reported as [`IngestError::SubjectNotFound`] immediately.
pub struct ApiClient {
    transport: Arc<dyn Transport>,
    clock: Arc<dyn Clock>,
    config: ApiClientConfig,
    semaphore: Semaphore,
    requests_made: AtomicU64,
    rate_limit_remaining: Mutex<Option<u64>>,
}

impl ApiClient {
    pub fn new(
        transport: Arc<dyn Transport>,
        clock: Arc<dyn Clock>,
        config: ApiClientConfig,
    ) -> Self {
        let semaphore = Semaphore::new(config.max_in_flight);
        ApiClient {
            transport,
            clock,
            config,
            semaphore,
            requests_made: AtomicU64::new(0),
            rate_limit_remaining: Mutex::new(None),
        }
    }

    pub fn config(&self) -> &ApiClientConfig {
        &self.config
    }

    /// Total requests this client has executed on the wire.
    pub fn requests_made(&self) -> u64 {
        self.requests_made.load(Ordering::SeqCst)
    }

    /// Last rate-limit headroom the API reported.
    pub fn rate_limit_remaining(&self) -> Option<u64> {
        *self.rate_limit_remaining.lock().unwrap()
    }

    /// Executes `request`, retrying per policy. Returns the first 2xx
    /// response.
    pub fn execute(&self, request: &ApiRequest) -> Result<ApiResponse, IngestError> {
        let attempts = self.config.retry_budget + 1;
        let mut last_error = String::new();
        for _ in 0..attempts {
            let result = {
                let _permit = self.semaphore.acquire();
                self.requests_made.fetch_add(1, Ordering::SeqCst);
                self.transport.execute(request)
            };
            let response = match result {
                Ok(r) => r,
                Err(IngestError::Transport(e)) => {
                    last_error = e;
                    continue;
                }
                Err(other) => return Err(other),
            };
            self.note_rate_limit(&response);

            match response.status {
                s if (200..300).contains(&s) => return Ok(response),
                404 => return Err(IngestError::SubjectNotFound(request.display())),
                403 | 429 if is_rate_limited(&response) => {
                    let wait = self.rate_limit_wait(&response);
                    last_error = format!(
                        "rate limited (status {}), waited {}s",
                        response.status,
                        wait.as_secs()
                    );
                    self.clock.sleep(wait);
                }
                s if s >= 500 => {
                    last_error = format!("server error {s}");
                }
                s => {
                    return Err(IngestError::Api {
                        status: s,
                        path: request.display(),
                    })
                }
            }
        }
        Err(IngestError::RetryBudgetExhausted {
            path: request.display(),
            attempts,
            last_error,
        })
    }

    /// GET with no pagination.
    pub fn get(
        &self,
        path: &str,
        query: &[(&str, &str)],
        accept: Option<&str>,
    ) -> Result<ApiResponse, IngestError> {
        let mut request = ApiRequest::get(path);
        for (k, v) in query {
            request = request.with_query(k, v);
        }
        if let Some(a) = accept {
            request = request.with_accept(a);
        }
        self.execute(&request)
    }

    /// Collects a list endpoint page by page until it ends or `max_items`
    /// are gathered. Returns the items and whether the list was truncated at
    /// the cap.
    pub fn get_paginated(
        &self,
        path: &str,
        query: &[(&str, &str)],
        accept: Option<&str>,
        max_items: usize,
    ) -> Result<(Vec<Value>, bool), IngestError> {
        let mut items = Vec::new();
        let mut page = 1u32;
        loop {
            let mut request = ApiRequest::get(path)
                .with_query("per_page", self.config.per_page)
                .with_query("page", page);
            for (k, v) in query {
                request = request.with_query(k, v);
            }
            if let Some(a) = accept {
                request = request.with_accept(a);
            }
            let response = self.execute(&request)?;
            let Value::Array(batch) = response.body else {
                return Err(IngestError::Shape {
                    path: request.display(),
                    detail: "expected a JSON array".into(),
                });
            };
            let batch_len = batch.len();
            for item in batch {
                if items.len() >= max_items {
                    return Ok((items, true));
                }
                items.push(item);
            }
            if items.len() >= max_items && batch_len as u32 == self.config.per_page {
                // The cap landed exactly on a page boundary; assume more.
                return Ok((items, true));
            }
            if (batch_len as u32) < self.config.per_page {
                return Ok((items, false));
            }
            page += 1;
        }
    }

    fn note_rate_limit(&self, response: &ApiResponse) {
        if let Some(remaining) = response
            .header("x-ratelimit-remaining")
            .and_then(|v| v.parse::<u64>().ok())
        {
            *self.rate_limit_remaining.lock().unwrap() = Some(remaining);
        }
    }

    /// How long to pause for a rate-limit response: `retry-after` when
    /// given, otherwise until `x-ratelimit-reset`, otherwise one second.
    fn rate_limit_wait(&self, response: &ApiResponse) -> Duration {
        if let Some(secs) = response
            .header("retry-after")
            .and_then(|v| v.parse::<u64>().ok())
        {
            return Duration::from_secs(secs);
        }
        if let Some(reset) = response
            .header("x-ratelimit-reset")
            .and_then(|v| v.parse::<i64>().ok())
        {
            let wait = reset - self.clock.now();
            if wait > 0 {
                return Duration::from_secs(wait as u64);
            }
        }
        Duration::from_secs(1)
    }
}

fn is_rate_limited(response: &ApiResponse) -> bool {
    response.header("retry-after").is_some()
        || response.header("x-ratelimit-remaining") == Some("0")
}
