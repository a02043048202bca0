//! Operational-policy tests for the API client: the in-flight cap, rate-limit
//! pauses, the retry budget, and pagination caps, all observed through an
//! instrumented transport and a manual clock.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Duration;

use forgescan_ingest::{
    candidate_repos_recent_updates, fetch_repo_snapshot, ApiClient, ApiClientConfig, ApiRequest,
    ApiResponse, IngestError, ManualClock, RepoFetchOptions, ReplayTransport, Transport,
    TranscriptEntry,
};
use serde_json::{json, Value};

/// Counts how many requests are inside the transport at once; the dwell
/// keeps each call open long enough for overlap to be observable.
struct InstrumentedTransport<T: Transport> {
    inner: T,
    in_flight: AtomicUsize,
    max_seen: AtomicUsize,
    dwell: Duration,
}

impl<T: Transport> InstrumentedTransport<T> {
    fn new(inner: T, dwell: Duration) -> Self {
        InstrumentedTransport {
            inner,
            in_flight: AtomicUsize::new(0),
            max_seen: AtomicUsize::new(0),
            dwell,
        }
    }

    fn max_seen(&self) -> usize {
        self.max_seen.load(Ordering::SeqCst)
    }
}

impl<T: Transport> Transport for InstrumentedTransport<T> {
    fn execute(&self, request: &ApiRequest) -> Result<ApiResponse, IngestError> {
        let concurrent = self.in_flight.fetch_add(1, Ordering::SeqCst) + 1;
        self.max_seen.fetch_max(concurrent, Ordering::SeqCst);
        std::thread::sleep(self.dwell);
        let result = self.inner.execute(request);
        self.in_flight.fetch_sub(1, Ordering::SeqCst);
        result
    }
}

fn entry(
    request: ApiRequest,
    status: u16,
    headers: &[(&str, &str)],
    body: Value,
) -> TranscriptEntry {
    TranscriptEntry {
        request,
        response: ApiResponse {
            status,
            headers: headers.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            body,
        },
    }
}

fn page_request(path: &str, page: u32) -> ApiRequest {
    ApiRequest::get(path).with_query("per_page", 100).with_query("page", page)
}

fn client_with(
    entries: Vec<TranscriptEntry>,
    clock: Arc<ManualClock>,
    config: ApiClientConfig,
) -> ApiClient {
    ApiClient::new(Arc::new(ReplayTransport::new(entries)), clock, config)
}

#[test]
fn concurrent_requests_never_exceed_the_in_flight_cap() {
    let entries: Vec<TranscriptEntry> =
        (0..8).map(|_| entry(ApiRequest::get("/ping"), 200, &[], json!({}))).collect();
    let transport = Arc::new(InstrumentedTransport::new(
        ReplayTransport::new(entries),
        Duration::from_millis(10),
    ));
    let client = ApiClient::new(
        transport.clone(),
        Arc::new(ManualClock::new(0)),
        ApiClientConfig { max_in_flight: 2, ..ApiClientConfig::default() },
    );

    std::thread::scope(|scope| {
        for _ in 0..8 {
            scope.spawn(|| client.get("/ping", &[], None).unwrap());
        }
    });

    assert!(transport.max_seen() <= 2, "cap exceeded: {} in flight", transport.max_seen());
    assert!(transport.max_seen() >= 2, "requests never overlapped; cap untested");
    assert_eq!(client.requests_made(), 8);
}

#[test]
fn commit_detail_fanout_stays_under_the_in_flight_cap() {
    let mut entries = vec![
        entry(
            ApiRequest::get("/repos/octo/busy"),
            200,
            &[("date", "Sat, 13 Jan 2024 12:00:00 GMT")],
            json!({"full_name": "octo/busy", "stargazers_count": 0}),
        ),
        entry(
            ApiRequest::get("/repos/octo/busy/readme"),
            404,
            &[],
            json!({"message": "Not Found"}),
        ),
        entry(page_request("/repos/octo/busy/stargazers", 1), 200, &[], json!([])),
    ];
    let commit_list: Vec<Value> = (0..12)
        .map(|i| {
            json!({
                "sha": format!("{i:040x}"),
                "commit": {
                    "author": {
                        "name": "Octo Dev",
                        "email": "octo@example.com",
                        "date": 1_705_000_000 + i * 60,
                    },
                    "message": format!("change {i}"),
                },
                "author": {"login": "octo"},
            })
        })
        .collect();
    entries.push(entry(
        page_request("/repos/octo/busy/commits", 1),
        200,
        &[],
        Value::Array(commit_list),
    ));
    for i in 0..12 {
        entries.push(entry(
            ApiRequest::get(format!("/repos/octo/busy/commits/{i:040x}")),
            200,
            &[],
            json!({"stats": {"additions": 1, "deletions": 0}, "files": [{"filename": "src/lib.rs"}]}),
        ));
    }
    entries.push(entry(
        page_request("/repos/octo/busy/issues", 1).with_query("state", "all"),
        200,
        &[],
        json!([]),
    ));
    entries.push(entry(
        page_request("/repos/octo/busy/pulls", 1).with_query("state", "all"),
        200,
        &[],
        json!([]),
    ));

    let transport = Arc::new(InstrumentedTransport::new(
        ReplayTransport::new(entries),
        Duration::from_millis(10),
    ));
    let client = ApiClient::new(
        transport.clone(),
        Arc::new(ManualClock::new(0)),
        ApiClientConfig { max_in_flight: 3, ..ApiClientConfig::default() },
    );

    let (snapshot, report) =
        fetch_repo_snapshot(&client, "octo/busy", &RepoFetchOptions::default()).unwrap();

    assert!(transport.max_seen() <= 3, "cap exceeded: {} in flight", transport.max_seen());
    assert!(transport.max_seen() >= 2, "commit details never fetched concurrently");
    assert_eq!(report.requests_made, 18);
    let forgescan_model::Snapshot::Repo(repo) = snapshot else { panic!("expected repo") };
    assert_eq!(repo.commits.len(), 12);
    // Concurrent assembly must not scramble the order.
    assert!(repo.commits.windows(2).all(|w| w[0].timestamp <= w[1].timestamp));
}

#[test]
fn rate_limited_requests_wait_until_the_advertised_reset() {
    let entries = vec![
        entry(
            ApiRequest::get("/rate"),
            403,
            &[("x-ratelimit-remaining", "0"), ("x-ratelimit-reset", "1060")],
            json!({"message": "API rate limit exceeded"}),
        ),
        entry(
            ApiRequest::get("/rate"),
            200,
            &[("x-ratelimit-remaining", "4999")],
            json!({"ok": true}),
        ),
    ];
    let clock = Arc::new(ManualClock::new(1_000));
    let client = client_with(entries, clock.clone(), ApiClientConfig::default());

    let response = client.get("/rate", &[], None).unwrap();

    assert_eq!(response.status, 200);
    assert_eq!(clock.sleeps(), vec![Duration::from_secs(60)]);
    assert_eq!(client.requests_made(), 2);
    assert_eq!(client.rate_limit_remaining(), Some(4_999));
}

#[test]
fn a_retry_after_header_overrides_the_reset_time() {
    let entries = vec![
        entry(
            ApiRequest::get("/rate"),
            429,
            &[("retry-after", "7"), ("x-ratelimit-reset", "9999")],
            json!({"message": "slow down"}),
        ),
        entry(ApiRequest::get("/rate"), 200, &[], json!({"ok": true})),
    ];
    let clock = Arc::new(ManualClock::new(1_000));
    let client = client_with(entries, clock.clone(), ApiClientConfig::default());

    client.get("/rate", &[], None).unwrap();

    assert_eq!(clock.sleeps(), vec![Duration::from_secs(7)]);
}

#[test]
fn forbidden_without_rate_limit_signals_is_not_retried() {
    let entries = vec![entry(
        ApiRequest::get("/private"),
        403,
        &[("x-ratelimit-remaining", "55")],
        json!({"message": "Must have push access"}),
    )];
    let client = client_with(entries, Arc::new(ManualClock::new(0)), ApiClientConfig::default());

    let err = client.get("/private", &[], None).unwrap_err();

    assert!(matches!(err, IngestError::Api { status: 403, .. }), "got {err:?}");
    assert_eq!(client.requests_made(), 1);
}

#[test]
fn attempts_stop_at_the_retry_budget_plus_one() {
    let entries: Vec<TranscriptEntry> = (0..5)
        .map(|_| entry(ApiRequest::get("/flaky"), 500, &[], json!({"message": "boom"})))
        .collect();
    let clock = Arc::new(ManualClock::new(0));
    let client = client_with(
        entries,
        clock,
        ApiClientConfig { retry_budget: 2, ..ApiClientConfig::default() },
    );

    let err = client.get("/flaky", &[], None).unwrap_err();

    let IngestError::RetryBudgetExhausted { path, attempts, last_error } = err else {
        panic!("expected retry budget exhaustion, got {err:?}");
    };
    assert_eq!(path, "/flaky");
    assert_eq!(attempts, 3);
    assert!(last_error.contains("500"), "last error should name the status: {last_error}");
    assert_eq!(client.requests_made(), 3, "budget of 2 retries allows exactly 3 attempts");
}

#[test]
fn a_transient_server_error_is_retried_to_success() {
    let entries = vec![
        entry(ApiRequest::get("/flaky"), 502, &[], json!({"message": "bad gateway"})),
        entry(ApiRequest::get("/flaky"), 200, &[], json!({"ok": true})),
    ];
    let client = client_with(entries, Arc::new(ManualClock::new(0)), ApiClientConfig::default());

    let response = client.get("/flaky", &[], None).unwrap();

    assert_eq!(response.status, 200);
    assert_eq!(client.requests_made(), 2);
}

#[test]
fn missing_subjects_are_reported_without_retries() {
    let entries = vec![entry(
        ApiRequest::get("/repos/octo/gone"),
        404,
        &[],
        json!({"message": "Not Found"}),
    )];
    let client = client_with(entries, Arc::new(ManualClock::new(0)), ApiClientConfig::default());

    let err = client.get("/repos/octo/gone", &[], None).unwrap_err();

    assert!(matches!(err, IngestError::SubjectNotFound(_)), "got {err:?}");
    assert_eq!(client.requests_made(), 1);
}

fn small_page_request(path: &str, page: u32) -> ApiRequest {
    ApiRequest::get(path).with_query("per_page", 2).with_query("page", page)
}

fn small_page_config() -> ApiClientConfig {
    ApiClientConfig { per_page: 2, ..ApiClientConfig::default() }
}

#[test]
fn pagination_stops_at_the_cap_and_reports_truncation() {
    let entries = vec![
        entry(small_page_request("/list", 1), 200, &[], json!([1, 2])),
        entry(small_page_request("/list", 2), 200, &[], json!([3, 4])),
        entry(small_page_request("/list", 3), 200, &[], json!([5])),
    ];
    let transport = Arc::new(ReplayTransport::new(entries));
    let client = ApiClient::new(transport.clone(), Arc::new(ManualClock::new(0)), small_page_config());

    let (items, truncated) = client.get_paginated("/list", &[], None, 3).unwrap();

    assert_eq!(items, vec![json!(1), json!(2), json!(3)]);
    assert!(truncated);
    assert_eq!(transport.unconsumed(), 1, "the page past the cap must not be fetched");
}

#[test]
fn a_cap_landing_on_a_page_boundary_is_reported_truncated() {
    let entries = vec![
        entry(small_page_request("/list", 1), 200, &[], json!([1, 2])),
        entry(small_page_request("/list", 2), 200, &[], json!([3, 4])),
    ];
    let client = client_with(entries, Arc::new(ManualClock::new(0)), small_page_config());

    let (items, truncated) = client.get_paginated("/list", &[], None, 4).unwrap();

    assert_eq!(items.len(), 4);
    assert!(truncated, "a full final page may hide more items");
}

#[test]
fn a_listing_that_ends_before_the_cap_is_complete() {
    let entries = vec![
        entry(small_page_request("/list", 1), 200, &[], json!([1, 2])),
        entry(small_page_request("/list", 2), 200, &[], json!([3, 4])),
        entry(small_page_request("/list", 3), 200, &[], json!([5])),
    ];
    let client = client_with(entries, Arc::new(ManualClock::new(0)), small_page_config());

    let (items, truncated) = client.get_paginated("/list", &[], None, 10).unwrap();

    assert_eq!(items.len(), 5);
    assert!(!truncated);
}

fn search_request(page: u32) -> ApiRequest {
    ApiRequest::get("/search/repositories")
        .with_query("q", "pushed:>=2024-01-10")
        .with_query("sort", "updated")
        .with_query("order", "desc")
        .with_query("per_page", 2)
        .with_query("page", page)
}

#[test]
fn search_results_are_deduped_in_first_seen_order() {
    let entries = vec![
        entry(
            search_request(1),
            200,
            &[],
            json!({"total_count": 4, "items": [{"full_name": "a/x"}, {"full_name": "b/y"}]}),
        ),
        entry(
            search_request(2),
            200,
            &[],
            json!({"total_count": 4, "items": [{"full_name": "a/x"}, {"full_name": "c/z"}]}),
        ),
        entry(
            search_request(3),
            200,
            &[],
            json!({"total_count": 4, "items": [{"full_name": "d/w"}]}),
        ),
    ];
    let client = client_with(entries, Arc::new(ManualClock::new(0)), small_page_config());

    // 2024-01-10T10:00:00Z; only the calendar date reaches the query.
    let (names, truncated) = candidate_repos_recent_updates(&client, 1_704_880_800, 10).unwrap();

    assert_eq!(names, vec!["a/x", "b/y", "c/z", "d/w"]);
    assert!(!truncated);
}

#[test]
fn search_stops_at_the_candidate_cap() {
    let entries = vec![
        entry(
            search_request(1),
            200,
            &[],
            json!({"total_count": 4, "items": [{"full_name": "a/x"}, {"full_name": "b/y"}]}),
        ),
        entry(
            search_request(2),
            200,
            &[],
            json!({"total_count": 4, "items": [{"full_name": "a/x"}, {"full_name": "c/z"}]}),
        ),
    ];
    let client = client_with(entries, Arc::new(ManualClock::new(0)), small_page_config());

    let (names, truncated) = candidate_repos_recent_updates(&client, 1_704_880_800, 3).unwrap();

    assert_eq!(names, vec!["a/x", "b/y"]);
    assert!(truncated);
}
