use chrono::{TimeZone, Utc};
use serde::Deserialize;
use serde_json::Value;

use crate::fetch_repo::{dedupe, parse_body};
use crate::{ApiClient, IngestError};

#[derive(Deserialize)]
struct SearchPage {
    items: Vec<Value>,
    #[serde(default)]
    total_count: u64,
}

#[derive(Deserialize)]
struct SearchItem {
    full_name: String,
}

/// Full names of repositories pushed to on or after `since` (a Unix time),
/// newest update first, at most `max_items` of them.
///
/// The search API can filter by push recency but not by push *count*, so
/// callers that need "at least N updates in the window" must fetch the
/// candidates' commit histories and count locally.
///
/// Returns the names and whether the result was truncated — either by
/// `max_items` or by the server reporting more matches than it returned.
pub fn candidate_repos_recent_updates(
    client: &ApiClient,
    since: i64,
    max_items: usize,
) -> Result<(Vec<String>, bool), IngestError> {
    let date = Utc
        .timestamp_opt(since, 0)
        .single()
        .ok_or_else(|| IngestError::Shape {
            path: "/search/repositories".into(),
            detail: format!("cutoff {since} is outside the representable date range"),
        })?
        .format("%Y-%m-%d")
        .to_string();
    let query = format!("pushed:>={date}");

    // The search endpoint wraps its results in `{items, total_count}`, so the
    // generic array paginator does not apply; walk pages by hand.
    let per_page = client.config().per_page.to_string();
    let mut names = Vec::new();
    let mut truncated = false;
    let mut total_count = 0;
    let mut page = 1usize;
    while names.len() < max_items {
        let page_str = page.to_string();
        let params = [
            ("q", query.as_str()),
            ("sort", "updated"),
            ("order", "desc"),
            ("per_page", per_page.as_str()),
            ("page", page_str.as_str()),
        ];
        let response = client.get("/search/repositories", &params, None)?;
        let body: SearchPage = parse_body("/search/repositories", response.body)?;
        total_count = body.total_count;
        let got = body.items.len();
        for value in body.items {
            let item: SearchItem = parse_body("/search/repositories", value)?;
            names.push(item.full_name);
            if names.len() == max_items {
                truncated = true;
                break;
            }
        }
        if got < client.config().per_page as usize {
            break;
        }
        page += 1;
    }
    let names = dedupe(names);
    truncated |= (names.len() as u64) < total_count;
    Ok((names, truncated))
}
