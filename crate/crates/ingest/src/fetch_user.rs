use forgescan_model::{
    ActivityEvent, ActivityKind, OwnedRepo, Snapshot, Timestamp, UserSnapshot,
};
use serde::Deserialize;
use serde_json::Value;
use url::Url;

use crate::fetch_repo::{dedupe, parse_body, parse_date_header};
use crate::{ApiClient, FetchReport, IngestError};

/// Hosts whose embedded images are treated as profile stat widgets.
pub const DEFAULT_WIDGET_HOSTS: [&str; 3] = [
    "github-readme-stats.vercel.app",
    "github-readme-streak-stats.herokuapp.com",
    "ghchart.rshah.org",
];

/// Caps and widget-host filter for a user fetch.
#[derive(Debug, Clone)]
pub struct UserFetchOptions {
    pub max_starred: usize,
    pub max_owned: usize,
    pub max_events: usize,
    /// Links in the profile README are kept as stat widgets when their host
    /// is in this list.
    pub widget_hosts: Vec<String>,
}

impl Default for UserFetchOptions {
    fn default() -> Self {
        UserFetchOptions {
            max_starred: 400,
            max_owned: 200,
            max_events: 300,
            widget_hosts: DEFAULT_WIDGET_HOSTS.iter().map(|h| h.to_string()).collect(),
        }
    }
}

#[derive(Deserialize)]
struct UserMeta {
    #[serde(default)]
    followers: u64,
}

#[derive(Deserialize)]
struct RepoRef {
    full_name: String,
    #[serde(default)]
    stargazers_count: u64,
}

#[derive(Deserialize)]
struct EventItem {
    #[serde(rename = "type")]
    kind: String,
    repo: EventRepo,
    #[serde(default)]
    payload: Value,
    created_at: Timestamp,
}

#[derive(Deserialize)]
struct EventRepo {
    name: String,
}

#[derive(Deserialize)]
struct ReadmeDoc {
    content: String,
}

/// Fetches a user snapshot: profile metadata, starred repositories, owned
/// repositories, the public activity feed, and the profile README with its
/// stat widgets.
///
/// The API never exposes a "claimed" star total — that is something profiles
/// assert in prose — so `claimed_star_count` is always absent on fetched
/// snapshots; curators can fill it in afterwards.
pub fn fetch_user_snapshot(
    client: &ApiClient,
    login: &str,
    options: &UserFetchOptions,
) -> Result<(Snapshot, FetchReport), IngestError> {
    let requests_before = client.requests_made();
    let mut warnings = Vec::new();
    let mut truncated = false;

    let base = format!("/users/{login}");
    let meta_response = client.get(&base, &[], None)?;
    let header_time = parse_date_header(meta_response.header("date"));
    let meta: UserMeta = parse_body(&base, meta_response.body)?;

    let (starred_values, starred_truncated) =
        client.get_paginated(&format!("{base}/starred"), &[], None, options.max_starred)?;
    truncated |= starred_truncated;
    let mut starred_repos = Vec::with_capacity(starred_values.len());
    for value in starred_values {
        let item: RepoRef = parse_body(&format!("{base}/starred"), value)?;
        starred_repos.push(item.full_name);
    }
    let starred_repos = dedupe(starred_repos);

    let (owned_values, owned_truncated) =
        client.get_paginated(&format!("{base}/repos"), &[], None, options.max_owned)?;
    truncated |= owned_truncated;
    let mut owned_repos = Vec::with_capacity(owned_values.len());
    for value in owned_values {
        let item: RepoRef = parse_body(&format!("{base}/repos"), value)?;
        owned_repos.push(OwnedRepo {
            full_name: item.full_name,
            star_count: item.stargazers_count,
        });
    }

    let (event_values, events_truncated) =
        client.get_paginated(&format!("{base}/events"), &[], None, options.max_events)?;
    truncated |= events_truncated;
    let mut activity = Vec::with_capacity(event_values.len());
    for value in event_values {
        let item: EventItem = parse_body(&format!("{base}/events"), value)?;
        activity.push(map_event(item));
    }
    activity.sort_by(|a, b| {
        a.timestamp
            .cmp(&b.timestamp)
            .then_with(|| a.target.cmp(&b.target))
    });

    let readme_path = format!("/repos/{login}/{login}/readme");
    let profile_readme = match client.get(&readme_path, &[], None) {
        Ok(response) => {
            let doc: ReadmeDoc = parse_body(&readme_path, response.body)?;
            decode_base64_text(&doc.content).unwrap_or_else(|| {
                warnings.push("profile readme content was not valid base64/utf-8".into());
                String::new()
            })
        }
        Err(IngestError::SubjectNotFound(_)) => {
            warnings.push("user has no profile readme repository".into());
            String::new()
        }
        Err(e) => return Err(e),
    };
    let stat_widget_urls = widget_urls(&profile_readme, &options.widget_hosts);

    let newest = activity.last().map(|e| e.timestamp);
    let snapshot_at = match (header_time, newest) {
        (Some(h), Some(n)) => h.max(n),
        (Some(h), None) => h,
        (None, Some(n)) => {
            warnings.push("no date header; snapshot time taken from newest event".into());
            n
        }
        (None, None) => {
            warnings.push("no date header and no events; snapshot time is zero".into());
            Timestamp::new(0)
        }
    };

    let snapshot = Snapshot::from(UserSnapshot {
        login: login.to_string(),
        follower_count: meta.followers,
        starred_repos,
        owned_repos,
        activity,
        profile_readme,
        stat_widget_urls,
        claimed_star_count: None,
        snapshot_at,
    });
    snapshot.validate()?;

    let report = FetchReport {
        subject: login.to_string(),
        requests_made: client.requests_made() - requests_before,
        rate_limit_remaining: client.rate_limit_remaining(),
        truncated,
        warnings,
    };
    Ok((snapshot, report))
}

/// Maps one public event to the snapshot's activity vocabulary. Thread
/// events target `owner/name#number`; repository-scoped events target
/// `owner/name`.
fn map_event(item: EventItem) -> ActivityEvent {
    let repo = item.repo.name;
    let issue_number = item.payload["issue"]["number"].as_u64();
    let pr_number = item.payload["pull_request"]["number"].as_u64();
    let action_opened = item.payload["action"].as_str() == Some("opened");

    let (kind, target) = match item.kind.as_str() {
        "PushEvent" => (ActivityKind::Commit, repo),
        "WatchEvent" => (ActivityKind::Star, repo),
        "ForkEvent" => (ActivityKind::Fork, repo),
        "IssuesEvent" => {
            let kind = if action_opened {
                ActivityKind::IssueOpened
            } else {
                ActivityKind::Other
            };
            (kind, thread_target(&repo, issue_number))
        }
        "IssueCommentEvent" => (
            ActivityKind::IssueComment,
            thread_target(&repo, issue_number),
        ),
        "PullRequestEvent" => {
            let kind = if action_opened {
                ActivityKind::PrOpened
            } else {
                ActivityKind::Other
            };
            (kind, thread_target(&repo, pr_number))
        }
        "PullRequestReviewEvent" => (ActivityKind::PrReview, thread_target(&repo, pr_number)),
        "PullRequestReviewCommentEvent" => {
            (ActivityKind::PrComment, thread_target(&repo, pr_number))
        }
        _ => (ActivityKind::Other, repo),
    };
    ActivityEvent {
        kind,
        timestamp: item.created_at,
        target,
    }
}

fn thread_target(repo: &str, number: Option<u64>) -> String {
    match number {
        Some(n) => format!("{repo}#{n}"),
        None => repo.to_string(),
    }
}

/// Links in the README whose host matches the widget-host list.
fn widget_urls(readme: &str, hosts: &[String]) -> Vec<String> {
    forgescan_textkit::extract_links(readme)
        .into_iter()
        .filter(|link| {
            Url::parse(link)
                .ok()
                .and_then(|u| u.host_str().map(|h| h.to_ascii_lowercase()))
                .is_some_and(|host| hosts.iter().any(|w| w.eq_ignore_ascii_case(&host)))
        })
        .collect()
}

fn decode_base64_text(content: &str) -> Option<String> {
    use base64::engine::general_purpose::STANDARD;
    use base64::Engine;
    let compact: String = content.chars().filter(|c| !c.is_whitespace()).collect();
    String::from_utf8(STANDARD.decode(compact).ok()?).ok()
}
