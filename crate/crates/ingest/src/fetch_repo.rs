use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use forgescan_model::{
    CommitRecord, IssueRecord, IssueState, PullRequestRecord, PullState, RepoSnapshot, Snapshot,
    StarEvent, Timestamp,
};
use serde::Deserialize;
use serde_json::Value;

use crate::{ApiClient, FetchReport, IngestError};

/// Caps on how much of each list a repository fetch pulls. Hitting a cap
/// marks the report truncated instead of paging forever.
#[derive(Debug, Clone)]
pub struct RepoFetchOptions {
    pub max_stargazers: usize,
    pub max_commits: usize,
    pub max_issues: usize,
    pub max_pulls: usize,
}

impl Default for RepoFetchOptions {
    fn default() -> Self {
        RepoFetchOptions {
            max_stargazers: 400,
            max_commits: 300,
            max_issues: 200,
            max_pulls: 100,
        }
    }
}

// API payload shapes, reduced to the fields consumed here. GitHub sends many
// more fields; unknown ones are ignored on purpose.
#[derive(Deserialize)]
struct RepoMeta {
    description: Option<String>,
    #[serde(default)]
    stargazers_count: u64,
    #[serde(default)]
    forks_count: u64,
    #[serde(default)]
    topics: Vec<String>,
}

#[derive(Deserialize)]
struct ReadmeDoc {
    content: String,
}

#[derive(Deserialize)]
struct StargazerItem {
    starred_at: Timestamp,
    user: ActorRef,
}

#[derive(Deserialize)]
struct ActorRef {
    login: String,
}

#[derive(Deserialize)]
struct CommitListItem {
    sha: String,
    commit: CommitMeta,
    author: Option<ActorRef>,
}

#[derive(Deserialize)]
struct CommitMeta {
    author: GitAuthor,
    #[serde(default)]
    message: String,
}

#[derive(Deserialize)]
struct GitAuthor {
    #[serde(default)]
    name: String,
    #[serde(default)]
    email: String,
    date: Timestamp,
}

#[derive(Deserialize)]
struct CommitDetail {
    stats: Option<CommitStats>,
    #[serde(default)]
    files: Vec<CommitFile>,
}

#[derive(Deserialize)]
struct CommitStats {
    #[serde(default)]
    additions: u64,
    #[serde(default)]
    deletions: u64,
}

#[derive(Deserialize)]
struct CommitFile {
    filename: String,
}

#[derive(Deserialize)]
struct IssueItem {
    number: u64,
    #[serde(default)]
    title: String,
    body: Option<String>,
    state: String,
    created_at: Timestamp,
    closed_at: Option<Timestamp>,
    user: Option<ActorRef>,
    pull_request: Option<Value>,
}

#[derive(Deserialize)]
struct PullItem {
    number: u64,
    #[serde(default)]
    title: String,
    body: Option<String>,
    state: String,
    created_at: Timestamp,
    closed_at: Option<Timestamp>,
    merged_at: Option<Timestamp>,
    user: Option<ActorRef>,
}

/// Fetches everything a repository snapshot holds: metadata, README,
/// stargazers with star times, commits with per-commit diff stats, issues
/// and pull requests.
///
/// Commit diff stats require one extra request per commit; those are fanned
/// out concurrently under the client's in-flight cap. The snapshot time is
/// taken from the `Date` header of the first response (raised to the newest
/// record timestamp if the server clock lags the data).
pub fn fetch_repo_snapshot(
    client: &ApiClient,
    full_name: &str,
    options: &RepoFetchOptions,
) -> Result<(Snapshot, FetchReport), IngestError> {
    let (owner, name) = full_name.split_once('/').ok_or_else(|| {
        IngestError::Shape {
            path: full_name.to_string(),
            detail: "repository must be named owner/name".into(),
        }
    })?;
    if owner.is_empty() || name.is_empty() {
        return Err(IngestError::Shape {
            path: full_name.to_string(),
            detail: "repository must be named owner/name".into(),
        });
    }
    let base = format!("/repos/{owner}/{name}");
    let requests_before = client.requests_made();
    let mut warnings = Vec::new();
    let mut truncated = false;

    let meta_response = client.get(&base, &[], None)?;
    let header_time = parse_date_header(meta_response.header("date"));
    let meta: RepoMeta = parse_body(&base, meta_response.body)?;

    let readme = match client.get(&format!("{base}/readme"), &[], None) {
        Ok(response) => {
            let doc: ReadmeDoc = parse_body(&format!("{base}/readme"), response.body)?;
            decode_readme(&doc.content).unwrap_or_else(|| {
                warnings.push("readme content was not valid base64/utf-8".into());
                String::new()
            })
        }
        Err(IngestError::SubjectNotFound(_)) => {
            warnings.push("repository has no readme".into());
            String::new()
        }
        Err(e) => return Err(e),
    };

    let (star_values, stars_truncated) = client.get_paginated(
        &format!("{base}/stargazers"),
        &[],
        Some("application/vnd.github.star+json"),
        options.max_stargazers,
    )?;
    truncated |= stars_truncated;
    let mut star_events = Vec::with_capacity(star_values.len());
    for value in star_values {
        let item: StargazerItem = parse_body(&format!("{base}/stargazers"), value)?;
        star_events.push(StarEvent {
            login: item.user.login,
            starred_at: item.starred_at,
        });
    }
    star_events.sort_by(|a, b| a.starred_at.cmp(&b.starred_at).then_with(|| a.login.cmp(&b.login)));

    let (commit_values, commits_truncated) =
        client.get_paginated(&format!("{base}/commits"), &[], None, options.max_commits)?;
    truncated |= commits_truncated;
    let mut listed = Vec::with_capacity(commit_values.len());
    for value in commit_values {
        let item: CommitListItem = parse_body(&format!("{base}/commits"), value)?;
        listed.push(item);
    }
    let mut commits = fetch_commit_details(client, &base, listed)?;
    commits.sort_by(|a, b| a.timestamp.cmp(&b.timestamp).then_with(|| a.sha.cmp(&b.sha)));

    let (issue_values, issues_truncated) = client.get_paginated(
        &format!("{base}/issues"),
        &[("state", "all")],
        None,
        options.max_issues,
    )?;
    truncated |= issues_truncated;
    let mut issues = Vec::new();
    for value in issue_values {
        let item: IssueItem = parse_body(&format!("{base}/issues"), value)?;
        if item.pull_request.is_some() {
            continue; // the issues endpoint interleaves pull requests
        }
        issues.push(IssueRecord {
            number: item.number,
            author_login: item.user.map(|u| u.login).unwrap_or_default(),
            title: item.title,
            body: item.body.unwrap_or_default(),
            created_at: item.created_at,
            closed_at: item.closed_at,
            state: if item.state == "closed" {
                IssueState::Closed
            } else {
                IssueState::Open
            },
        });
    }
    issues.sort_by_key(|i| i.number);

    let (pull_values, pulls_truncated) = client.get_paginated(
        &format!("{base}/pulls"),
        &[("state", "all")],
        None,
        options.max_pulls,
    )?;
    truncated |= pulls_truncated;
    let mut pull_requests = Vec::new();
    for value in pull_values {
        let item: PullItem = parse_body(&format!("{base}/pulls"), value)?;
        let state = if item.merged_at.is_some() {
            PullState::Merged
        } else if item.state == "closed" {
            PullState::Closed
        } else {
            PullState::Open
        };
        pull_requests.push(PullRequestRecord {
            number: item.number,
            author_login: item.user.map(|u| u.login).unwrap_or_default(),
            title: item.title,
            body: item.body.unwrap_or_default(),
            created_at: item.created_at,
            merged_or_closed_at: item.merged_at.or(item.closed_at),
            state,
        });
    }
    pull_requests.sort_by_key(|p| p.number);

    // Latest instant observed anywhere in the data; the snapshot cannot
    // predate what it contains.
    let newest = star_events
        .iter()
        .map(|e| e.starred_at)
        .chain(commits.iter().map(|c| c.timestamp))
        .chain(issues.iter().flat_map(|i| {
            [Some(i.created_at), i.closed_at].into_iter().flatten()
        }))
        .chain(pull_requests.iter().flat_map(|p| {
            [Some(p.created_at), p.merged_or_closed_at].into_iter().flatten()
        }))
        .max();
    let snapshot_at = match (header_time, newest) {
        (Some(h), Some(n)) => h.max(n),
        (Some(h), None) => h,
        (None, Some(n)) => {
            warnings.push("no date header; snapshot time taken from newest record".into());
            n
        }
        (None, None) => {
            warnings.push("no date header and no records; snapshot time is zero".into());
            Timestamp::new(0)
        }
    };

    let snapshot = RepoSnapshot {
        full_name: full_name.to_string(),
        description: meta.description.unwrap_or_default(),
        readme,
        keywords: dedupe(meta.topics),
        star_count: meta.stargazers_count,
        fork_count: meta.forks_count,
        star_events,
        commits,
        issues,
        pull_requests,
        snapshot_at,
    };
    let snapshot = Snapshot::from(snapshot);
    snapshot.validate()?;

    let report = FetchReport {
        subject: full_name.to_string(),
        requests_made: client.requests_made() - requests_before,
        rate_limit_remaining: client.rate_limit_remaining(),
        truncated,
        warnings,
    };
    Ok((snapshot, report))
}

/// Fetches per-commit diff stats concurrently, bounded by the client's
/// in-flight cap, and assembles full commit records in input order.
fn fetch_commit_details(
    client: &ApiClient,
    base: &str,
    listed: Vec<CommitListItem>,
) -> Result<Vec<CommitRecord>, IngestError> {
    let total = listed.len();
    let results: Mutex<Vec<Option<Result<CommitRecord, IngestError>>>> =
        Mutex::new((0..total).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let workers = client.config().max_in_flight.clamp(1, total.max(1));

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= total {
                    break;
                }
                let item = &listed[i];
                let path = format!("{base}/commits/{}", item.sha);
                let outcome = client
                    .get(&path, &[], None)
                    .and_then(|response| parse_body::<CommitDetail>(&path, response.body))
                    .map(|detail| build_commit(item, detail));
                results.lock().unwrap()[i] = Some(outcome);
            });
        }
    });

    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|slot| slot.expect("every commit index visited"))
        .collect()
}

fn build_commit(item: &CommitListItem, detail: CommitDetail) -> CommitRecord {
    let author_login = item
        .author
        .as_ref()
        .map(|a| a.login.clone())
        .filter(|l| !l.is_empty())
        .or_else(|| non_empty(item.commit.author.name.clone()))
        .or_else(|| email_local_part(&item.commit.author.email))
        .unwrap_or_else(|| "unknown".to_string());
    let stats = detail.stats.unwrap_or(CommitStats { additions: 0, deletions: 0 });
    CommitRecord {
        sha: item.sha.clone(),
        author_login,
        co_authors: co_authors_from_message(&item.commit.message),
        timestamp: item.commit.author.date,
        lines_added: stats.additions,
        lines_deleted: stats.deletions,
        touched_paths: detail.files.into_iter().map(|f| f.filename).collect(),
    }
}

/// Names from `Co-authored-by:` trailers. Offline there is no way to resolve
/// a display name to a login, so the name is kept as written (the email's
/// local part when the name is missing).
fn co_authors_from_message(message: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for line in message.lines() {
        let line = line.trim();
        let Some(rest) = strip_prefix_ignore_case(line, "co-authored-by:") else {
            continue;
        };
        let rest = rest.trim();
        let candidate = match rest.split_once('<') {
            Some((name, email_part)) => {
                let name = name.trim();
                if name.is_empty() {
                    email_local_part(email_part.trim_end_matches('>')).unwrap_or_default()
                } else {
                    name.to_string()
                }
            }
            None => rest.to_string(),
        };
        if !candidate.is_empty()
            && !out.iter().any(|c| c.eq_ignore_ascii_case(&candidate))
        {
            out.push(candidate);
        }
    }
    out
}

fn strip_prefix_ignore_case<'a>(line: &'a str, prefix: &str) -> Option<&'a str> {
    if line.len() >= prefix.len() && line[..prefix.len()].eq_ignore_ascii_case(prefix) {
        Some(&line[prefix.len()..])
    } else {
        None
    }
}

fn email_local_part(email: &str) -> Option<String> {
    let local = email.split('@').next().unwrap_or("").trim();
    non_empty(local.to_string())
}

fn non_empty(s: String) -> Option<String> {
    if s.is_empty() {
        None
    } else {
        Some(s)
    }
}

fn decode_readme(content: &str) -> Option<String> {
    let compact: String = content.chars().filter(|c| !c.is_whitespace()).collect();
    let bytes = BASE64.decode(compact).ok()?;
    String::from_utf8(bytes).ok()
}

pub(crate) fn parse_date_header(value: Option<&str>) -> Option<Timestamp> {
    let value = value?;
    chrono::DateTime::parse_from_rfc2822(value)
        .ok()
        .map(|dt| Timestamp::new(dt.timestamp()))
}

pub(crate) fn parse_body<T: serde::de::DeserializeOwned>(
    path: &str,
    body: Value,
) -> Result<T, IngestError> {
    serde_json::from_value(body).map_err(|e| IngestError::Shape {
        path: path.to_string(),
        detail: e.to_string(),
    })
}

pub(crate) fn dedupe(items: Vec<String>) -> Vec<String> {
    let mut seen = std::collections::BTreeSet::new();
    items.into_iter().filter(|i| seen.insert(i.clone())).collect()
}
