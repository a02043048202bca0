use forgescan_model::{
    DetectionVerdict, DetectorKind, EvidenceClause, ThresholdConfig, UserSnapshot,
};
use serde_json::json;
use url::Url;

use crate::DetectorError;

/// Flags profiles that dress themselves up with statistics that are not
/// theirs.
///
/// Two independent signals, either of which flags the profile:
///
/// * a stats widget embedded in the profile README renders *another*
///   account's numbers (the account named in the widget URL differs from the
///   profile's login, case-insensitive), or
/// * the profile claims a star total that differs from the sum over the
///   account's own repositories by at least `x5`.
///
/// Widget URLs that cannot be parsed are recorded in the evidence but never
/// flag on their own, and a missing star claim simply leaves the second
/// signal unevaluated.
pub fn detect_fake_stats(
    user: &UserSnapshot,
    cfg: &ThresholdConfig,
) -> Result<DetectionVerdict, DetectorError> {
    let mut mismatches = Vec::new();
    let mut unparseable = Vec::new();
    let mut anonymous = Vec::new();
    for raw in &user.stat_widget_urls {
        match widget_account(raw) {
            Err(()) => unparseable.push(raw.as_str()),
            Ok(None) => anonymous.push(raw.as_str()),
            Ok(Some(account)) => {
                if !account.eq_ignore_ascii_case(&user.login) {
                    mismatches.push(json!({ "url": raw, "account": account }));
                }
            }
        }
    }

    let owned_total = user.owned_star_total();
    let gap = user.claimed_star_count.map(|c| c.abs_diff(owned_total));
    let claim_inflated = gap.is_some_and(|g| g >= cfg.x5);
    let flagged = !mismatches.is_empty() || claim_inflated;

    let mut evidence = vec![
        EvidenceClause::new(
            "widget_account_mismatch",
            json!(mismatches),
            json!(user.login),
        ),
        EvidenceClause::new(
            "star_count_gap",
            json!({
                "claimed": user.claimed_star_count,
                "owned_total": owned_total,
                "gap": gap,
            }),
            json!(cfg.x5),
        ),
    ];
    for url in unparseable {
        evidence.push(EvidenceClause::note("unparseable_widget_url", json!(url)));
    }
    for url in anonymous {
        evidence.push(EvidenceClause::note("widget_without_account", json!(url)));
    }
    Ok(DetectionVerdict::new(DetectorKind::FakeStats, &user.login)
        .flagged(flagged)
        .with_evidence(evidence))
}

/// Extracts the account a stats widget renders.
///
/// Handles the common widget conventions: a `username`/`user` query
/// parameter (github-readme-stats, streak-stats and most forks) and the
/// path-style contribution chart at `ghchart.rshah.org/<login>`. Returns
/// `Ok(None)` for a parseable URL that names no account and `Err(())` for an
/// unparseable one.
fn widget_account(raw: &str) -> Result<Option<String>, ()> {
    let url = Url::parse(raw).map_err(|_| ())?;
    for (key, value) in url.query_pairs() {
        if (key == "username" || key == "user") && !value.is_empty() {
            return Ok(Some(value.into_owned()));
        }
    }
    if url.host_str() == Some("ghchart.rshah.org") {
        if let Some(first) = url.path_segments().and_then(|mut s| s.next()) {
            if !first.is_empty() {
                return Ok(Some(first.to_string()));
            }
        }
    }
    Ok(None)
}
