use std::collections::BTreeMap;

use forgescan_model::{
    DetectionVerdict, DetectorKind, EvidenceClause, RepoSnapshot, ThresholdConfig, Timestamp,
    UserSnapshot,
};
use serde_json::json;

use crate::DetectorError;

/// Flags accounts that pile activity onto long-settled issues and pull
/// requests to farm visible engagement.
///
/// An activity event is *stale* when its target is an issue or pull request
/// that was already resolved, and the event falls in
/// `[closed + delta_t, closed + window_rep_farming)`: later than the grace
/// period where follow-ups are normal, but recent enough to be deliberate
/// rather than archaeology. The account is flagged when at least
/// `farming_min_events` of its events are stale (`1` flags on any stale
/// event).
///
/// `repos` supplies the issues and pull requests the user's events may
/// target, addressed as `owner/name#number`; events targeting anything else
/// are ignored.
pub fn detect_reputation_farming(
    user: &UserSnapshot,
    repos: &[RepoSnapshot],
    cfg: &ThresholdConfig,
) -> Result<DetectionVerdict, DetectorError> {
    // Resolution times per thread. A reopened-and-reclosed thread would carry
    // several times; any of them can make an event stale.
    let mut resolved_at: BTreeMap<String, Vec<Timestamp>> = BTreeMap::new();
    for repo in repos {
        for issue in &repo.issues {
            if let Some(closed) = issue.closed_at {
                resolved_at
                    .entry(format!("{}#{}", repo.full_name, issue.number))
                    .or_default()
                    .push(closed);
            }
        }
        for pr in &repo.pull_requests {
            if let Some(closed) = pr.merged_or_closed_at {
                resolved_at
                    .entry(format!("{}#{}", repo.full_name, pr.number))
                    .or_default()
                    .push(closed);
            }
        }
    }

    let mut stale = Vec::new();
    for event in &user.activity {
        let Some(times) = resolved_at.get(&event.target) else {
            continue;
        };
        let hit = times.iter().find(|closed| {
            let at = event.timestamp.secs();
            let start = closed.secs() + cfg.delta_t;
            let end = closed.secs() + cfg.window_rep_farming;
            start <= at && at < end
        });
        if let Some(closed) = hit {
            stale.push((event, *closed));
        }
    }

    let flagged = stale.len() >= cfg.farming_min_events as usize;
    let mut evidence = vec![EvidenceClause::new(
        "stale_interaction_count",
        json!(stale.len()),
        json!(cfg.farming_min_events),
    )];
    for (event, closed) in stale {
        evidence.push(EvidenceClause::note(
            "stale_interaction",
            json!({
                "target": event.target,
                "kind": event.kind,
                "at": event.timestamp.secs(),
                "closed_at": closed.secs(),
            }),
        ));
    }
    Ok(
        DetectionVerdict::new(DetectorKind::ReputationFarming, &user.login)
            .flagged(flagged)
            .with_evidence(evidence),
    )
}
