use forgescan_model::{
    repo_popularity, user_popularity, DetectionVerdict, DetectorKind, EvidenceClause,
    RepoSnapshot, ThresholdConfig, UserSnapshot,
};
use serde_json::json;

use crate::DetectorError;

/// Flags obscure repositories that borrow a well-known developer's name in
/// their commit metadata to look endorsed.
///
/// Commits are *attributed* to the suspect when the suspect is the author or
/// a co-author (login match, case-insensitive). The repository is flagged
/// when all three hold:
///
/// * between 1 and `x4` commits are attributed to the suspect — a token
///   presence, not real involvement,
/// * the repository's normalized popularity is at most `phi_p2`, and
/// * the suspect's normalized popularity is at least `phi_p3`.
///
/// At least one commit must be attributed to the suspect; calling this with
/// an unrelated account is reported as an error rather than a clean verdict.
pub fn detect_spoofed_contributor(
    repo: &RepoSnapshot,
    suspect: &UserSnapshot,
    cfg: &ThresholdConfig,
) -> Result<DetectionVerdict, DetectorError> {
    let attributed: Vec<&str> = repo
        .commits
        .iter()
        .filter(|c| c.attributes(&suspect.login))
        .map(|c| c.sha.as_str())
        .collect();
    if attributed.is_empty() {
        return Err(DetectorError::InvalidInput(format!(
            "no commit in {} is attributed to {:?}",
            repo.full_name, suspect.login
        )));
    }

    let count = attributed.len();
    let repo_pop = repo_popularity(repo.star_count);
    let suspect_pop = user_popularity(suspect.follower_count);
    let flagged =
        count <= cfg.x4 as usize && repo_pop <= cfg.phi_p2 && suspect_pop >= cfg.phi_p3;

    Ok(
        DetectionVerdict::new(DetectorKind::SpoofedContributor, &repo.full_name)
            .flagged(flagged)
            .with_evidence(vec![
                EvidenceClause::note("suspect", json!(suspect.login)),
                EvidenceClause::new("attributed_commit_count", json!(count), json!(cfg.x4)),
                EvidenceClause::new("repo_popularity", json!(repo_pop), json!(cfg.phi_p2)),
                EvidenceClause::new(
                    "contributor_popularity",
                    json!(suspect_pop),
                    json!(cfg.phi_p3),
                ),
                EvidenceClause::note("attributed_commits", json!(attributed)),
            ]),
    )
}
