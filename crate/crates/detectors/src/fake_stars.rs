use forgescan_model::{
    DetectionVerdict, DetectorKind, EvidenceClause, RepoSnapshot, ThresholdConfig, UserSnapshot,
};
use serde_json::json;

use crate::DetectorError;

/// Flags stargazers whose accounts look created to inflate a repository's
/// star count.
///
/// A stargazer of `repo` is flagged when both hold:
///
/// * the account stars at most `x1` repositories in total, and
/// * it produced at most `epsilon` activity events in the
///   `window_fake_stars` seconds following the star (window half-open at the
///   end).
///
/// When a stargazer's snapshot ends before that window does, the account
/// cannot be judged either way and its verdict is marked
/// [indeterminate](DetectionVerdict::indeterminate).
///
/// Returns one verdict per entry of `stargazers` (same order), followed by an
/// unflagged repository-level summary verdict reporting the flagged fraction
/// among the stargazers that could be evaluated.
///
/// Every login in `stargazers` must appear in `repo.star_events`; otherwise
/// the star time is unknown and an error is returned.
pub fn detect_fake_stars(
    repo: &RepoSnapshot,
    stargazers: &[&UserSnapshot],
    cfg: &ThresholdConfig,
) -> Result<Vec<DetectionVerdict>, DetectorError> {
    let mut verdicts = Vec::with_capacity(stargazers.len() + 1);
    let mut evaluated = 0usize;
    let mut flagged_count = 0usize;
    let mut indeterminate_count = 0usize;

    for user in stargazers {
        let event = repo.star_event_for(&user.login).ok_or_else(|| {
            DetectorError::InvalidInput(format!(
                "stargazer {:?} has no star event on {}",
                user.login, repo.full_name
            ))
        })?;
        let window_start = event.starred_at;
        let window_end = window_start.offset(cfg.window_fake_stars);
        let starred_clause = EvidenceClause::new(
            "starred",
            json!({ "repo": repo.full_name, "starred_at": window_start.secs() }),
            json!(true),
        );

        if user.snapshot_at < window_end {
            indeterminate_count += 1;
            verdicts.push(
                DetectionVerdict::new(DetectorKind::FakeStars, &user.login)
                    .indeterminate()
                    .with_evidence(vec![
                        starred_clause,
                        EvidenceClause::note(
                            "observation_incomplete",
                            json!({
                                "snapshot_at": user.snapshot_at.secs(),
                                "window_end": window_end.secs(),
                            }),
                        ),
                    ]),
            );
            continue;
        }

        let starred_total = user.starred_repos.len();
        let activity = user.activity_count(window_start, window_end)?;
        let flagged = starred_total <= cfg.x1 as usize && activity <= cfg.epsilon as usize;
        evaluated += 1;
        flagged_count += usize::from(flagged);

        verdicts.push(
            DetectionVerdict::new(DetectorKind::FakeStars, &user.login)
                .flagged(flagged)
                .with_evidence(vec![
                    starred_clause,
                    EvidenceClause::new(
                        "starred_repo_count",
                        json!(starred_total),
                        json!(cfg.x1),
                    ),
                    EvidenceClause::new(
                        "activity_in_window",
                        json!(activity),
                        json!(cfg.epsilon),
                    ),
                    EvidenceClause::note(
                        "window",
                        json!({ "start": window_start.secs(), "end": window_end.secs() }),
                    ),
                ]),
        );
    }

    let fraction = if evaluated > 0 {
        json!(flagged_count as f64 / evaluated as f64)
    } else {
        serde_json::Value::Null
    };
    verdicts.push(
        DetectionVerdict::new(DetectorKind::FakeStars, &repo.full_name).with_evidence(vec![
            EvidenceClause::note(
                "stargazers_flagged",
                json!({
                    "flagged": flagged_count,
                    "evaluated": evaluated,
                    "indeterminate": indeterminate_count,
                    "fraction": fraction,
                }),
            ),
        ]),
    );
    Ok(verdicts)
}
