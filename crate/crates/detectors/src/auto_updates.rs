use forgescan_model::{
    DetectionVerdict, DetectorKind, EvidenceClause, RepoSnapshot, ThresholdConfig,
};
use serde_json::json;

use crate::DetectorError;

/// Flags repositories whose history shows bursts of tiny scripted commits.
///
/// For every commit time `t` the window `[t, t + window_auto_updates)` is
/// examined. The repository is flagged when some window contains at least
/// `x2` commits whose mean lines touched (added plus deleted) is at most `y`.
///
/// The verdict's evidence describes the single most incriminating window:
/// among windows satisfying both clauses the one with the most commits
/// (breaking ties toward the smaller mean, then the earlier start); if no
/// window satisfies both, the same ordering is applied to all windows so the
/// closest miss is still visible.
pub fn detect_automatic_updates(
    repo: &RepoSnapshot,
    cfg: &ThresholdConfig,
) -> Result<DetectionVerdict, DetectorError> {
    let commits = &repo.commits;
    let mut lines_prefix = Vec::with_capacity(commits.len() + 1);
    lines_prefix.push(0u64);
    for c in commits {
        lines_prefix.push(lines_prefix.last().unwrap() + c.lines_touched());
    }

    struct Window {
        start: i64,
        count: usize,
        mean: f64,
        satisfies: bool,
    }
    let mut best: Option<Window> = None;

    let mut window_end_idx = 0usize;
    for (i, anchor) in commits.iter().enumerate() {
        let start = anchor.timestamp.secs();
        let end = start + cfg.window_auto_updates;
        if window_end_idx < i {
            window_end_idx = i;
        }
        while window_end_idx < commits.len() && commits[window_end_idx].timestamp.secs() < end {
            window_end_idx += 1;
        }
        let count = window_end_idx - i;
        let lines = lines_prefix[window_end_idx] - lines_prefix[i];
        let mean = lines as f64 / count as f64; // count >= 1: the anchor is inside its own window
        let satisfies = count >= cfg.x2 as usize && mean <= cfg.y;

        let better = match &best {
            None => true,
            Some(b) => {
                (satisfies, count, -mean) > (b.satisfies, b.count, -b.mean)
                // Equal on all three keys keeps the earlier window.
            }
        };
        if better {
            best = Some(Window {
                start,
                count,
                mean,
                satisfies,
            });
        }
    }

    let (flagged, count_v, mean_v, window_v) = match &best {
        Some(b) => (
            b.satisfies,
            json!(b.count),
            json!(b.mean),
            json!({ "start": b.start, "end": b.start + cfg.window_auto_updates }),
        ),
        None => (
            false,
            json!(0),
            serde_json::Value::Null,
            serde_json::Value::Null,
        ),
    };

    Ok(
        DetectionVerdict::new(DetectorKind::AutomaticUpdates, &repo.full_name)
            .flagged(flagged)
            .with_evidence(vec![
                EvidenceClause::new("window_commit_count", count_v, json!(cfg.x2)),
                EvidenceClause::new("window_mean_lines_touched", mean_v, json!(cfg.y)),
                EvidenceClause::note("window", window_v),
            ]),
    )
}
