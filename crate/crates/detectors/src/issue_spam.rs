use forgescan_model::{DetectionVerdict, DetectorKind, EvidenceClause, RepoSnapshot};
use forgescan_textkit::{extract_commands, extract_links, SpamModelFile};
use serde_json::json;

use crate::DetectorError;

/// Flags issues that push the reader toward an external payload.
///
/// Each issue's title and body are scored by the trained spam model. An
/// issue is flagged when it carries an actionable payload — at least one
/// hyperlink or shell-command instruction — *and* the model's spam
/// probability reaches the model's decision threshold. Text that merely
/// "sounds spammy" without anything to click or run stays unflagged, as does
/// a link-bearing issue the model scores as ordinary.
///
/// Returns one verdict per issue, addressed as `owner/name#number`, in issue
/// order. A repository without issues yields no verdicts.
pub fn detect_issue_spam(
    repo: &RepoSnapshot,
    model: &SpamModelFile,
) -> Result<Vec<DetectionVerdict>, DetectorError> {
    let threshold = model.classifier.threshold();
    let mut verdicts = Vec::with_capacity(repo.issues.len());
    for issue in &repo.issues {
        let text = format!("{}\n{}", issue.title, issue.body);
        let links = extract_links(&text);
        let commands = extract_commands(&text);
        let has_payload = !links.is_empty() || !commands.is_empty();
        let probability = model.score_text(&text)?;
        let flagged = has_payload && probability >= threshold;

        verdicts.push(
            DetectionVerdict::new(
                DetectorKind::IssueSpam,
                format!("{}#{}", repo.full_name, issue.number),
            )
            .flagged(flagged)
            .with_evidence(vec![
                EvidenceClause::new(
                    "has_link_or_command",
                    json!({ "links": links, "commands": commands }),
                    json!(true),
                ),
                EvidenceClause::new("spam_probability", json!(probability), json!(threshold)),
            ]),
        );
    }
    Ok(verdicts)
}
