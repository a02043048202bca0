use forgescan_model::{
    DetectionVerdict, DetectorKind, EvidenceClause, RepoSnapshot, ThresholdConfig,
};
use forgescan_textkit::{relevance, tokenize, Corpus};
use serde_json::json;

use crate::DetectorError;

/// Flags repositories that pad their topic list with keywords unrelated to
/// their own README.
///
/// Each keyword is scored with [`relevance`] against the repository README
/// inside `corpus`; keywords scoring strictly below `theta_k` count as
/// off-topic, and the repository is flagged when at least `x3` keywords are
/// off-topic.
///
/// The README of `repo` must already be registered as a document in `corpus`
/// (scoring is relative to a background of other project texts); a missing
/// document is reported as an invalid-input error.
pub fn detect_keyword_stuffing(
    repo: &RepoSnapshot,
    corpus: &Corpus,
    cfg: &ThresholdConfig,
) -> Result<DetectionVerdict, DetectorError> {
    if corpus.find_doc_by_tokens(&tokenize(&repo.readme)).is_none() {
        return Err(DetectorError::InvalidInput(format!(
            "readme of {} is not registered in the scoring corpus",
            repo.full_name
        )));
    }

    let mut low: Vec<(&str, f64)> = Vec::new();
    for keyword in &repo.keywords {
        let score = relevance(keyword, &repo.readme, corpus)?;
        if score < cfg.theta_k {
            low.push((keyword, score));
        }
    }

    let flagged = low.len() >= cfg.x3 as usize;
    let mut evidence = vec![EvidenceClause::new(
        "off_topic_keyword_count",
        json!(low.len()),
        json!(cfg.x3),
    )];
    for (keyword, score) in low {
        evidence.push(EvidenceClause::new(
            "keyword_relevance",
            json!({ "keyword": keyword, "relevance": score }),
            json!(cfg.theta_k),
        ));
    }
    Ok(
        DetectionVerdict::new(DetectorKind::KeywordStuffing, &repo.full_name)
            .flagged(flagged)
            .with_evidence(evidence),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::repo;
    use forgescan_textkit::{background_documents, tokenize};

    /// Corpus holding the repository README plus the synthetic background.
    fn corpus_with(readme: &str) -> Corpus {
        let mut docs = vec![("self".to_string(), tokenize(readme))];
        docs.extend(background_documents());
        Corpus::build(docs).unwrap()
    }

    fn http_repo() -> RepoSnapshot {
        let mut r = repo("octo/httpclient");
        r.readme = "A minimal http client library. Supports request retries, \
                    connection pooling and async transfers over tls."
            .into();
        r
    }

    #[test]
    fn stuffed_topic_list_is_flagged() {
        let mut r = http_repo();
        // Five trendy keywords with no support in the README text.
        r.keywords = vec![
            "blockchain".into(),
            "bitcoin".into(),
            "chatgpt".into(),
            "metaverse".into(),
            "airdrop".into(),
        ];
        let corpus = corpus_with(&r.readme);
        let v = detect_keyword_stuffing(&r, &corpus, &ThresholdConfig::default()).unwrap();
        assert!(v.flagged);
        assert_eq!(v.evidence[0].observed, json!(5));
        // One clause per off-topic keyword follows the count clause.
        assert_eq!(v.evidence.len(), 6);
        assert!(v.evidence[1..]
            .iter()
            .all(|c| c.clause == "keyword_relevance"));
    }

    #[test]
    fn on_topic_keywords_are_not_flagged() {
        let mut r = http_repo();
        r.keywords = vec!["http".into(), "client".into(), "async".into()];
        let corpus = corpus_with(&r.readme);
        let v = detect_keyword_stuffing(&r, &corpus, &ThresholdConfig::default()).unwrap();
        assert!(!v.flagged);
        assert_eq!(v.evidence[0].observed, json!(0));
    }

    #[test]
    fn four_off_topic_keywords_stay_below_the_default_floor() {
        let mut r = http_repo();
        r.keywords = vec![
            "blockchain".into(),
            "bitcoin".into(),
            "chatgpt".into(),
            "metaverse".into(),
        ];
        let corpus = corpus_with(&r.readme);
        let v = detect_keyword_stuffing(&r, &corpus, &ThresholdConfig::default()).unwrap();
        assert!(!v.flagged);
        assert_eq!(v.evidence[0].observed, json!(4));
    }

    #[test]
    fn unregistered_readme_is_rejected() {
        let r = http_repo();
        let corpus = Corpus::build(background_documents()).unwrap();
        let err = detect_keyword_stuffing(&r, &corpus, &ThresholdConfig::default()).unwrap_err();
        assert!(matches!(err, DetectorError::InvalidInput(_)));
    }

    #[test]
    fn no_keywords_means_nothing_to_flag() {
        let r = http_repo();
        let corpus = corpus_with(&r.readme);
        let v = detect_keyword_stuffing(&r, &corpus, &ThresholdConfig::default()).unwrap();
        assert!(!v.flagged);
        assert_eq!(v.evidence.len(), 1);
    }
}
