use forgescan_model::{
    repo_popularity, DetectionVerdict, DetectorKind, EvidenceClause, RepoSnapshot,
    ThresholdConfig, REPO_STAR_SCALE_CAP,
};
use forgescan_textkit::{name_similarity, readme_similarity};
use serde_json::json;

use crate::{DetectorError, PopularReference};

/// Flags repositories imitating a popular project under a near-identical
/// name.
///
/// The candidate is compared against every reference. A reference is
/// considered at all only when the repository *names* (the part after the
/// owner) are similar at `theta_t1` or above; references failing that gate
/// produce no verdict. For each gated reference one verdict is emitted, and
/// it is flagged when additionally:
///
/// * the README similarity reaches `theta_t2`, and
/// * the normalized-popularity ratio (larger over smaller, with popularity
///   clamped away from zero) reaches `phi_p1`.
///
/// A reference with the candidate's own `owner/name` is skipped. The
/// reference list must be non-empty — scanning against nothing would
/// trivially report every repository clean.
pub fn detect_typo_squatting(
    candidate: &RepoSnapshot,
    references: &[PopularReference],
    cfg: &ThresholdConfig,
) -> Result<Vec<DetectionVerdict>, DetectorError> {
    if references.is_empty() {
        return Err(DetectorError::InvalidInput(
            "typo-squatting needs at least one reference repository".into(),
        ));
    }
    // Zero-star popularity normalizes to 0; clamp so the ratio stays finite.
    let popularity_floor = 1.0 / REPO_STAR_SCALE_CAP as f64;
    let candidate_popularity = repo_popularity(candidate.star_count).max(popularity_floor);

    let mut verdicts = Vec::new();
    for reference in references {
        if reference.full_name.eq_ignore_ascii_case(&candidate.full_name) {
            continue;
        }
        let name_sim = name_similarity(candidate.name(), reference.name());
        if name_sim < cfg.theta_t1 {
            continue;
        }
        let readme_sim = readme_similarity(&candidate.readme, &reference.readme);
        let reference_popularity = repo_popularity(reference.star_count).max(popularity_floor);
        let ratio = candidate_popularity.max(reference_popularity)
            / candidate_popularity.min(reference_popularity);
        let flagged = readme_sim >= cfg.theta_t2 && ratio >= cfg.phi_p1;

        verdicts.push(
            DetectionVerdict::new(DetectorKind::TypoSquatting, &candidate.full_name)
                .flagged(flagged)
                .with_evidence(vec![
                    EvidenceClause::note("reference", json!(reference.full_name)),
                    EvidenceClause::new("name_similarity", json!(name_sim), json!(cfg.theta_t1)),
                    EvidenceClause::new(
                        "readme_similarity",
                        json!(readme_sim),
                        json!(cfg.theta_t2),
                    ),
                    EvidenceClause::new("popularity_ratio", json!(ratio), json!(cfg.phi_p1)),
                ]),
        );
    }
    Ok(verdicts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::repo;

    const README: &str = "http for humans: an elegant and simple http library \
                          with sessions, retries and connection pooling";

    fn reference() -> PopularReference {
        PopularReference {
            full_name: "octo/requests".into(),
            readme: README.into(),
            star_count: 50_000,
        }
    }

    fn observed_f64(v: &DetectionVerdict, clause: &str) -> f64 {
        v.evidence
            .iter()
            .find(|c| c.clause == clause)
            .unwrap()
            .observed
            .as_f64()
            .unwrap()
    }

    #[test]
    fn obscure_clone_with_near_name_is_flagged() {
        let mut candidate = repo("evil/reqests"); // one dropped letter
        candidate.readme = README.into();
        candidate.star_count = 0;

        let verdicts =
            detect_typo_squatting(&candidate, &[reference()], &ThresholdConfig::default())
                .unwrap();
        assert_eq!(verdicts.len(), 1);
        let v = &verdicts[0];
        assert!(v.flagged);
        assert_eq!(v.subject, "evil/reqests");
        assert_eq!(observed_f64(v, "name_similarity"), 0.875); // 1 edit over 8 chars
        assert!((observed_f64(v, "readme_similarity") - 1.0).abs() < 1e-12);
        // 50k-star reference against a clamped zero-star candidate.
        let ratio = observed_f64(v, "popularity_ratio");
        assert!((ratio / 93_979.49 - 1.0).abs() < 1e-4, "ratio {ratio}");
    }

    #[test]
    fn dissimilar_name_emits_no_verdict() {
        let mut candidate = repo("evil/reqeusts"); // two plain edits over 8 chars
        candidate.readme = README.into();
        candidate.star_count = 0;
        let verdicts =
            detect_typo_squatting(&candidate, &[reference()], &ThresholdConfig::default())
                .unwrap();
        assert!(verdicts.is_empty());
    }

    #[test]
    fn modest_popularity_gap_is_not_flagged() {
        let mut candidate = repo("evil/reqests");
        candidate.readme = README.into();
        candidate.star_count = 12;
        let verdicts =
            detect_typo_squatting(&candidate, &[reference()], &ThresholdConfig::default())
                .unwrap();
        let v = &verdicts[0];
        assert!(!v.flagged);
        let ratio = observed_f64(v, "popularity_ratio");
        assert!((ratio / 4.21833 - 1.0).abs() < 1e-4, "ratio {ratio}");
    }

    #[test]
    fn unrelated_readme_is_not_flagged() {
        let mut candidate = repo("evil/reqests");
        candidate.readme = "weekend gamejam entry: a platformer written in lua".into();
        candidate.star_count = 0;
        let verdicts =
            detect_typo_squatting(&candidate, &[reference()], &ThresholdConfig::default())
                .unwrap();
        let v = &verdicts[0];
        assert!(!v.flagged);
        assert!(observed_f64(v, "readme_similarity") < 0.60);
        // The failing clause is recorded alongside the passing ones.
        assert!(observed_f64(v, "popularity_ratio") >= 10.0);
    }

    #[test]
    fn separator_tricks_do_not_evade_the_name_gate() {
        let mut candidate = repo("evil/re-quests");
        candidate.readme = README.into();
        candidate.star_count = 0;
        let verdicts =
            detect_typo_squatting(&candidate, &[reference()], &ThresholdConfig::default())
                .unwrap();
        assert_eq!(verdicts.len(), 1);
        assert!(verdicts[0].flagged);
        assert_eq!(observed_f64(&verdicts[0], "name_similarity"), 1.0);
    }

    #[test]
    fn candidate_is_not_compared_to_itself() {
        let mut candidate = repo("octo/requests");
        candidate.readme = README.into();
        candidate.star_count = 50_000;
        let verdicts =
            detect_typo_squatting(&candidate, &[reference()], &ThresholdConfig::default())
                .unwrap();
        assert!(verdicts.is_empty());
    }

    #[test]
    fn empty_reference_list_is_rejected() {
        let candidate = repo("evil/reqests");
        let err =
            detect_typo_squatting(&candidate, &[], &ThresholdConfig::default()).unwrap_err();
        assert!(matches!(err, DetectorError::InvalidInput(_)));
    }

    #[test]
    fn each_passing_reference_gets_its_own_verdict() {
        let mut candidate = repo("evil/reqests");
        candidate.readme = README.into();
        candidate.star_count = 0;
        let second = PopularReference {
            full_name: "forge/requests".into(),
            readme: "completely different text about queues".into(),
            star_count: 2_000,
        };
        let verdicts = detect_typo_squatting(
            &candidate,
            &[reference(), second],
            &ThresholdConfig::default(),
        )
        .unwrap();
        assert_eq!(verdicts.len(), 2);
        assert!(verdicts[0].flagged);
        assert!(!verdicts[1].flagged); // readme clause fails for the second
    }
}
