use std::collections::BTreeMap;

use forgescan_model::{DetectionVerdict, DetectorKind, ThresholdConfig};

use crate::{
    detect_automatic_updates, detect_fake_stars, detect_fake_stats, detect_issue_spam,
    detect_keyword_stuffing, detect_reputation_farming, detect_spoofed_contributor,
    detect_typo_squatting, DetectorError, ScanBatch,
};

/// One detection strategy, runnable over a whole batch.
///
/// Implementations adapt the per-subject detection functions to a
/// [`ScanBatch`]: they decide which subjects apply (every repository, every
/// user, pairs of them) and pull shared context such as the scoring corpus or
/// the reference list from the batch. Strategies are stateless; all tuning
/// lives in the [`ThresholdConfig`] passed per run.
pub trait Detector: Send + Sync {
    /// Which behavior this strategy detects.
    fn kind(&self) -> DetectorKind;

    /// Stable kebab-case name used for runtime selection.
    fn name(&self) -> &'static str {
        self.kind().name()
    }

    /// Evaluates every applicable subject in the batch, in batch order.
    fn run(
        &self,
        batch: &ScanBatch,
        cfg: &ThresholdConfig,
    ) -> Result<Vec<DetectionVerdict>, DetectorError>;
}

/// Judges the stargazers of each repository for coordinated star inflation.
/// Only stargazers whose user snapshot is in the batch can be judged.
pub struct FakeStarsDetector;

impl Detector for FakeStarsDetector {
    fn kind(&self) -> DetectorKind {
        DetectorKind::FakeStars
    }

    fn run(
        &self,
        batch: &ScanBatch,
        cfg: &ThresholdConfig,
    ) -> Result<Vec<DetectionVerdict>, DetectorError> {
        let mut verdicts = Vec::new();
        for repo in batch.repos() {
            verdicts.extend(detect_fake_stars(repo, &batch.stargazers_of(repo), cfg)?);
        }
        Ok(verdicts)
    }
}

/// Flags commit histories dominated by bursts of tiny scripted commits.
pub struct AutomaticUpdatesDetector;

impl Detector for AutomaticUpdatesDetector {
    fn kind(&self) -> DetectorKind {
        DetectorKind::AutomaticUpdates
    }

    fn run(
        &self,
        batch: &ScanBatch,
        cfg: &ThresholdConfig,
    ) -> Result<Vec<DetectionVerdict>, DetectorError> {
        batch
            .repos()
            .iter()
            .map(|r| detect_automatic_updates(r, cfg))
            .collect()
    }
}

/// Flags topic lists padded with keywords unrelated to the README.
pub struct KeywordStuffingDetector;

impl Detector for KeywordStuffingDetector {
    fn kind(&self) -> DetectorKind {
        DetectorKind::KeywordStuffing
    }

    fn run(
        &self,
        batch: &ScanBatch,
        cfg: &ThresholdConfig,
    ) -> Result<Vec<DetectionVerdict>, DetectorError> {
        batch
            .repos()
            .iter()
            .map(|r| detect_keyword_stuffing(r, batch.corpus(), cfg))
            .collect()
    }
}

/// Flags repositories imitating a popular reference under a near-identical
/// name. With no references attached to the batch there is nothing to
/// compare against and the strategy yields no verdicts.
pub struct TypoSquattingDetector;

impl Detector for TypoSquattingDetector {
    fn kind(&self) -> DetectorKind {
        DetectorKind::TypoSquatting
    }

    fn run(
        &self,
        batch: &ScanBatch,
        cfg: &ThresholdConfig,
    ) -> Result<Vec<DetectionVerdict>, DetectorError> {
        if batch.references().is_empty() {
            return Ok(Vec::new());
        }
        let mut verdicts = Vec::new();
        for repo in batch.repos() {
            verdicts.extend(detect_typo_squatting(repo, batch.references(), cfg)?);
        }
        Ok(verdicts)
    }
}

/// Flags obscure repositories carrying a famous account in their commit
/// metadata. Suspects are the batch users attributed by at least one commit.
pub struct SpoofedContributorDetector;

impl Detector for SpoofedContributorDetector {
    fn kind(&self) -> DetectorKind {
        DetectorKind::SpoofedContributor
    }

    fn run(
        &self,
        batch: &ScanBatch,
        cfg: &ThresholdConfig,
    ) -> Result<Vec<DetectionVerdict>, DetectorError> {
        let mut verdicts = Vec::new();
        for repo in batch.repos() {
            for suspect in batch.suspects_of(repo) {
                verdicts.push(detect_spoofed_contributor(repo, suspect, cfg)?);
            }
        }
        Ok(verdicts)
    }
}

/// Scores every issue with the attached spam model; requires one.
pub struct IssueSpamDetector;

impl Detector for IssueSpamDetector {
    fn kind(&self) -> DetectorKind {
        DetectorKind::IssueSpam
    }

    fn run(
        &self,
        batch: &ScanBatch,
        _cfg: &ThresholdConfig,
    ) -> Result<Vec<DetectionVerdict>, DetectorError> {
        let model = batch.spam_model().ok_or_else(|| {
            DetectorError::MissingResource(
                "issue-spam needs a trained spam model attached to the batch".into(),
            )
        })?;
        let mut verdicts = Vec::new();
        for repo in batch.repos() {
            verdicts.extend(detect_issue_spam(repo, model)?);
        }
        Ok(verdicts)
    }
}

/// Flags accounts piling activity onto threads resolved long ago, using the
/// batch repositories as the thread index.
pub struct ReputationFarmingDetector;

impl Detector for ReputationFarmingDetector {
    fn kind(&self) -> DetectorKind {
        DetectorKind::ReputationFarming
    }

    fn run(
        &self,
        batch: &ScanBatch,
        cfg: &ThresholdConfig,
    ) -> Result<Vec<DetectionVerdict>, DetectorError> {
        batch
            .users()
            .iter()
            .map(|u| detect_reputation_farming(u, batch.repos(), cfg))
            .collect()
    }
}

/// Flags profiles rendering other accounts' statistics or claiming star
/// totals their repositories do not back.
pub struct FakeStatsDetector;

impl Detector for FakeStatsDetector {
    fn kind(&self) -> DetectorKind {
        DetectorKind::FakeStats
    }

    fn run(
        &self,
        batch: &ScanBatch,
        cfg: &ThresholdConfig,
    ) -> Result<Vec<DetectionVerdict>, DetectorError> {
        batch
            .users()
            .iter()
            .map(|u| detect_fake_stats(u, cfg))
            .collect()
    }
}

/// Name-indexed collection of detection strategies.
///
/// Detectors register under their kebab-case name and are looked up at
/// runtime, so callers can run any subset chosen via configuration or
/// command-line flags without compile-time knowledge of the set.
pub struct DetectorRegistry {
    by_name: BTreeMap<&'static str, Box<dyn Detector>>,
}

impl DetectorRegistry {
    /// An empty registry; useful for embedding custom strategies.
    pub fn new() -> Self {
        DetectorRegistry {
            by_name: BTreeMap::new(),
        }
    }

    /// Registry holding all eight built-in detectors.
    pub fn with_builtins() -> Self {
        let mut registry = DetectorRegistry::new();
        registry.register(Box::new(FakeStarsDetector));
        registry.register(Box::new(AutomaticUpdatesDetector));
        registry.register(Box::new(KeywordStuffingDetector));
        registry.register(Box::new(TypoSquattingDetector));
        registry.register(Box::new(SpoofedContributorDetector));
        registry.register(Box::new(IssueSpamDetector));
        registry.register(Box::new(ReputationFarmingDetector));
        registry.register(Box::new(FakeStatsDetector));
        registry
    }

    /// Adds a strategy under its own name, replacing any previous holder.
    pub fn register(&mut self, detector: Box<dyn Detector>) {
        self.by_name.insert(detector.name(), detector);
    }

    /// Looks a strategy up by name; underscores are accepted as separators.
    pub fn get(&self, name: &str) -> Option<&dyn Detector> {
        let normalized = name.replace('_', "-");
        self.by_name.get(normalized.as_str()).map(Box::as_ref)
    }

    /// Registered names in alphabetical order.
    pub fn names(&self) -> Vec<&'static str> {
        self.by_name.keys().copied().collect()
    }

    /// Registered strategies in the canonical behavior-table order (for
    /// custom strategies outside that table, registration order is not
    /// preserved; they follow alphabetically).
    pub fn all(&self) -> Vec<&dyn Detector> {
        let mut out: Vec<&dyn Detector> = DetectorKind::ALL
            .iter()
            .filter_map(|k| self.get(k.name()))
            .collect();
        for (name, det) in &self.by_name {
            if !DetectorKind::ALL.iter().any(|k| k.name() == *name) {
                out.push(det.as_ref());
            }
        }
        out
    }

    /// Resolves a list of names, failing on the first unknown one.
    pub fn select(&self, names: &[String]) -> Result<Vec<&dyn Detector>, DetectorError> {
        names
            .iter()
            .map(|n| {
                self.get(n)
                    .ok_or_else(|| DetectorError::UnknownDetector(n.clone()))
            })
            .collect()
    }
}

impl Default for DetectorRegistry {
    fn default() -> Self {
        DetectorRegistry::with_builtins()
    }
}

/// Runs the given strategies over the batch in order and concatenates their
/// verdicts. Output order is fully determined by the strategy order and the
/// batch order, never by map iteration.
pub fn run_scan(
    batch: &ScanBatch,
    cfg: &ThresholdConfig,
    detectors: &[&dyn Detector],
) -> Result<Vec<DetectionVerdict>, DetectorError> {
    let mut verdicts = Vec::new();
    for detector in detectors {
        verdicts.extend(detector.run(batch, cfg)?);
    }
    Ok(verdicts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{commit, repo, star, user, T0};
    use forgescan_model::Snapshot;
    use forgescan_textkit::SpamModelFile;

    #[test]
    fn builtin_registry_knows_all_eight() {
        let registry = DetectorRegistry::with_builtins();
        assert_eq!(
            registry.names(),
            vec![
                "automatic-updates",
                "fake-stars",
                "fake-stats",
                "issue-spam",
                "keyword-stuffing",
                "reputation-farming",
                "spoofed-contributor",
                "typo-squatting",
            ]
        );
        assert_eq!(registry.all().len(), 8);
        // Canonical order puts fake-stars first.
        assert_eq!(registry.all()[0].kind(), DetectorKind::FakeStars);
    }

    #[test]
    fn lookup_accepts_both_separators() {
        let registry = DetectorRegistry::with_builtins();
        assert!(registry.get("fake-stars").is_some());
        assert!(registry.get("fake_stars").is_some());
        assert!(registry.get("star-faker").is_none());
    }

    #[test]
    fn selection_reports_unknown_names() {
        let registry = DetectorRegistry::with_builtins();
        let Err(err) = registry.select(&["fake-stars".into(), "bogus".into()]) else {
            panic!("selection should fail");
        };
        assert!(matches!(err, DetectorError::UnknownDetector(n) if n == "bogus"));
    }

    #[test]
    fn issue_spam_without_model_is_a_missing_resource() {
        let batch = ScanBatch::new(vec![Snapshot::from(repo("octo/app"))]).unwrap();
        let err = IssueSpamDetector
            .run(&batch, &ThresholdConfig::default())
            .unwrap_err();
        assert!(matches!(err, DetectorError::MissingResource(_)));
    }

    #[test]
    fn typo_squatting_without_references_yields_nothing() {
        let batch = ScanBatch::new(vec![Snapshot::from(repo("octo/app"))]).unwrap();
        let verdicts = TypoSquattingDetector
            .run(&batch, &ThresholdConfig::default())
            .unwrap();
        assert!(verdicts.is_empty());
    }

    /// End-to-end: a batch holding one suspicious repository and its
    /// throwaway stargazer, scanned by every builtin.
    #[test]
    fn full_scan_over_a_small_batch() {
        const DAY: i64 = 86_400;
        let mut r = repo("octo/shiny");
        r.readme = "a small tool that prints colorful terminal banners".into();
        r.star_events = vec![star("bot-a", T0 - 40 * DAY)];
        r.commits = vec![commit(1, T0 - 50 * DAY, "octo", 120, 4)];
        let mut bot = user("bot-a");
        bot.starred_repos = vec!["octo/shiny".into()];

        let batch = ScanBatch::new(vec![Snapshot::from(r), Snapshot::from(bot)])
            .unwrap()
            .with_spam_model(SpamModelFile::train_default(42).unwrap());
        let registry = DetectorRegistry::with_builtins();
        let verdicts = run_scan(&batch, &ThresholdConfig::default(), &registry.all()).unwrap();

        // fake-stars: bot verdict + repo summary; automatic-updates,
        // keyword-stuffing: one repo verdict each; typo-squatting: none (no
        // references); spoofed-contributor: none (no attributed batch user);
        // issue-spam: none (no issues); reputation-farming, fake-stats: one
        // user verdict each.
        assert_eq!(verdicts.len(), 6);
        let flagged: Vec<_> = verdicts.iter().filter(|v| v.flagged).collect();
        assert_eq!(flagged.len(), 1);
        assert_eq!(flagged[0].detector, DetectorKind::FakeStars);
        assert_eq!(flagged[0].subject, "bot-a");
    }
}
