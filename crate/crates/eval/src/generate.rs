use std::path::{Path, PathBuf};

use forgescan_detectors::PopularReference;
use forgescan_model::{
    repo_popularity, user_popularity, ActivityEvent, ActivityKind, CommitRecord, DetectorKind,
    IssueRecord, IssueState, OwnedRepo, PullRequestRecord, PullState, RepoSnapshot, Snapshot,
    StarEvent, ThresholdConfig, Timestamp, UserSnapshot, REPO_STAR_SCALE_CAP,
};
use forgescan_textkit::{extract_commands, extract_links, name_similarity, readme_similarity, SpamModelFile};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::corpus::{
    decide, CorpusContext, AUX_DIR, MANIFEST_FILE, NEAR_MISS_FILE, REFERENCES_FILE,
    SNAPSHOT_DIR, SPAM_MODEL_FILE,
};
use crate::{manifest_to_string, EvalError, LabeledInstance};

/// Anchor for every synthetic timestamp; histories extend backwards from it.
pub const BASE_TIME: i64 = 1_750_000_000;

const HOUR: i64 = 3_600;
const DAY: i64 = 86_400;

/// Name of the pseudo-knob that retunes the spam classifier's decision
/// threshold. It lives outside [`ThresholdConfig`], so near-miss records use
/// this marker instead of a config field name.
pub const CLASSIFIER_THRESHOLD_FIELD: &str = "classifier_threshold";

/// How many positive and negative instances to synthesize per subcategory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusPlan {
    counts: Vec<(DetectorKind, (usize, usize))>,
}

impl CorpusPlan {
    /// The default shape: 392 instances split into 310 repository and 82
    /// user-account subjects, with positives and negatives balanced 196/196.
    pub fn balanced_default() -> Self {
        CorpusPlan {
            counts: vec![
                (DetectorKind::FakeStars, (26, 26)),
                (DetectorKind::AutomaticUpdates, (26, 26)),
                (DetectorKind::KeywordStuffing, (26, 26)),
                (DetectorKind::TypoSquatting, (26, 26)),
                (DetectorKind::SpoofedContributor, (25, 26)),
                (DetectorKind::IssueSpam, (25, 26)),
                (DetectorKind::ReputationFarming, (21, 20)),
                (DetectorKind::FakeStats, (21, 20)),
            ],
        }
    }

    /// The same number of positives and negatives for every subcategory.
    pub fn uniform(positives: usize, negatives: usize) -> Self {
        CorpusPlan {
            counts: DetectorKind::ALL
                .iter()
                .map(|kind| (*kind, (positives, negatives)))
                .collect(),
        }
    }

    pub fn counts(&self) -> &[(DetectorKind, (usize, usize))] {
        &self.counts
    }

    pub fn total_instances(&self) -> usize {
        self.counts.iter().map(|(_, (p, n))| p + n).sum()
    }

    pub fn validate(&self) -> Result<(), EvalError> {
        for (kind, (positives, negatives)) in &self.counts {
            if *positives == 0 || *negatives == 0 {
                return Err(EvalError::InvalidInput(format!(
                    "{kind} needs at least one positive and one negative (got {positives}/{negatives})"
                )));
            }
        }
        Ok(())
    }
}

/// A single threshold to move when re-judging a near-miss instance. `field`
/// names a [`ThresholdConfig`] field, or [`CLASSIFIER_THRESHOLD_FIELD`] for
/// the spam classifier's decision threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Knob {
    pub field: String,
    pub value: Value,
}

/// One designated near-miss negative: which conjunct it fails and, when that
/// conjunct is threshold-controlled, the knob setting that flips it to
/// flagged. Structural conjuncts (an issue with no payload, a widget that
/// matches) have no knob.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NearMissRecord {
    pub instance_id: String,
    pub subcategory: DetectorKind,
    pub failing_conjunct: String,
    pub knob: Option<Knob>,
}

/// Reads the near-miss sidecar of a corpus.
pub fn read_near_misses(root: &Path) -> Result<Vec<NearMissRecord>, EvalError> {
    let text = std::fs::read_to_string(root.join(NEAR_MISS_FILE))?;
    text.lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| {
            serde_json::from_str(line)
                .map_err(|e| EvalError::InvalidInput(format!("near-miss record: {e}")))
        })
        .collect()
}

/// The result of applying a [`Knob`]: an adjusted config, plus a classifier
/// threshold override when the knob targets the spam model.
#[derive(Debug, Clone)]
pub struct KnobbedSettings {
    pub cfg: ThresholdConfig,
    pub classifier_threshold: Option<f64>,
}

/// Moves a single threshold past the observed value a near-miss recorded.
pub fn apply_knob(cfg: &ThresholdConfig, knob: &Knob) -> Result<KnobbedSettings, EvalError> {
    if knob.field == CLASSIFIER_THRESHOLD_FIELD {
        let threshold = knob.value.as_f64().ok_or_else(|| {
            EvalError::InvalidInput(format!(
                "classifier threshold knob needs a number, got {}",
                knob.value
            ))
        })?;
        return Ok(KnobbedSettings {
            cfg: cfg.clone(),
            classifier_threshold: Some(threshold),
        });
    }

    let mut tree = serde_json::to_value(cfg)?;
    let map = tree.as_object_mut().expect("config serializes to an object");
    if !map.contains_key(&knob.field) {
        return Err(EvalError::InvalidInput(format!(
            "unknown threshold field {:?}",
            knob.field
        )));
    }
    map.insert(knob.field.clone(), knob.value.clone());
    let cfg: ThresholdConfig = serde_json::from_value(tree)
        .map_err(|e| EvalError::InvalidInput(format!("knob {:?}: {e}", knob.field)))?;
    Ok(KnobbedSettings {
        cfg,
        classifier_threshold: None,
    })
}

/// What [`generate_fixture_corpus`] produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub root: PathBuf,
    pub instances: usize,
    pub positives: usize,
    pub negatives: usize,
    pub repo_instances: usize,
    pub user_instances: usize,
    pub near_misses: usize,
}

struct InstanceParts {
    subject: Snapshot,
    aux: Vec<(String, Snapshot)>,
    near_miss: Option<(String, Option<Knob>)>,
}

impl InstanceParts {
    fn plain(subject: Snapshot) -> Self {
        InstanceParts {
            subject,
            aux: Vec::new(),
            near_miss: None,
        }
    }
}

/// Synthesizes a labeled corpus under `out_dir`: per-instance snapshots,
/// companion snapshots, the reference list, a spam model trained from the
/// bundled corpus with `seed`, the manifest, and a near-miss sidecar.
///
/// Every byte is a function of `seed`, `plan`, and `cfg`, so regeneration
/// with the same arguments reproduces the directory exactly. Before
/// returning, the generator re-judges the whole corpus through the real
/// detectors: every instance must decide equal to its label, and every
/// knobbed near-miss must flip to flagged under its knob — a corpus that
/// fails either check is reported as an error, never written silently.
pub fn generate_fixture_corpus(
    seed: u64,
    plan: &CorpusPlan,
    cfg: &ThresholdConfig,
    out_dir: &Path,
) -> Result<CorpusSummary, EvalError> {
    plan.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spam_model = SpamModelFile::train_default(seed)?;
    let references = reference_repos();

    let mut instances = Vec::new();
    let mut near_misses = Vec::new();
    let mut parts_by_id: Vec<(String, InstanceParts)> = Vec::new();

    for (kind, (positives, negatives)) in plan.counts() {
        for i in 0..*positives {
            let id = format!("{}-pos-{i:03}", kind.name());
            let parts = build_positive(*kind, i, &mut rng, &spam_model, cfg)?;
            push_instance(&mut instances, &mut near_misses, &mut parts_by_id, *kind, id, true, parts);
        }
        for i in 0..*negatives {
            let id = format!("{}-neg-{i:03}", kind.name());
            let parts = build_negative(*kind, i, &mut rng, &spam_model, cfg)?;
            push_instance(&mut instances, &mut near_misses, &mut parts_by_id, *kind, id, false, parts);
        }
    }

    write_corpus(out_dir, &instances, &near_misses, &references, &spam_model, &parts_by_id)?;

    // Closed loop: the corpus must reproduce its own labels through the real
    // detectors, reading back exactly what evaluation will read.
    let context = CorpusContext {
        references,
        spam_model: Some(spam_model),
    };
    for instance in &instances {
        let decision = decide(out_dir, instance, cfg, &context, None)?;
        if decision != instance.label {
            return Err(EvalError::Instance {
                instance_id: instance.instance_id.clone(),
                detail: format!(
                    "generated with label {} but the {} detector decided {}",
                    instance.label, instance.subcategory, decision
                ),
            });
        }
    }
    for record in &near_misses {
        let Some(knob) = &record.knob else { continue };
        let settings = apply_knob(cfg, knob)?;
        let instance = instances
            .iter()
            .find(|inst| inst.instance_id == record.instance_id)
            .expect("near-miss records reference manifest instances");
        let flipped = decide(
            out_dir,
            instance,
            &settings.cfg,
            &context,
            settings.classifier_threshold,
        )?;
        if !flipped {
            return Err(EvalError::Instance {
                instance_id: record.instance_id.clone(),
                detail: format!(
                    "near-miss did not flip to flagged with {} = {}",
                    knob.field, knob.value
                ),
            });
        }
    }

    let positives = instances.iter().filter(|i| i.label).count();
    let repo_instances = instances
        .iter()
        .filter(|i| i.subject_kind == forgescan_model::SubjectKind::Repo)
        .count();
    Ok(CorpusSummary {
        root: out_dir.to_path_buf(),
        instances: instances.len(),
        positives,
        negatives: instances.len() - positives,
        repo_instances,
        user_instances: instances.len() - repo_instances,
        near_misses: near_misses.len(),
    })
}

fn push_instance(
    instances: &mut Vec<LabeledInstance>,
    near_misses: &mut Vec<NearMissRecord>,
    parts_by_id: &mut Vec<(String, InstanceParts)>,
    kind: DetectorKind,
    id: String,
    label: bool,
    parts: InstanceParts,
) {
    instances.push(LabeledInstance {
        instance_id: id.clone(),
        subcategory: kind,
        subject_kind: kind.subject_kind(),
        snapshot_path: format!("{SNAPSHOT_DIR}/{id}.json"),
        label,
    });
    if let Some((failing_conjunct, knob)) = &parts.near_miss {
        near_misses.push(NearMissRecord {
            instance_id: id.clone(),
            subcategory: kind,
            failing_conjunct: failing_conjunct.clone(),
            knob: knob.clone(),
        });
    }
    parts_by_id.push((id, parts));
}

fn write_corpus(
    out_dir: &Path,
    instances: &[LabeledInstance],
    near_misses: &[NearMissRecord],
    references: &[PopularReference],
    spam_model: &SpamModelFile,
    parts_by_id: &[(String, InstanceParts)],
) -> Result<(), EvalError> {
    let snapshot_dir = out_dir.join(SNAPSHOT_DIR);
    std::fs::create_dir_all(&snapshot_dir)?;

    for (id, parts) in parts_by_id {
        let mut text = parts.subject.to_json_string()?;
        text.push('\n');
        std::fs::write(snapshot_dir.join(format!("{id}.json")), text)?;
        if !parts.aux.is_empty() {
            let aux_dir = out_dir.join(AUX_DIR).join(id);
            std::fs::create_dir_all(&aux_dir)?;
            for (stem, snapshot) in &parts.aux {
                let mut text = snapshot.to_json_string()?;
                text.push('\n');
                std::fs::write(aux_dir.join(format!("{stem}.json")), text)?;
            }
        }
    }

    let mut references_text = serde_json::to_string_pretty(references)?;
    references_text.push('\n');
    std::fs::write(out_dir.join(REFERENCES_FILE), references_text)?;

    let mut model_text = spam_model.to_json_string()?;
    model_text.push('\n');
    std::fs::write(out_dir.join(SPAM_MODEL_FILE), model_text)?;

    std::fs::write(out_dir.join(MANIFEST_FILE), manifest_to_string(instances)?)?;

    let mut near_miss_text = String::new();
    for record in near_misses {
        near_miss_text.push_str(&serde_json::to_string(record)?);
        near_miss_text.push('\n');
    }
    std::fs::write(out_dir.join(NEAR_MISS_FILE), near_miss_text)?;
    Ok(())
}

fn build_positive(
    kind: DetectorKind,
    i: usize,
    rng: &mut ChaCha8Rng,
    spam_model: &SpamModelFile,
    cfg: &ThresholdConfig,
) -> Result<InstanceParts, EvalError> {
    Ok(match kind {
        DetectorKind::FakeStars => fake_stars_positive(i, rng, cfg),
        DetectorKind::AutomaticUpdates => auto_updates_positive(i, rng, cfg),
        DetectorKind::KeywordStuffing => keyword_stuffing_positive(i, cfg),
        DetectorKind::TypoSquatting => typo_squat_positive(i),
        DetectorKind::SpoofedContributor => spoofed_positive(i, cfg),
        DetectorKind::IssueSpam => issue_spam_positive(i, spam_model)?,
        DetectorKind::ReputationFarming => farming_positive(i, cfg),
        DetectorKind::FakeStats => fake_stats_positive(i, rng, cfg),
    })
}

fn build_negative(
    kind: DetectorKind,
    i: usize,
    rng: &mut ChaCha8Rng,
    spam_model: &SpamModelFile,
    cfg: &ThresholdConfig,
) -> Result<InstanceParts, EvalError> {
    Ok(match kind {
        DetectorKind::FakeStars => fake_stars_negative(i, rng, cfg),
        DetectorKind::AutomaticUpdates => auto_updates_negative(i, rng, cfg),
        DetectorKind::KeywordStuffing => keyword_stuffing_negative(i, cfg),
        DetectorKind::TypoSquatting => typo_squat_negative(i, cfg),
        DetectorKind::SpoofedContributor => spoofed_negative(i, rng, cfg),
        DetectorKind::IssueSpam => issue_spam_negative(i, spam_model)?,
        DetectorKind::ReputationFarming => farming_negative(i, cfg),
        DetectorKind::FakeStats => fake_stats_negative(i, rng, cfg),
    })
}

// ---------------------------------------------------------------------------
// Shared text assets
// ---------------------------------------------------------------------------

struct Theme {
    name: &'static str,
    readme: &'static str,
    keywords: [&'static str; 4],
}

const THEMES: [Theme; 8] = [
    Theme {
        name: "lumacache",
        readme: "An in-memory cache with per-entry ttl and pluggable eviction. Entries \
                 expire lazily on read or eagerly through a background sweeper thread. \
                 The eviction policy is configurable between least recently used and \
                 random sampling, and the whole cache can be bounded by entry count or \
                 by approximate memory footprint.",
        keywords: ["cache", "ttl", "eviction", "memory"],
    },
    Theme {
        name: "httpwing",
        readme: "A minimal http client for services that need retries and connection \
                 pooling without a large dependency tree. Requests compose from a \
                 builder, responses stream incrementally, and the client transparently \
                 reuses pooled connections. Timeouts, redirect limits and retries are \
                 all configured per request.",
        keywords: ["http", "client", "retries", "pooling"],
    },
    Theme {
        name: "jsonsprout",
        readme: "A streaming json parser with schema validation. Documents parse \
                 incrementally so arbitrarily large inputs never sit in memory whole, \
                 and every value is checked against a declared schema during \
                 serialization and deserialization. Errors carry the exact path and \
                 byte offset of the offending token.",
        keywords: ["json", "parser", "schema", "serialization"],
    },
    Theme {
        name: "termflow",
        readme: "A task runner for the terminal. Tasks declare their inputs and \
                 outputs in a small manifest, the runner computes a dependency graph \
                 and executes stale tasks in parallel. Shell snippets run in a clean \
                 environment and the cli prints a live tree of running tasks.",
        keywords: ["tasks", "runner", "cli", "graph"],
    },
    Theme {
        name: "pixelforge",
        readme: "A tiny game engine focused on two dimensional rendering. Sprites \
                 batch into a single draw call, the physics step is fixed and \
                 deterministic, and audio mixing runs on a dedicated thread. Scenes \
                 are plain data and hot reload during development.",
        keywords: ["rendering", "sprites", "physics", "audio"],
    },
    Theme {
        name: "logletter",
        readme: "Structured logging with cheap spans and pluggable sinks. Events \
                 carry typed fields instead of formatted strings, rotation is handled \
                 by the file sink itself, and a sampling layer keeps hot paths from \
                 flooding storage. Works with any writer that implements the sink \
                 trait.",
        keywords: ["logging", "structured", "rotation", "sinks"],
    },
    Theme {
        name: "meshgrid",
        readme: "Dense matrix and vector kernels for small scientific workloads. The \
                 solver suite covers lu and qr factorizations, iterative methods for \
                 sparse systems, and numeric broadcasting over n dimensional arrays. \
                 Everything is generic over element type and panics never escape the \
                 kernels.",
        keywords: ["matrix", "solver", "numeric", "arrays"],
    },
    Theme {
        name: "portkeep",
        readme: "Deployment tooling for container fleets. Describes a release as an \
                 immutable bundle, pushes it to a registry, rolls it out gradually and \
                 keeps the previous release warm for instant rollback. Health checks \
                 gate every stage and the audit log records each decision.",
        keywords: ["deployment", "registry", "rollback", "containers"],
    },
];

fn theme(i: usize) -> &'static Theme {
    &THEMES[i % THEMES.len()]
}

const SPAM_KEYWORD_POOL: [&str; 15] = [
    "casino", "jackpot", "forex", "lottery", "betting", "airdrop", "giveaway", "sweepstakes",
    "cashback", "moneyback", "freecoins", "hotsingles", "viprewards", "winbig", "megaprize",
];

/// The j-th off-topic keyword for an instance. Stays unique for any count by
/// suffixing a generation once the pool wraps.
fn spam_keyword(instance: usize, j: usize) -> String {
    let idx = (instance + j) % SPAM_KEYWORD_POOL.len();
    let round = j / SPAM_KEYWORD_POOL.len();
    if round == 0 {
        SPAM_KEYWORD_POOL[idx].to_string()
    } else {
        format!("{}{round}", SPAM_KEYWORD_POOL[idx])
    }
}

// ---------------------------------------------------------------------------
// Common snapshot scaffolding
// ---------------------------------------------------------------------------

fn base_repo(full_name: &str, theme: &Theme) -> RepoSnapshot {
    RepoSnapshot {
        full_name: full_name.into(),
        description: format!("{} in one small crate", theme.keywords[0]),
        readme: theme.readme.into(),
        keywords: theme.keywords.iter().map(|k| k.to_string()).collect(),
        snapshot_at: Timestamp::new(BASE_TIME),
        ..RepoSnapshot::default()
    }
}

fn base_user(login: &str) -> UserSnapshot {
    UserSnapshot {
        login: login.into(),
        snapshot_at: Timestamp::new(BASE_TIME),
        ..UserSnapshot::default()
    }
}

fn sha(k: usize) -> String {
    format!("{:040x}", k + 1)
}

fn commit(k: usize, ts: i64, author: &str, added: u64, deleted: u64) -> CommitRecord {
    CommitRecord {
        sha: sha(k),
        author_login: author.into(),
        timestamp: Timestamp::new(ts),
        lines_added: added,
        lines_deleted: deleted,
        touched_paths: vec!["src/lib.rs".into()],
        ..CommitRecord::default()
    }
}

fn activity(kind: ActivityKind, ts: i64, target: &str) -> ActivityEvent {
    ActivityEvent {
        kind,
        timestamp: Timestamp::new(ts),
        target: target.into(),
    }
}

// ---------------------------------------------------------------------------
// Fake stars
// ---------------------------------------------------------------------------

/// Star time early enough that the post-star observation window closes well
/// before the snapshot, keeping every stargazer judgeable.
fn star_time(cfg: &ThresholdConfig) -> i64 {
    BASE_TIME - cfg.window_fake_stars - 10 * DAY
}

fn repo_with_stargazers(i: usize, logins: &[String], starred_at: i64) -> RepoSnapshot {
    let theme = theme(i);
    let mut repo = base_repo(&format!("glowrise-{i:02}/{}", theme.name), theme);
    repo.star_events = logins
        .iter()
        .map(|login| StarEvent {
            login: login.clone(),
            starred_at: Timestamp::new(starred_at),
        })
        .collect();
    repo.star_count = logins.len() as u64;
    repo
}

/// A dormant single-purpose account: almost nothing starred, almost nothing
/// done after the star.
fn bot_account(login: &str, repo_full_name: &str, starred_at: i64, events_in_window: usize, cfg: &ThresholdConfig) -> UserSnapshot {
    let mut user = base_user(login);
    user.starred_repos = vec![repo_full_name.to_string()];
    user.activity = (0..events_in_window)
        .map(|k| {
            let offset = cfg.window_fake_stars * (k as i64 + 1) / (events_in_window as i64 + 1);
            activity(ActivityKind::Fork, starred_at + offset.max(1), repo_full_name)
        })
        .collect();
    user
}

fn fake_stars_positive(i: usize, rng: &mut ChaCha8Rng, cfg: &ThresholdConfig) -> InstanceParts {
    let starred_at = star_time(cfg);
    let bots: Vec<String> = (0..2 + (i % 2))
        .map(|k| format!("starbot-{i:02}-{k}"))
        .collect();
    let repo = repo_with_stargazers(i, &bots, starred_at);
    let quiet_events = rng.gen_range(0..=cfg.epsilon.min(1)) as usize;
    let aux = bots
        .iter()
        .map(|login| {
            let snapshot = bot_account(login, &repo.full_name, starred_at, quiet_events, cfg);
            (login.clone(), Snapshot::User(snapshot))
        })
        .collect();
    InstanceParts {
        subject: Snapshot::Repo(repo),
        aux,
        near_miss: None,
    }
}

fn fake_stars_negative(i: usize, rng: &mut ChaCha8Rng, cfg: &ThresholdConfig) -> InstanceParts {
    let starred_at = star_time(cfg);
    match i {
        // Near miss: stars a few repositories too many, otherwise dormant.
        0 => {
            let login = format!("collector-{i:02}");
            let repo = repo_with_stargazers(i, &[login.clone()], starred_at);
            let mut user = bot_account(&login, &repo.full_name, starred_at, 0, cfg);
            user.starred_repos = (0..cfg.x1 + 1)
                .map(|k| format!("elsewhere/repo-{k}"))
                .collect();
            InstanceParts {
                subject: Snapshot::Repo(repo),
                aux: vec![(login, Snapshot::User(user))],
                near_miss: Some((
                    "starred_repo_count".into(),
                    Some(Knob {
                        field: "x1".into(),
                        value: json!(cfg.x1 + 1),
                    }),
                )),
            }
        }
        // Near miss: barely too much activity after the star.
        1 => {
            let login = format!("lurker-{i:02}");
            let repo = repo_with_stargazers(i, &[login.clone()], starred_at);
            let user = bot_account(&login, &repo.full_name, starred_at, cfg.epsilon as usize + 1, cfg);
            InstanceParts {
                subject: Snapshot::Repo(repo),
                aux: vec![(login, Snapshot::User(user))],
                near_miss: Some((
                    "activity_in_window".into(),
                    Some(Knob {
                        field: "epsilon".into(),
                        value: json!(cfg.epsilon + 1),
                    }),
                )),
            }
        }
        // Organic stars from accounts we have no snapshot of: nothing to judge.
        _ if i % 3 == 2 => {
            let logins: Vec<String> = (0..4).map(|k| format!("passerby-{i:02}-{k}")).collect();
            InstanceParts::plain(Snapshot::Repo(repo_with_stargazers(i, &logins, starred_at)))
        }
        // Engaged humans: broad starred lists and steady activity.
        _ => {
            let logins: Vec<String> = (0..2).map(|k| format!("regular-{i:02}-{k}")).collect();
            let repo = repo_with_stargazers(i, &logins, starred_at);
            let aux = logins
                .iter()
                .map(|login| {
                    let mut user = bot_account(
                        login,
                        &repo.full_name,
                        starred_at,
                        cfg.epsilon as usize + 3 + rng.gen_range(0..3),
                        cfg,
                    );
                    user.starred_repos = (0..cfg.x1 + 4)
                        .map(|k| format!("elsewhere/repo-{k}"))
                        .collect();
                    user.follower_count = 10 + i as u64;
                    (login.clone(), Snapshot::User(user))
                })
                .collect();
            InstanceParts {
                subject: Snapshot::Repo(repo),
                aux,
                near_miss: None,
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Automatic updates
// ---------------------------------------------------------------------------

fn auto_repo(i: usize, commits: Vec<CommitRecord>) -> RepoSnapshot {
    let theme = theme(i);
    let mut repo = base_repo(&format!("feedmill-{i:02}/{}", theme.name), theme);
    repo.commits = commits;
    repo
}

/// Commits spaced so that `n` of them always fit inside the detection window.
fn burst_spacing(n: usize, cfg: &ThresholdConfig) -> i64 {
    (cfg.window_auto_updates / (n as i64 + 1)).clamp(1, HOUR)
}

fn auto_updates_positive(i: usize, rng: &mut ChaCha8Rng, cfg: &ThresholdConfig) -> InstanceParts {
    let n = cfg.x2 as usize + 2 + (i % 8);
    let spacing = burst_spacing(n, cfg);
    let start = BASE_TIME - 30 * DAY;
    let commits = (0..n)
        .map(|k| {
            let added = 1 + (k as u64 % 2).min(cfg.y.floor().max(1.0) as u64 - 1);
            commit(k, start + k as i64 * spacing, "update-bot", added, 0)
        })
        .collect();
    let mut repo = auto_repo(i, commits);
    repo.star_count = rng.gen_range(0..30);
    InstanceParts::plain(Snapshot::Repo(repo))
}

fn auto_updates_negative(i: usize, rng: &mut ChaCha8Rng, cfg: &ThresholdConfig) -> InstanceParts {
    let start = BASE_TIME - 120 * DAY;
    match i {
        // Near miss: one commit short of a burst, every commit tiny.
        0 => {
            let n = cfg.x2 as usize - 1;
            let spacing = burst_spacing(n.max(1), cfg);
            let commits = (0..n)
                .map(|k| commit(k, start + k as i64 * spacing, "update-bot", 1, 0))
                .collect();
            InstanceParts {
                subject: Snapshot::Repo(auto_repo(i, commits)),
                aux: Vec::new(),
                near_miss: Some((
                    "window_commit_count".into(),
                    Some(Knob {
                        field: "x2".into(),
                        value: json!(n),
                    }),
                )),
            }
        }
        // Near miss: a real burst, but every commit touches one line too many.
        1 => {
            let n = cfg.x2 as usize + 6;
            let spacing = burst_spacing(n, cfg);
            let touched = cfg.y.ceil() as u64 + 1;
            let commits = (0..n)
                .map(|k| commit(k, start + k as i64 * spacing, "update-bot", touched - 1, 1))
                .collect();
            InstanceParts {
                subject: Snapshot::Repo(auto_repo(i, commits)),
                aux: Vec::new(),
                near_miss: Some((
                    "window_mean_lines_touched".into(),
                    Some(Knob {
                        field: "y".into(),
                        value: json!(touched as f64),
                    }),
                )),
            }
        }
        // Ordinary development: sparse commits with substantial diffs.
        _ => {
            let n = 12 + (i % 6);
            let commits = (0..n)
                .map(|k| {
                    commit(
                        k,
                        start + k as i64 * 2 * DAY + rng.gen_range(0..6) * HOUR,
                        if k % 3 == 0 { "casey-dev" } else { "river-dev" },
                        rng.gen_range(20..220),
                        rng.gen_range(3..40),
                    )
                })
                .collect();
            InstanceParts::plain(Snapshot::Repo(auto_repo(i, commits)))
        }
    }
}

// ---------------------------------------------------------------------------
// Keyword stuffing
// ---------------------------------------------------------------------------

fn keyword_repo(i: usize, keywords: Vec<String>) -> RepoSnapshot {
    let theme = theme(i);
    let mut repo = base_repo(&format!("tagvine-{i:02}/{}", theme.name), theme);
    repo.keywords = keywords;
    repo.star_count = (i as u64 * 7) % 40;
    repo
}

fn keyword_stuffing_positive(i: usize, cfg: &ThresholdConfig) -> InstanceParts {
    let theme = theme(i);
    let mut keywords: Vec<String> = (0..cfg.x3 as usize).map(|j| spam_keyword(i, j)).collect();
    keywords.push(theme.keywords[0].into());
    keywords.push(theme.keywords[1].into());
    InstanceParts::plain(Snapshot::Repo(keyword_repo(i, keywords)))
}

fn keyword_stuffing_negative(i: usize, cfg: &ThresholdConfig) -> InstanceParts {
    let theme = theme(i);
    match i {
        // Near miss: one off-topic keyword short of the stuffing bar.
        0 => {
            let off_topic = cfg.x3 as usize - 1;
            let mut keywords: Vec<String> = (0..off_topic).map(|j| spam_keyword(i, j)).collect();
            keywords.extend(theme.keywords.iter().take(3).map(|k| k.to_string()));
            InstanceParts {
                subject: Snapshot::Repo(keyword_repo(i, keywords)),
                aux: Vec::new(),
                near_miss: Some((
                    "off_topic_keyword_count".into(),
                    Some(Knob {
                        field: "x3".into(),
                        value: json!(off_topic),
                    }),
                )),
            }
        }
        // A couple of stray topics is ordinary, not stuffing.
        _ if i % 3 == 1 && cfg.x3 > 2 => {
            let mut keywords: Vec<String> = (0..2).map(|j| spam_keyword(i, j)).collect();
            keywords.extend(theme.keywords.iter().take(3).map(|k| k.to_string()));
            InstanceParts::plain(Snapshot::Repo(keyword_repo(i, keywords)))
        }
        // Fully on-topic labeling.
        _ => {
            let keywords = theme.keywords.iter().map(|k| k.to_string()).collect();
            InstanceParts::plain(Snapshot::Repo(keyword_repo(i, keywords)))
        }
    }
}

// ---------------------------------------------------------------------------
// Typo squatting
// ---------------------------------------------------------------------------

const EXPRESSIO_README: &str =
    "Expressio is a minimal web framework for building http services. Route handlers \
     compose through middleware, requests parse into typed structures, and responses \
     stream asynchronously. Ships with a router, template rendering, session support \
     and websocket upgrades. Designed for clarity first and benchmarked carefully \
     against the mainstream alternatives.";

const PANDORA_README: &str =
    "Pandora is a data analysis toolkit built around columnar frames. Load csv, \
     parquet or sql sources, filter and aggregate with a lazy query planner, and plot \
     results directly. Supports grouped windows, joins across frames, and vectorized \
     numeric kernels tuned for large datasets.";

/// The popular projects every generated corpus compares candidates against.
pub fn reference_repos() -> Vec<PopularReference> {
    vec![
        PopularReference {
            full_name: "webkit-tools/expressio".into(),
            readme: EXPRESSIO_README.into(),
            star_count: 50_000,
        },
        PopularReference {
            full_name: "dataforge/pandora".into(),
            readme: PANDORA_README.into(),
            star_count: 30_000,
        },
    ]
}

struct SquatTarget {
    reference: PopularReference,
    /// Single-edit name variants (similarity stays above the name gate).
    close_names: [&'static str; 4],
    /// Two-edit name variant that falls just under the name gate.
    gated_name: &'static str,
}

fn squat_target(i: usize) -> SquatTarget {
    let references = reference_repos();
    if i % 2 == 0 {
        SquatTarget {
            reference: references.into_iter().next().unwrap(),
            close_names: ["expresio", "expressia", "exppressio", "expressi"],
            gated_name: "expresia",
        }
    } else {
        SquatTarget {
            reference: references.into_iter().nth(1).unwrap(),
            close_names: ["pandoro", "panddora", "pamdora", "pandor"],
            gated_name: "pandorica",
        }
    }
}

fn squat_repo(i: usize, name: &str, readme: &str, star_count: u64) -> RepoSnapshot {
    RepoSnapshot {
        full_name: format!("velvetbyte-{i:02}/{name}"),
        description: "the project you were looking for".into(),
        readme: readme.into(),
        keywords: vec!["framework".into()],
        star_count,
        snapshot_at: Timestamp::new(BASE_TIME),
        ..RepoSnapshot::default()
    }
}

/// The exact popularity ratio the detector will compute for a candidate and
/// reference star count.
fn popularity_ratio(candidate_stars: u64, reference_stars: u64) -> f64 {
    let floor = 1.0 / REPO_STAR_SCALE_CAP as f64;
    let candidate = repo_popularity(candidate_stars).max(floor);
    let reference = repo_popularity(reference_stars).max(floor);
    candidate.max(reference) / candidate.min(reference)
}

fn typo_squat_positive(i: usize) -> InstanceParts {
    let target = squat_target(i);
    let name = target.close_names[(i / 2) % target.close_names.len()];
    let readme = format!("{name} · {}", target.reference.readme);
    InstanceParts::plain(Snapshot::Repo(squat_repo(i, name, &readme, 0)))
}

fn typo_squat_negative(i: usize, cfg: &ThresholdConfig) -> InstanceParts {
    let target = squat_target(i);
    match i {
        // Near miss: the name and obscurity fit, but the readme was rewritten
        // and only loosely echoes the original.
        0 | 1 => {
            let name = target.close_names[0];
            let readme = format!(
                "{name} is a small weekend experiment. It borrows a couple of ideas \
                 around middleware and a lazy planner but the code base is unrelated, \
                 undocumented and mostly a playground for the author."
            );
            let observed = readme_similarity(&readme, &target.reference.readme);
            InstanceParts {
                subject: Snapshot::Repo(squat_repo(i, name, &readme, 0)),
                aux: Vec::new(),
                near_miss: Some((
                    "readme_similarity".into(),
                    Some(Knob {
                        field: "theta_t2".into(),
                        value: json!(observed),
                    }),
                )),
            }
        }
        // Near miss: a faithful mirror that is popular in its own right, so
        // the popularity gap is nowhere near squatting territory.
        2 | 3 => {
            let name = target.close_names[1];
            let stars = 12_000;
            let readme = format!("{name} · {}", target.reference.readme);
            let observed = popularity_ratio(stars, target.reference.star_count);
            InstanceParts {
                subject: Snapshot::Repo(squat_repo(i, name, &readme, stars)),
                aux: Vec::new(),
                near_miss: Some((
                    "popularity_ratio".into(),
                    Some(Knob {
                        field: "phi_p1".into(),
                        value: json!(observed),
                    }),
                )),
            }
        }
        // Near miss: copied readme and zero stars, but the name is one edit
        // too far to clear the name gate.
        4 | 5 => {
            let name = target.gated_name;
            let readme = format!("{name} · {}", target.reference.readme);
            let observed = name_similarity(name, target.reference.name());
            debug_assert!(observed < cfg.theta_t1);
            InstanceParts {
                subject: Snapshot::Repo(squat_repo(i, name, &readme, 0)),
                aux: Vec::new(),
                near_miss: Some((
                    "name_similarity".into(),
                    Some(Knob {
                        field: "theta_t1".into(),
                        value: json!(observed),
                    }),
                )),
            }
        }
        // Unrelated projects that never clear the name gate.
        _ => {
            let themed = theme(i);
            let repo = base_repo(&format!("quietworks-{i:02}/{}", themed.name), themed);
            InstanceParts::plain(Snapshot::Repo(repo))
        }
    }
}

// ---------------------------------------------------------------------------
// Spoofed contributor
// ---------------------------------------------------------------------------

fn celebrity(i: usize, followers: u64) -> UserSnapshot {
    let mut user = base_user(&format!("olwen-marsh-{i:02}"));
    user.follower_count = followers;
    user.owned_repos = vec![OwnedRepo {
        full_name: format!("{}/keynote-demos", user.login),
        star_count: 900,
    }];
    user
}

/// A side project whose history is owner commits plus `attributed` commits
/// carrying the suspect's name.
fn spoofed_repo(
    i: usize,
    stars: u64,
    suspect: &str,
    attributed: usize,
    as_author: bool,
) -> RepoSnapshot {
    let theme = theme(i);
    let owner = format!("quietfork-{i:02}");
    let mut repo = base_repo(&format!("{owner}/{}", theme.name), theme);
    repo.star_count = stars;
    let start = BASE_TIME - 60 * DAY;
    let mut commits: Vec<CommitRecord> = (0..6)
        .map(|k| commit(k, start + k as i64 * 3 * DAY, &owner, 24 + k as u64, 4))
        .collect();
    for a in 0..attributed {
        let ts = start + 20 * DAY + a as i64 * DAY;
        let mut c = commit(100 + a, ts, &owner, 8, 1);
        if as_author {
            c.author_login = suspect.into();
        } else {
            c.co_authors = vec![suspect.into()];
        }
        commits.push(c);
    }
    commits.sort_by_key(|c| c.timestamp);
    repo.commits = commits;
    repo
}

fn spoofed_positive(i: usize, cfg: &ThresholdConfig) -> InstanceParts {
    let star = celebrity(i, 2_000 + 97 * i as u64);
    let attributed = 1 + (i % cfg.x4.max(1) as usize);
    let repo = spoofed_repo(i, 0, &star.login, attributed, i % 2 == 0);
    InstanceParts {
        subject: Snapshot::Repo(repo),
        aux: vec![(star.login.clone(), Snapshot::User(star))],
        near_miss: None,
    }
}

fn spoofed_negative(i: usize, rng: &mut ChaCha8Rng, cfg: &ThresholdConfig) -> InstanceParts {
    match i {
        // Near miss: one attributed commit too many to look like a token drop.
        0 => {
            let star = celebrity(i, 2_300);
            let attributed = cfg.x4 as usize + 1;
            let repo = spoofed_repo(i, 0, &star.login, attributed, false);
            InstanceParts {
                subject: Snapshot::Repo(repo),
                aux: vec![(star.login.clone(), Snapshot::User(star))],
                near_miss: Some((
                    "attributed_commit_count".into(),
                    Some(Knob {
                        field: "x4".into(),
                        value: json!(cfg.x4 + 1),
                    }),
                )),
            }
        }
        // Near miss: the repository itself is too visible to be a spoof host.
        1 => {
            let star = celebrity(i, 2_300);
            let stars = 100;
            let repo = spoofed_repo(i, stars, &star.login, 2.min(cfg.x4 as usize), false);
            let observed = repo_popularity(stars);
            InstanceParts {
                subject: Snapshot::Repo(repo),
                aux: vec![(star.login.clone(), Snapshot::User(star))],
                near_miss: Some((
                    "repo_popularity".into(),
                    Some(Knob {
                        field: "phi_p2".into(),
                        value: json!(observed),
                    }),
                )),
            }
        }
        // Near miss: the named account is nobody famous.
        2 => {
            let mut nobody = base_user(&format!("drifter-{i:02}"));
            nobody.follower_count = 2;
            let repo = spoofed_repo(i, 0, &nobody.login, 2.min(cfg.x4 as usize), false);
            let observed = user_popularity(nobody.follower_count);
            InstanceParts {
                subject: Snapshot::Repo(repo),
                aux: vec![(nobody.login.clone(), Snapshot::User(nobody))],
                near_miss: Some((
                    "contributor_popularity".into(),
                    Some(Knob {
                        field: "phi_p3".into(),
                        value: json!(observed),
                    }),
                )),
            }
        }
        // A genuine heavyweight contribution: many commits to a visible repo.
        _ if i % 2 == 1 => {
            let star = celebrity(i, 3_000 + 50 * i as u64);
            let repo = spoofed_repo(i, 4_000, &star.login, cfg.x4 as usize + 9, true);
            InstanceParts {
                subject: Snapshot::Repo(repo),
                aux: vec![(star.login.clone(), Snapshot::User(star))],
                near_miss: None,
            }
        }
        // Nothing attributed to anyone notable at all.
        _ => {
            let repo = spoofed_repo(i, rng.gen_range(0..50), "nobody-here", 0, false);
            InstanceParts::plain(Snapshot::Repo(repo))
        }
    }
}

// ---------------------------------------------------------------------------
// Issue spam
// ---------------------------------------------------------------------------

fn issue(number: u64, author: &str, title: &str, body: &str) -> IssueRecord {
    IssueRecord {
        number,
        author_login: author.into(),
        title: title.into(),
        body: body.into(),
        created_at: Timestamp::new(BASE_TIME - 9 * DAY + number as i64 * HOUR),
        closed_at: None,
        state: IssueState::Open,
    }
}

fn spam_issue_text(i: usize, variant: usize) -> (String, String) {
    match variant % 5 {
        0 => (
            "Huge airdrop live now".into(),
            format!(
                "Connect your wallet at https://air-drop.example/claim{i} and receive \
                 free tokens instantly. Limited spots, hurry up before the giveaway ends!"
            ),
        ),
        1 => (
            "URGENT: your account has been flagged".into(),
            format!(
                "Verify your identity now at https://verify-gh.example/confirm{i} or \
                 your account will be suspended within 24 hours."
            ),
        ),
        2 => (
            "Earn 300 dollars per day from home".into(),
            format!(
                "No experience required. Sign up today: https://home-cash.example/join{i} \
                 and quit your job next month. Guaranteed payout!"
            ),
        ),
        3 => (
            "Unclaimed package waiting for you".into(),
            format!(
                "Pay the 1 dollar customs fee at https://parcel-pay.example/track{i} \
                 to receive your delivery before it is returned."
            ),
        ),
        _ => (
            "Casino bonus: 200 free spins".into(),
            format!(
                "Plus a 1000 dollar welcome package. Register here \
                 https://spin-win.example/bonus{i} and cash out instantly."
            ),
        ),
    }
}

fn ham_issue_text(variant: usize) -> (String, String) {
    match variant % 4 {
        0 => (
            "File descriptor leak on reconnect".into(),
            "The daemon leaks one file descriptor per reconnect. After a weekend it \
             hits the ulimit and stops accepting connections. lsof output attached."
                .into(),
        ),
        1 => (
            "Feature request: sqlite export".into(),
            "Optional sqlite export for the report command would help; our downstream \
             tooling cannot consume the current format."
                .into(),
        ),
        2 => (
            "Docs refer to the old layout".into(),
            "The quickstart refers to the old repository layout before the workspace \
             split. Several relative links are broken."
                .into(),
        ),
        _ => (
            "Deadlock under heavy load".into(),
            "Deadlock between the writer thread and the flush timer under heavy load. \
             Thread dump attached; both wait on the same mutex in queue.rs."
                .into(),
        ),
    }
}

fn issue_repo(i: usize, issues: Vec<IssueRecord>) -> RepoSnapshot {
    let theme = theme(i);
    let mut repo = base_repo(&format!("opendoor-{i:02}/{}", theme.name), theme);
    repo.star_count = 120 + (i as u64 * 11) % 300;
    repo.issues = issues;
    repo
}

fn issue_spam_positive(i: usize, model: &SpamModelFile) -> Result<InstanceParts, EvalError> {
    let mut issues = Vec::new();
    for k in 0..2 {
        let (title, body) = spam_issue_text(i, i + k);
        let text = format!("{title}\n{body}");
        let probability = model.score_text(&text)?;
        if probability < model.classifier.threshold() {
            return Err(EvalError::InvalidInput(format!(
                "spam template {} scored {probability:.3}, below the classifier threshold",
                i + k
            )));
        }
        issues.push(issue(k as u64 + 1, &format!("driveby-{i:02}"), &title, &body));
    }
    // An ordinary report alongside the spam, as on any real tracker.
    let (title, body) = ham_issue_text(i);
    issues.push(issue(3, "regular-reporter", &title, &body));
    Ok(InstanceParts::plain(Snapshot::Repo(issue_repo(i, issues))))
}

fn issue_spam_negative(i: usize, model: &SpamModelFile) -> Result<InstanceParts, EvalError> {
    match i {
        // Near miss: a payload link, but the prose reads like a bug report so
        // the classifier scores it below its threshold.
        0 => {
            let title = "Flush timer deadlocks when rotation is enabled";
            let body = format!(
                "Full thread dump and reproduction steps are at \
                 https://gist.example/deadlock-{i}. Both threads wait on the queue \
                 mutex in queue.rs; disabling the rotation timer avoids the hang."
            );
            let text = format!("{title}\n{body}");
            let probability = model.score_text(&text)?;
            if probability >= model.classifier.threshold() {
                return Err(EvalError::InvalidInput(format!(
                    "benign report with a link scored {probability:.3}, above the classifier threshold"
                )));
            }
            let issues = vec![issue(1, "regular-reporter", title, &body)];
            Ok(InstanceParts {
                subject: Snapshot::Repo(issue_repo(i, issues)),
                aux: Vec::new(),
                near_miss: Some((
                    "spam_probability".into(),
                    Some(Knob {
                        field: CLASSIFIER_THRESHOLD_FIELD.into(),
                        value: json!(probability),
                    }),
                )),
            })
        }
        // Near miss: unmistakable spam prose with nothing to click or run.
        // The failing conjunct is structural, so there is no knob to turn.
        1 => {
            let title = "Congratulations winner, claim your prize";
            let body = "You have been selected for our exclusive lottery prize. Claim \
                        your free bonus reward today. Limited time offer, act now, cash \
                        out instantly, guaranteed payout, no experience required, earn \
                        dollars from home and win big in the weekly giveaway.";
            let text = format!("{title}\n{body}");
            if !extract_links(&text).is_empty() || !extract_commands(&text).is_empty() {
                return Err(EvalError::InvalidInput(
                    "payload-free spam template unexpectedly contains a payload".into(),
                ));
            }
            let probability = model.score_text(&text)?;
            if probability < model.classifier.threshold() {
                return Err(EvalError::InvalidInput(format!(
                    "payload-free spam template scored {probability:.3}, below the classifier threshold"
                )));
            }
            let issues = vec![issue(1, &format!("driveby-{i:02}"), title, body)];
            Ok(InstanceParts {
                subject: Snapshot::Repo(issue_repo(i, issues)),
                aux: Vec::new(),
                near_miss: Some(("has_link_or_command".into(), None)),
            })
        }
        // Ordinary trackers: plain reports, some with harmless links.
        _ => {
            let mut issues = Vec::new();
            for k in 0..2 + (i % 2) {
                let (title, mut body) = ham_issue_text(i + k);
                if (i + k) % 3 == 0 {
                    body.push_str(&format!(
                        " Full logs: https://ci.example/runs/{i}/{k} for reference."
                    ));
                }
                issues.push(issue(k as u64 + 1, "regular-reporter", &title, &body));
            }
            Ok(InstanceParts::plain(Snapshot::Repo(issue_repo(i, issues))))
        }
    }
}

// ---------------------------------------------------------------------------
// Reputation farming
// ---------------------------------------------------------------------------

/// The forum-style repository whose settled threads farmers pile onto.
fn thread_board(i: usize, closed_at: i64) -> RepoSnapshot {
    let theme = theme(i);
    let mut repo = base_repo(&format!("colloquy-{i:02}/{}", theme.name), theme);
    repo.star_count = 800;
    repo.issues = (1..=4)
        .map(|n| IssueRecord {
            number: n,
            author_login: "member".into(),
            title: format!("thread {n}"),
            body: "settled long ago".into(),
            created_at: Timestamp::new(closed_at - 12 * DAY),
            closed_at: Some(Timestamp::new(closed_at)),
            state: IssueState::Closed,
        })
        .collect();
    repo.issues.push(IssueRecord {
        number: 9,
        author_login: "member".into(),
        title: "still under discussion".into(),
        body: "open thread".into(),
        created_at: Timestamp::new(closed_at - 2 * DAY),
        closed_at: None,
        state: IssueState::Open,
    });
    repo.pull_requests = vec![PullRequestRecord {
        number: 5,
        author_login: "member".into(),
        title: "merged work".into(),
        body: String::new(),
        created_at: Timestamp::new(closed_at - 9 * DAY),
        merged_or_closed_at: Some(Timestamp::new(closed_at)),
        state: PullState::Merged,
    }];
    repo
}

fn farming_kind(k: usize) -> ActivityKind {
    match k % 3 {
        0 => ActivityKind::IssueComment,
        1 => ActivityKind::PrComment,
        _ => ActivityKind::PrReview,
    }
}

fn farming_parts(
    i: usize,
    stale_events: usize,
    offsets: &[i64],
    near_miss: Option<(String, Option<Knob>)>,
) -> InstanceParts {
    let closed_at = BASE_TIME - 40 * DAY;
    let board = thread_board(i, closed_at);
    let mut user = base_user(&format!("grinder-{i:02}"));
    user.follower_count = 3 + (i as u64 % 9);
    let mut events: Vec<ActivityEvent> = (0..stale_events)
        .map(|k| {
            let thread = 1 + (k % 4) as u64;
            activity(
                farming_kind(k),
                closed_at + offsets[k % offsets.len()] + k as i64 * HOUR,
                &format!("{}#{thread}", board.full_name),
            )
        })
        .collect();
    // Unremarkable surrounding noise: starring and forking are never stale.
    events.push(activity(
        ActivityKind::Star,
        closed_at + 2 * DAY,
        &board.full_name,
    ));
    events.sort_by_key(|e| e.timestamp);
    user.activity = events;
    InstanceParts {
        subject: Snapshot::User(user),
        aux: vec![("board".into(), Snapshot::Repo(board))],
        near_miss,
    }
}

fn farming_positive(i: usize, cfg: &ThresholdConfig) -> InstanceParts {
    let n = cfg.farming_min_events as usize + (i % 3);
    let offsets = [2 * HOUR + cfg.delta_t, DAY, 5 * DAY, 12 * DAY];
    farming_parts(i, n, &offsets, None)
}

fn farming_negative(i: usize, cfg: &ThresholdConfig) -> InstanceParts {
    let closed_at = BASE_TIME - 40 * DAY;
    match i {
        // Near miss: deliberate stale bumps, but one short of the bar.
        0 => {
            let n = cfg.farming_min_events as usize - 1;
            let offsets = [2 * HOUR + cfg.delta_t, 3 * DAY];
            farming_parts(
                i,
                n,
                &offsets,
                Some((
                    "stale_interaction_count".into(),
                    Some(Knob {
                        field: "farming_min_events".into(),
                        value: json!(cfg.farming_min_events - 1),
                    }),
                )),
            )
        }
        // Near miss: a burst of follow-ups inside the grace period right
        // after closing — normal wrap-up, not farming. Tightening the grace
        // period would reclassify all of them as stale.
        1 => {
            let board = thread_board(i, closed_at);
            let mut user = base_user(&format!("grinder-{i:02}"));
            let grace = cfg.delta_t;
            let offsets = [grace * 5 / 12, grace / 2, grace * 25 / 36];
            user.activity = offsets
                .iter()
                .enumerate()
                .map(|(k, off)| {
                    activity(
                        farming_kind(k),
                        closed_at + off,
                        &format!("{}#1", board.full_name),
                    )
                })
                .collect();
            user.activity.sort_by_key(|e| e.timestamp);
            InstanceParts {
                subject: Snapshot::User(user),
                aux: vec![("board".into(), Snapshot::Repo(board))],
                near_miss: Some((
                    "stale_interaction_count".into(),
                    Some(Knob {
                        field: "delta_t".into(),
                        value: json!(grace * 5 / 18),
                    }),
                )),
            }
        }
        // On-time participation: activity lands while threads are open.
        _ if i % 3 == 2 => {
            let board = thread_board(i, closed_at);
            let mut user = base_user(&format!("grinder-{i:02}"));
            user.activity = (0..4)
                .map(|k| {
                    activity(
                        farming_kind(k),
                        closed_at - (4 - k as i64) * DAY,
                        &format!("{}#{}", board.full_name, 1 + (k % 4)),
                    )
                })
                .collect();
            InstanceParts {
                subject: Snapshot::User(user),
                aux: vec![("board".into(), Snapshot::Repo(board))],
                near_miss: None,
            }
        }
        // Archaeology and open threads: active, but never in the stale band.
        _ => {
            let old_close = BASE_TIME - 200 * DAY;
            let board = thread_board(i, old_close);
            let mut user = base_user(&format!("grinder-{i:02}"));
            let beyond = cfg.window_rep_farming + 5 * DAY;
            user.activity = vec![
                activity(
                    ActivityKind::IssueComment,
                    old_close + beyond,
                    &format!("{}#1", board.full_name),
                ),
                activity(
                    ActivityKind::IssueComment,
                    old_close + beyond + DAY,
                    &format!("{}#9", board.full_name),
                ),
                activity(
                    ActivityKind::Commit,
                    old_close + beyond + 2 * DAY,
                    &board.full_name,
                ),
            ];
            InstanceParts {
                subject: Snapshot::User(user),
                aux: vec![("board".into(), Snapshot::Repo(board))],
                near_miss: None,
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Fake stats
// ---------------------------------------------------------------------------

fn widget_url(account: &str) -> String {
    format!("https://github-readme-stats.vercel.app/api?username={account}&show_icons=true")
}

fn stats_profile(i: usize, login: &str, widget_account: Option<&str>) -> UserSnapshot {
    let mut user = base_user(login);
    user.follower_count = 25 + (i as u64 * 13) % 400;
    user.owned_repos = (0..3)
        .map(|k| OwnedRepo {
            full_name: format!("{login}/project-{k}"),
            star_count: (i as u64 + k * 5) % 30,
        })
        .collect();
    user.profile_readme = "## about me\n\nbuilding small tools since forever.\n".to_string();
    if let Some(account) = widget_account {
        let url = widget_url(account);
        user.profile_readme.push_str(&format!("\n![stats]({url})\n"));
        user.stat_widget_urls = vec![url];
    }
    user
}

fn fake_stats_positive(i: usize, rng: &mut ChaCha8Rng, cfg: &ThresholdConfig) -> InstanceParts {
    let login = format!("glimmer-{i:02}");
    if i % 2 == 0 {
        // Renders somebody else's numbers.
        let user = stats_profile(i, &login, Some(&format!("rockstar-coder-{i:02}")));
        InstanceParts::plain(Snapshot::User(user))
    } else {
        // Claims a star total the owned repositories cannot back.
        let mut user = stats_profile(i, &login, Some(&login));
        let gap = cfg.x5 + (i as u64 % 5) * 2 + rng.gen_range(0..2);
        user.claimed_star_count = Some(user.owned_star_total() + gap);
        InstanceParts::plain(Snapshot::User(user))
    }
}

fn fake_stats_negative(i: usize, rng: &mut ChaCha8Rng, cfg: &ThresholdConfig) -> InstanceParts {
    let login = format!("glimmer-{i:02}");
    match i {
        // Near miss: rounds the star total up, but inside the tolerance.
        0 => {
            let mut user = stats_profile(i, &login, Some(&login));
            let gap = cfg.x5 - 1;
            user.claimed_star_count = Some(user.owned_star_total() + gap);
            InstanceParts {
                subject: Snapshot::User(user),
                aux: Vec::new(),
                near_miss: Some((
                    "star_count_gap".into(),
                    Some(Knob {
                        field: "x5".into(),
                        value: json!(gap),
                    }),
                )),
            }
        }
        // Honest profiles: own widgets, exact or absent claims.
        _ => {
            let mut user = stats_profile(i, &login, (i % 3 != 1).then_some(login.as_str()));
            user.follower_count = 25 + rng.gen_range(0..200);
            if i % 2 == 0 {
                user.claimed_star_count = Some(user.owned_star_total());
            }
            InstanceParts::plain(Snapshot::User(user))
        }
    }
}
