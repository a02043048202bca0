//! The five subcommands: fetch, scan, eval, gen-fixtures, and train-spam.
//!
//! Every command validates its inputs before touching the network or
//! mutating any file, writes exactly one machine-readable document to stdout
//! (or `--out`), and reports diagnostics on stderr only.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::ValueEnum;
use forgescan_detectors::{
    run_scan, Detector, DetectorRegistry, PopularReference, ScanBatch,
    DEFAULT_REFERENCE_STAR_FLOOR,
};
use forgescan_eval::{emit_report, evaluate, generate_fixture_corpus, CorpusPlan};
use forgescan_ingest::{
    fetch_repo_snapshot, fetch_user_snapshot, load_snapshot, store_snapshot, ApiClient, Clock,
    HttpTransport, ManualClock, RepoFetchOptions, ReplayTransport, SystemClock, Transport,
    UserFetchOptions,
};
use forgescan_model::DetectorKind;
use forgescan_textkit::{
    bundled_spam_corpus, parse_spam_corpus, SpamModelFile, TrainOptions, DEFAULT_HIDDEN_DIM,
};

use crate::config::Settings;
use crate::output::{emit, render_verdicts};

/// What a successful command found; the process maps this onto its exit
/// code (0 for clean, 2 for flagged findings).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    Flagged,
}

/// Which kind of subject `fetch` pulls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SubjectArg {
    /// A repository, named `owner/name`.
    Repo,
    /// A user account, named by login.
    User,
}

/// Fetches one snapshot, from the live API or a recorded transcript, and
/// writes it as canonical JSON to stdout or `--out`.
pub fn fetch(
    settings: &Settings,
    kind: SubjectArg,
    name: &str,
    replay: Option<&Path>,
    limit: Option<usize>,
) -> Result<Outcome> {
    let mut client_config = settings.client.clone();
    let transport: Arc<dyn Transport> = match replay {
        Some(path) => Arc::new(
            ReplayTransport::from_file(path)
                .with_context(|| format!("cannot load transcript {}", path.display()))?,
        ),
        None => {
            if client_config.auth_token.is_none() {
                client_config.auth_token = std::env::var(&settings.token_env)
                    .ok()
                    .filter(|token| !token.is_empty());
            }
            Arc::new(HttpTransport::new(
                client_config.base_url.clone(),
                client_config.auth_token.clone(),
            )?)
        }
    };
    // Replays must not depend on wall time: a fixed clock makes rate-limit
    // waits in the transcript resolve instantly and deterministically.
    let clock: Arc<dyn Clock> = match replay {
        Some(_) => Arc::new(ManualClock::new(0)),
        None => Arc::new(SystemClock),
    };
    let client = ApiClient::new(transport, clock, client_config);

    let (snapshot, report) = match kind {
        SubjectArg::Repo => {
            let mut options = RepoFetchOptions::default();
            if let Some(cap) = limit {
                options.max_stargazers = cap;
                options.max_commits = cap;
                options.max_issues = cap;
                options.max_pulls = cap;
            }
            fetch_repo_snapshot(&client, name, &options)?
        }
        SubjectArg::User => {
            let mut options = UserFetchOptions::default();
            if let Some(cap) = limit {
                options.max_starred = cap;
                options.max_owned = cap;
                options.max_events = cap;
            }
            fetch_user_snapshot(&client, name, &options)?
        }
    };

    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    if report.truncated {
        eprintln!("warning: some listings were cut at their configured maximum");
    }

    match settings.out.as_deref() {
        Some(path) => store_snapshot(&snapshot, path)?,
        None => {
            let mut text = snapshot.to_json_string()?;
            text.push('\n');
            emit(&text, None)?;
        }
    }
    Ok(Outcome::Clean)
}

/// Runs the selected detectors over one batch of snapshot files and writes
/// the verdicts in the selected format.
pub fn scan(
    settings: &Settings,
    snapshot_paths: &[PathBuf],
    references: Option<&Path>,
    spam_model: Option<&Path>,
) -> Result<Outcome> {
    let registry = DetectorRegistry::with_builtins();
    let selected: Vec<&dyn Detector> = if settings.detectors.is_empty() {
        registry.all()
    } else {
        registry.select(&settings.detectors)?
    };

    let mut snapshots = Vec::with_capacity(snapshot_paths.len());
    for path in snapshot_paths {
        snapshots.push(
            load_snapshot(path)
                .with_context(|| format!("cannot load snapshot {}", path.display()))?,
        );
    }
    let mut batch = ScanBatch::new(snapshots)?;

    if let Some(path) = references.or(settings.references.as_deref()) {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read references {}", path.display()))?;
        let parsed: Vec<PopularReference> = serde_json::from_str(&text)
            .with_context(|| format!("invalid references {}", path.display()))?;
        batch = batch.with_references(parsed, DEFAULT_REFERENCE_STAR_FLOOR)?;
    }
    // Popular repositories inside the batch protect their own look-alikes.
    batch.derive_references(DEFAULT_REFERENCE_STAR_FLOOR);

    let needs_spam_model = selected
        .iter()
        .any(|detector| detector.kind() == DetectorKind::IssueSpam);
    if let Some(path) = spam_model.or(settings.spam_model.as_deref()) {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read spam model {}", path.display()))?;
        batch = batch.with_spam_model(SpamModelFile::from_json_str(&text)?);
    } else if needs_spam_model {
        // No weight file: train the bundled corpus under the run seed, so a
        // bare `scan` still covers every detector, deterministically.
        batch = batch.with_spam_model(SpamModelFile::train_default(settings.seed)?);
    }

    let verdicts = run_scan(&batch, &settings.thresholds, &selected)?;
    let document = render_verdicts(&verdicts, settings.format)?;
    emit(&document, settings.out.as_deref())?;

    Ok(if verdicts.iter().any(|v| v.flagged) {
        Outcome::Flagged
    } else {
        Outcome::Clean
    })
}

/// Scores a labeled corpus with each instance's own subcategory detector and
/// writes the per-subcategory metrics report.
pub fn eval(settings: &Settings, manifest: &Path, spam_model: Option<&Path>) -> Result<Outcome> {
    let model_path = spam_model.or(settings.spam_model.as_deref());
    let rows = evaluate(manifest, &settings.thresholds, model_path)?;
    let document = emit_report(&rows, settings.format)?;
    emit(&document, settings.out.as_deref())?;
    Ok(Outcome::Clean)
}

/// Generates a labeled fixture corpus and prints a one-line JSON summary.
pub fn gen_fixtures(
    settings: &Settings,
    out_dir: &Path,
    positives: Option<usize>,
    negatives: Option<usize>,
) -> Result<Outcome> {
    let plan = match (positives, negatives) {
        (Some(p), Some(n)) => CorpusPlan::uniform(p, n),
        _ => CorpusPlan::balanced_default(),
    };
    let summary = generate_fixture_corpus(settings.seed, &plan, &settings.thresholds, out_dir)?;
    let mut document = serde_json::to_string(&summary)?;
    document.push('\n');
    emit(&document, settings.out.as_deref())?;
    Ok(Outcome::Clean)
}

/// Trains the issue-spam model on a labeled text corpus (bundled by default)
/// and writes the weight file.
pub fn train_spam(
    settings: &Settings,
    model_out: &Path,
    corpus: Option<&Path>,
    epochs: Option<usize>,
) -> Result<Outcome> {
    let examples: Vec<(String, bool)> = match corpus {
        Some(path) => parse_spam_corpus(
            &fs::read_to_string(path)
                .with_context(|| format!("cannot read corpus {}", path.display()))?,
        )?,
        None => bundled_spam_corpus().to_vec(),
    };
    let mut options = TrainOptions::default();
    if let Some(epochs) = epochs {
        options.epochs = epochs;
    }
    let model =
        SpamModelFile::train_from_corpus(&examples, DEFAULT_HIDDEN_DIM, settings.seed, &options)?;
    let mut weights = model.to_json_string()?;
    weights.push('\n');
    fs::write(model_out, &weights)
        .with_context(|| format!("cannot write model {}", model_out.display()))?;

    let summary = serde_json::json!({
        "examples": examples.len(),
        "epochs": options.epochs,
        "vocabulary": model.tfidf.vocab_size(),
        "threshold": model.classifier.threshold(),
        "model_path": model_out.display().to_string(),
    });
    let mut document = summary.to_string();
    document.push('\n');
    emit(&document, settings.out.as_deref())?;
    Ok(Outcome::Clean)
}
