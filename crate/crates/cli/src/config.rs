//! Run configuration: one file-loadable document plus command-line overrides.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use forgescan_eval::ReportFormat;
use forgescan_ingest::ApiClientConfig;
use forgescan_model::ThresholdConfig;
use serde::Deserialize;

/// Environment variable consulted for the API token when no other name is
/// configured.
pub const DEFAULT_TOKEN_ENV: &str = "GH_TOKEN";

/// Everything a run can configure, loadable from a single JSON or TOML
/// document. Every key is optional; omitted sections keep their defaults.
/// Unknown keys are rejected — anywhere in the document — so a typo cannot
/// silently disable a threshold.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Detector thresholds.
    pub thresholds: ThresholdConfig,
    /// API client settings used by `fetch`.
    pub client: ApiClientConfig,
    /// Detector names to run; empty means every registered detector.
    pub detectors: Vec<String>,
    /// Output encoding: `jsonl`, `csv`, or `markdown`.
    pub format: Option<String>,
    /// File to write the output document to; absent means stdout.
    pub out: Option<PathBuf>,
    /// JSON file with reference repositories for typo-squatting comparison.
    pub references: Option<PathBuf>,
    /// Trained spam-model weight file for issue-spam scoring.
    pub spam_model: Option<PathBuf>,
    /// Environment variable holding the API token.
    pub token_env: Option<String>,
    /// Seed for every seeded random choice (model init, fixture generation).
    pub seed: Option<u64>,
}

impl RunConfig {
    /// Loads a configuration file, dispatching on its extension.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let extension = path
            .extension()
            .and_then(|e| e.to_str())
            .unwrap_or("")
            .to_ascii_lowercase();
        match extension.as_str() {
            "json" => serde_json::from_str(&text)
                .with_context(|| format!("invalid JSON config {}", path.display())),
            "toml" => toml::from_str(&text)
                .with_context(|| format!("invalid TOML config {}", path.display())),
            _ => bail!(
                "config {} must have a .json or .toml extension",
                path.display()
            ),
        }
    }
}

/// Values given on the command line; `None` or empty means "not given".
#[derive(Debug, Default)]
pub struct CliOverrides {
    pub detectors: Vec<String>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub token_env: Option<String>,
}

/// A run configuration with every override applied and every default filled,
/// ready for the commands to consume.
#[derive(Debug, Clone)]
pub struct Settings {
    pub thresholds: ThresholdConfig,
    pub client: ApiClientConfig,
    /// Empty means "run every registered detector".
    pub detectors: Vec<String>,
    pub format: ReportFormat,
    pub out: Option<PathBuf>,
    pub references: Option<PathBuf>,
    pub spam_model: Option<PathBuf>,
    pub token_env: String,
    pub seed: u64,
}

/// Builds the effective settings: file values (when a config file is given)
/// overridden by command-line flags, with defaults filling the rest.
pub fn resolve(config_path: Option<&Path>, overrides: CliOverrides) -> Result<Settings> {
    let file = match config_path {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let format = match overrides.format.or(file.format) {
        Some(name) => name.parse::<ReportFormat>()?,
        None => ReportFormat::Jsonl,
    };
    let detectors = if overrides.detectors.is_empty() {
        file.detectors
    } else {
        overrides.detectors
    };
    Ok(Settings {
        thresholds: file.thresholds,
        client: file.client,
        detectors,
        format,
        out: overrides.out.or(file.out),
        references: file.references,
        spam_model: file.spam_model,
        token_env: overrides
            .token_env
            .or(file.token_env)
            .unwrap_or_else(|| DEFAULT_TOKEN_ENV.to_string()),
        seed: overrides.seed.or(file.seed).unwrap_or(0),
    })
}
