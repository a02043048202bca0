//! `forgescan` — scan GitHub snapshots for abuse signals.
//!
//! Subcommands cover the whole workflow: `fetch` pulls repository or user
//! snapshots from the API (or a recorded transcript), `scan` runs any subset
//! of the registered detectors over snapshot files, `eval` scores a labeled
//! corpus and reports per-category metrics, `gen-fixtures` synthesizes such
//! a corpus, and `train-spam` fits the issue-spam model.
//!
//! Exit codes: 0 on success with nothing flagged, 2 on success with at least
//! one flagged verdict (so CI pipelines can gate on findings), 1 on any
//! operational error, reported as a single line on stderr. Stdout carries
//! machine-readable output only and is byte-for-byte reproducible for
//! identical inputs and seed.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::{Outcome, SubjectArg};
use config::CliOverrides;

#[derive(Debug, Parser)]
#[command(
    name = "forgescan",
    version,
    about = "Detects abusive behavior in GitHub repository and account snapshots"
)]
struct Cli {
    /// Run-configuration file (.json or .toml); flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Write the output document here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output encoding: jsonl, csv, or markdown.
    #[arg(long, global = true, value_name = "FORMAT")]
    format: Option<String>,

    /// Comma-separated detector names to run (default: all registered).
    #[arg(long, global = true, value_delimiter = ',', value_name = "NAMES")]
    detectors: Vec<String>,

    /// Seed for every seeded random choice (model init, fixture generation).
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Environment variable to read the API token from [default: GH_TOKEN].
    #[arg(long, global = true, value_name = "NAME")]
    token_env: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fetch a repository or user snapshot from the API or a transcript.
    Fetch {
        /// What to fetch.
        #[arg(value_enum)]
        kind: SubjectArg,
        /// `owner/name` for repositories, the login for users.
        name: String,
        /// Replay a recorded transcript instead of calling the network.
        #[arg(long, value_name = "FILE")]
        replay: Option<PathBuf>,
        /// Cap every listing (stargazers, commits, issues, events) at N.
        #[arg(long, value_name = "N")]
        limit: Option<usize>,
    },
    /// Run detectors over snapshot files and write their verdicts.
    Scan {
        /// Snapshot files scanned together as one batch.
        #[arg(required = true, value_name = "SNAPSHOT")]
        snapshots: Vec<PathBuf>,
        /// JSON list of reference repositories for typo-squatting.
        #[arg(long, value_name = "FILE")]
        references: Option<PathBuf>,
        /// Trained spam-model weight file (default: train the bundled
        /// corpus under --seed).
        #[arg(long, value_name = "FILE")]
        spam_model: Option<PathBuf>,
    },
    /// Score a labeled corpus and report per-subcategory metrics.
    Eval {
        /// Corpus manifest: JSON lines of labeled instances.
        manifest: PathBuf,
        /// Spam-model override (default: the weight file stored beside the
        /// manifest, when present).
        #[arg(long, value_name = "FILE")]
        spam_model: Option<PathBuf>,
    },
    /// Generate a labeled fixture corpus under --seed.
    GenFixtures {
        /// Directory to write the corpus into.
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
        /// Positives per subcategory; with --negatives. Defaults to the
        /// built-in balanced plan.
        #[arg(long, requires = "negatives", value_name = "N")]
        positives: Option<usize>,
        /// Negatives per subcategory; with --positives.
        #[arg(long, requires = "positives", value_name = "N")]
        negatives: Option<usize>,
    },
    /// Train the issue-spam model and write its weight file.
    TrainSpam {
        /// Where to write the trained weights.
        #[arg(long, value_name = "FILE")]
        model_out: PathBuf,
        /// JSON-lines training corpus `{"text", "label"}` (default: bundled).
        #[arg(long, value_name = "FILE")]
        corpus: Option<PathBuf>,
        /// Training epochs (default: 300).
        #[arg(long, value_name = "N")]
        epochs: Option<usize>,
    },
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let settings = config::resolve(
        cli.config.as_deref(),
        CliOverrides {
            detectors: cli.detectors,
            format: cli.format,
            out: cli.out,
            seed: cli.seed,
            token_env: cli.token_env,
        },
    )?;
    match cli.command {
        Command::Fetch {
            kind,
            name,
            replay,
            limit,
        } => commands::fetch(&settings, kind, &name, replay.as_deref(), limit),
        Command::Scan {
            snapshots,
            references,
            spam_model,
        } => commands::scan(
            &settings,
            &snapshots,
            references.as_deref(),
            spam_model.as_deref(),
        ),
        Command::Eval {
            manifest,
            spam_model,
        } => commands::eval(&settings, &manifest, spam_model.as_deref()),
        Command::GenFixtures {
            out_dir,
            positives,
            negatives,
        } => commands::gen_fixtures(&settings, &out_dir, positives, negatives),
        Command::TrainSpam {
            model_out,
            corpus,
            epochs,
        } => commands::train_spam(&settings, &model_out, corpus.as_deref(), epochs),
    }
}

/// Collapses an error chain onto one line for the stderr diagnostic.
fn one_line(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = err.print();
                    ExitCode::SUCCESS
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    eprintln!("error: missing arguments; run `forgescan --help`");
                    ExitCode::from(1)
                }
                _ => {
                    let text = err.to_string();
                    let line = text
                        .lines()
                        .find(|line| !line.trim().is_empty())
                        .unwrap_or("invalid arguments");
                    let line = line.strip_prefix("error: ").unwrap_or(line);
                    eprintln!("error: {}", one_line(line));
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Flagged) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {}", one_line(&format!("{err:#}")));
            ExitCode::from(1)
        }
    }
}
