//! Rendering scan verdicts and writing output documents.
//!
//! Stdout carries machine-readable documents only; anything diagnostic goes
//! to stderr. Rendering is deterministic: byte-identical verdicts in the
//! same order produce byte-identical documents.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use forgescan_eval::ReportFormat;
use forgescan_model::DetectionVerdict;

/// Renders verdicts in the selected format: JSON lines (one verdict per
/// line), RFC-4180 CSV, or a GitHub-flavored table. The column order is
/// detector, subject, flagged, indeterminate, evidence; evidence is embedded
/// as compact JSON.
pub fn render_verdicts(verdicts: &[DetectionVerdict], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Jsonl => {
            let mut out = String::new();
            for verdict in verdicts {
                out.push_str(&serde_json::to_string(verdict)?);
                out.push('\n');
            }
            Ok(out)
        }
        ReportFormat::Csv => render_csv(verdicts),
        ReportFormat::Markdown => render_markdown(verdicts),
    }
}

const COLUMNS: [&str; 5] = ["detector", "subject", "flagged", "indeterminate", "evidence"];

fn render_csv(verdicts: &[DetectionVerdict]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(COLUMNS)?;
    for verdict in verdicts {
        writer.write_record([
            verdict.detector.name(),
            &verdict.subject,
            &verdict.flagged.to_string(),
            &verdict.indeterminate.to_string(),
            &serde_json::to_string(&verdict.evidence)?,
        ])?;
    }
    let bytes = writer.into_inner().context("csv buffer")?;
    Ok(String::from_utf8(bytes).context("csv output was not utf-8")?)
}

fn render_markdown(verdicts: &[DetectionVerdict]) -> Result<String> {
    let mut out = String::new();
    out.push_str(&format!("| {} |\n", COLUMNS.join(" | ")));
    out.push_str(&format!("|{}\n", " --- |".repeat(COLUMNS.len())));
    for verdict in verdicts {
        // A pipe inside the evidence JSON would split the table cell.
        let evidence = serde_json::to_string(&verdict.evidence)?.replace('|', "\\|");
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} |\n",
            verdict.detector.name(),
            verdict.subject,
            verdict.flagged,
            verdict.indeterminate,
            evidence,
        ));
    }
    Ok(out)
}

/// Writes a finished document to `out`, or to stdout when no path is given.
pub fn emit(document: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, document)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle.write_all(document.as_bytes())?;
            handle.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use forgescan_model::{DetectorKind, EvidenceClause};
    use serde_json::json;

    fn sample() -> Vec<DetectionVerdict> {
        vec![
            DetectionVerdict::new(DetectorKind::FakeStars, "bot-account")
                .flagged(true)
                .with_evidence(vec![EvidenceClause::new(
                    "starred_repo_count",
                    json!(1),
                    json!(2),
                )]),
            DetectionVerdict::new(DetectorKind::AutomaticUpdates, "octo/quiet"),
        ]
    }

    #[test]
    fn jsonl_round_trips_each_verdict() {
        let rendered = render_verdicts(&sample(), ReportFormat::Jsonl).unwrap();
        let lines: Vec<&str> = rendered.lines().collect();
        assert_eq!(lines.len(), 2);
        let parsed: DetectionVerdict = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(parsed, sample()[0]);
    }

    #[test]
    fn csv_has_a_header_and_one_row_per_verdict() {
        let rendered = render_verdicts(&sample(), ReportFormat::Csv).unwrap();
        let lines: Vec<&str> = rendered.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "detector,subject,flagged,indeterminate,evidence");
        assert!(lines[1].starts_with("fake-stars,bot-account,true,false,"));
        // The embedded JSON contains commas, so the cell must be quoted.
        assert!(lines[1].contains("\"[{"), "evidence cell not quoted: {}", lines[1]);
    }

    #[test]
    fn markdown_renders_one_table_row_per_verdict_and_escapes_pipes() {
        let mut verdicts = sample();
        verdicts[0].evidence[0].clause = "a|b".into();
        let rendered = render_verdicts(&verdicts, ReportFormat::Markdown).unwrap();
        let lines: Vec<&str> = rendered.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "| detector | subject | flagged | indeterminate | evidence |");
        assert!(lines[2].contains("a\\|b"));
    }

    #[test]
    fn empty_scan_renders_an_empty_jsonl_document() {
        assert_eq!(render_verdicts(&[], ReportFormat::Jsonl).unwrap(), "");
    }
}
