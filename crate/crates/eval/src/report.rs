use std::fmt;
use std::str::FromStr;

use crate::{EvalError, MetricsRow};

/// Output encodings for an evaluation report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// One JSON object per row; round-trips to equal [`MetricsRow`] values.
    Jsonl,
    /// RFC-4180 CSV with a header line; absent ratios are empty cells.
    Csv,
    /// A GitHub-flavored table, one row per subcategory.
    Markdown,
}

impl ReportFormat {
    pub const ALL: [ReportFormat; 3] =
        [ReportFormat::Jsonl, ReportFormat::Csv, ReportFormat::Markdown];

    pub fn name(self) -> &'static str {
        match self {
            ReportFormat::Jsonl => "jsonl",
            ReportFormat::Csv => "csv",
            ReportFormat::Markdown => "markdown",
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReportFormat {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "jsonl" => Ok(ReportFormat::Jsonl),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(EvalError::InvalidInput(format!(
                "unknown report format {other:?}; expected jsonl, csv, or markdown"
            ))),
        }
    }
}

const COLUMNS: [&str; 5] = ["subcategory", "precision", "recall", "f1", "accuracy"];

fn metric_cells(row: &MetricsRow) -> [Option<f64>; 4] {
    [row.precision, row.recall, row.f1, row.accuracy]
}

fn format_metric(value: f64) -> String {
    format!("{value:.4}")
}

/// Renders metric rows in the requested format. The column order is fixed:
/// subcategory, precision, recall, f1, accuracy. Undefined ratios stay
/// visibly absent (empty CSV cells, `–` in markdown) and are never coerced
/// to zero.
pub fn emit_report(rows: &[MetricsRow], format: ReportFormat) -> Result<String, EvalError> {
    if rows.is_empty() {
        return Err(EvalError::InvalidInput("cannot report on zero metric rows".into()));
    }
    match format {
        ReportFormat::Jsonl => {
            let mut out = String::new();
            for row in rows {
                out.push_str(&serde_json::to_string(row)?);
                out.push('\n');
            }
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(COLUMNS)
                .map_err(|e| EvalError::InvalidInput(format!("csv encoding failed: {e}")))?;
            for row in rows {
                let mut record = vec![row.subcategory.name().to_string()];
                record.extend(
                    metric_cells(row)
                        .into_iter()
                        .map(|cell| cell.map(format_metric).unwrap_or_default()),
                );
                writer
                    .write_record(&record)
                    .map_err(|e| EvalError::InvalidInput(format!("csv encoding failed: {e}")))?;
            }
            let bytes = writer
                .into_inner()
                .map_err(|e| EvalError::InvalidInput(format!("csv encoding failed: {e}")))?;
            String::from_utf8(bytes)
                .map_err(|e| EvalError::InvalidInput(format!("csv produced invalid utf-8: {e}")))
        }
        ReportFormat::Markdown => {
            let mut out = String::new();
            out.push_str("| subcategory | precision | recall | f1 | accuracy |\n");
            out.push_str("| --- | --- | --- | --- | --- |\n");
            for row in rows {
                let cells: Vec<String> = metric_cells(row)
                    .into_iter()
                    .map(|cell| cell.map(format_metric).unwrap_or_else(|| "–".into()))
                    .collect();
                out.push_str(&format!(
                    "| {} | {} |\n",
                    row.subcategory.name(),
                    cells.join(" | ")
                ));
            }
            Ok(out)
        }
    }
}
