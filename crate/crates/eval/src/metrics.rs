use std::collections::BTreeMap;

use forgescan_model::DetectorKind;
use serde::{Deserialize, Serialize};

/// Per-subcategory confusion counts and derived ratios.
///
/// Ratios whose denominator is zero are *absent* (`None`), never reported as
/// zero: a subcategory with no positive predictions has undefined precision,
/// not perfect-failure precision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub subcategory: DetectorKind,
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recall: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<f64>,
}

impl MetricsRow {
    pub fn from_counts(subcategory: DetectorKind, tp: u64, fp: u64, tn: u64, fn_: u64) -> Self {
        let ratio = |num: u64, den: u64| (den > 0).then(|| num as f64 / den as f64);
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = match (precision, recall) {
            (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
            _ => None,
        };
        let accuracy = ratio(tp + tn, tp + fp + tn + fn_);
        MetricsRow { subcategory, tp, fp, tn, fn_, precision, recall, f1, accuracy }
    }

    /// Total number of instances this row summarizes.
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }
}

/// Accumulates (label, decision) outcomes keyed by subcategory and emits
/// rows in the canonical detector order.
#[derive(Debug, Default)]
pub struct ConfusionAccumulator {
    counts: BTreeMap<DetectorKind, [u64; 4]>,
}

impl ConfusionAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, subcategory: DetectorKind, label: bool, decision: bool) {
        let cell = match (label, decision) {
            (true, true) => 0,   // tp
            (false, true) => 1,  // fp
            (false, false) => 2, // tn
            (true, false) => 3,  // fn
        };
        self.counts.entry(subcategory).or_default()[cell] += 1;
    }

    /// Merges another accumulator into this one. Because addition commutes,
    /// the resulting rows are independent of the order in which instances
    /// were recorded or shards merged.
    pub fn merge(&mut self, other: ConfusionAccumulator) {
        for (kind, cells) in other.counts {
            let mine = self.counts.entry(kind).or_default();
            for (m, c) in mine.iter_mut().zip(cells) {
                *m += c;
            }
        }
    }

    pub fn rows(&self) -> Vec<MetricsRow> {
        DetectorKind::ALL
            .iter()
            .filter_map(|kind| {
                self.counts
                    .get(kind)
                    .map(|&[tp, fp, tn, fn_]| MetricsRow::from_counts(*kind, tp, fp, tn, fn_))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_come_from_the_standard_formulas() {
        let row = MetricsRow::from_counts(DetectorKind::FakeStars, 9, 1, 9, 1);
        assert_eq!(row.precision, Some(0.9));
        assert_eq!(row.recall, Some(0.9));
        assert_eq!(row.f1, Some(0.9));
        assert_eq!(row.accuracy, Some(0.9));
        assert_eq!(row.total(), 20);
    }

    #[test]
    fn undefined_ratios_are_absent_not_zero() {
        // No predicted positives: precision undefined; recall 0; f1 undefined.
        let row = MetricsRow::from_counts(DetectorKind::IssueSpam, 0, 0, 5, 5);
        assert_eq!(row.precision, None);
        assert_eq!(row.recall, Some(0.0));
        assert_eq!(row.f1, None);
        assert_eq!(row.accuracy, Some(0.5));

        // Nothing at all: everything undefined.
        let empty = MetricsRow::from_counts(DetectorKind::IssueSpam, 0, 0, 0, 0);
        assert_eq!(empty.precision, None);
        assert_eq!(empty.recall, None);
        assert_eq!(empty.f1, None);
        assert_eq!(empty.accuracy, None);
    }

    #[test]
    fn f1_is_absent_when_both_ratios_are_zero() {
        // Defined-but-zero precision and recall would divide by zero.
        let row = MetricsRow::from_counts(DetectorKind::FakeStats, 0, 3, 0, 2);
        assert_eq!(row.precision, Some(0.0));
        assert_eq!(row.recall, Some(0.0));
        assert_eq!(row.f1, None);
    }

    #[test]
    fn accumulator_orders_rows_canonically_and_merge_commutes() {
        let mut a = ConfusionAccumulator::new();
        a.record(DetectorKind::FakeStats, true, true);
        a.record(DetectorKind::FakeStars, true, false);

        let mut b = ConfusionAccumulator::new();
        b.record(DetectorKind::FakeStars, false, false);
        b.record(DetectorKind::FakeStats, false, true);

        let mut ab = ConfusionAccumulator::new();
        ab.merge(a);
        ab.merge(b);

        let rows = ab.rows();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].subcategory, DetectorKind::FakeStars);
        assert_eq!(rows[0].fn_, 1);
        assert_eq!(rows[0].tn, 1);
        assert_eq!(rows[1].subcategory, DetectorKind::FakeStats);
        assert_eq!(rows[1].tp, 1);
        assert_eq!(rows[1].fp, 1);
    }

    #[test]
    fn rows_round_trip_through_json() {
        let row = MetricsRow::from_counts(DetectorKind::TypoSquatting, 3, 0, 4, 1);
        let text = serde_json::to_string(&row).unwrap();
        assert!(text.contains("\"fn\":1"));
        // Absent precision must not serialize as 0.
        let sparse = MetricsRow::from_counts(DetectorKind::TypoSquatting, 0, 0, 4, 0);
        let sparse_text = serde_json::to_string(&sparse).unwrap();
        assert!(!sparse_text.contains("precision"));
        let back: MetricsRow = serde_json::from_str(&text).unwrap();
        assert_eq!(back, row);
    }
}
