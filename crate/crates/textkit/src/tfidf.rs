//! TF-IDF vectorizer with a deterministic vocabulary.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::TextkitError;

/// A sparse vector: `(index, value)` entries sorted by index, plus the full
/// dimensionality it lives in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SparseVector {
    pub dim: usize,
    pub entries: Vec<(usize, f64)>,
}

impl SparseVector {
    pub fn zero(dim: usize) -> Self {
        SparseVector { dim, entries: Vec::new() }
    }

    pub fn l2_norm(&self) -> f64 {
        self.entries.iter().map(|(_, v)| v * v).sum::<f64>().sqrt()
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut dense = vec![0.0; self.dim];
        for &(i, v) in &self.entries {
            dense[i] = v;
        }
        dense
    }
}

#[derive(Serialize, Deserialize)]
struct TfIdfRepr {
    vocab: Vec<String>,
    idf: Vec<f64>,
}

/// Fitted TF-IDF model: a sorted vocabulary and one smoothed IDF weight per
/// term (`ln((1 + N) / (1 + df)) + 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "TfIdfRepr", try_from = "TfIdfRepr")]
pub struct TfIdfModel {
    vocab: Vec<String>,
    idf: Vec<f64>,
    index: HashMap<String, usize>,
}

impl From<TfIdfModel> for TfIdfRepr {
    fn from(m: TfIdfModel) -> Self {
        TfIdfRepr { vocab: m.vocab, idf: m.idf }
    }
}

impl TryFrom<TfIdfRepr> for TfIdfModel {
    type Error = String;

    fn try_from(repr: TfIdfRepr) -> Result<Self, Self::Error> {
        if repr.vocab.len() != repr.idf.len() {
            return Err(format!(
                "vocab has {} terms but idf has {} weights",
                repr.vocab.len(),
                repr.idf.len()
            ));
        }
        let index = repr.vocab.iter().cloned().zip(0..).collect();
        Ok(TfIdfModel { vocab: repr.vocab, idf: repr.idf, index })
    }
}

impl TfIdfModel {
    /// Fit on tokenized documents. The vocabulary is every distinct token,
    /// sorted lexicographically so term indices are stable. At least one
    /// document is required.
    pub fn fit(docs: &[Vec<String>]) -> Result<Self, TextkitError> {
        if docs.is_empty() {
            return Err(TextkitError::InvalidInput("tfidf fit requires at least one document".into()));
        }
        let mut df: BTreeMap<&str, usize> = BTreeMap::new();
        for doc in docs {
            let distinct: HashSet<&str> = doc.iter().map(String::as_str).collect();
            for t in distinct {
                *df.entry(t).or_insert(0) += 1;
            }
        }
        let n = docs.len() as f64;
        let mut vocab = Vec::with_capacity(df.len());
        let mut idf = Vec::with_capacity(df.len());
        for (term, count) in df {
            vocab.push(term.to_owned());
            idf.push(((1.0 + n) / (1.0 + count as f64)).ln() + 1.0);
        }
        let index = vocab.iter().cloned().zip(0..).collect();
        Ok(TfIdfModel { vocab, idf, index })
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab.len()
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    /// Map tokens to an L2-normalized tf-idf vector. Tokens outside the
    /// vocabulary are ignored; a document with no known tokens maps to the
    /// zero vector.
    pub fn transform(&self, tokens: &[String]) -> SparseVector {
        let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
        for t in tokens {
            if let Some(&idx) = self.index.get(t.as_str()) {
                *counts.entry(idx).or_insert(0.0) += 1.0;
            }
        }
        let mut entries: Vec<(usize, f64)> =
            counts.into_iter().map(|(idx, tf)| (idx, tf * self.idf[idx])).collect();
        let norm = entries.iter().map(|(_, v)| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            for (_, v) in &mut entries {
                *v /= norm;
            }
        }
        SparseVector { dim: self.vocab.len(), entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(words: &[&str]) -> Vec<String> {
        words.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn fit_requires_documents() {
        assert!(matches!(TfIdfModel::fit(&[]), Err(TextkitError::InvalidInput(_))));
    }

    #[test]
    fn vocabulary_is_sorted_and_complete() {
        let model =
            TfIdfModel::fit(&[toks(&["beta", "alpha"]), toks(&["gamma", "alpha"])]).unwrap();
        assert_eq!(model.vocab(), &["alpha", "beta", "gamma"]);
    }

    #[test]
    fn idf_matches_smoothed_formula() {
        let model =
            TfIdfModel::fit(&[toks(&["alpha", "beta"]), toks(&["alpha", "gamma"])]).unwrap();
        // alpha: df = 2 of N = 2 -> ln(3/3) + 1 = 1
        // beta:  df = 1          -> ln(3/2) + 1
        let v = model.transform(&toks(&["alpha"]));
        assert_eq!(v.entries, vec![(0, 1.0)]); // single term normalizes to 1
        let both = model.transform(&toks(&["alpha", "beta"]));
        let expected_ratio = (1.5f64.ln() + 1.0) / 1.0;
        let got_ratio = both.entries[1].1 / both.entries[0].1;
        assert!((got_ratio - expected_ratio).abs() < 1e-12);
    }

    #[test]
    fn transform_is_l2_normalized_or_zero() {
        let model = TfIdfModel::fit(&[toks(&["alpha", "beta", "beta"])]).unwrap();
        let v = model.transform(&toks(&["alpha", "beta", "alpha"]));
        assert!((v.l2_norm() - 1.0).abs() < 1e-12);
        let zero = model.transform(&toks(&["unknown", "words"]));
        assert_eq!(zero.entries.len(), 0);
        assert_eq!(zero.l2_norm(), 0.0);
    }

    #[test]
    fn out_of_vocabulary_tokens_are_ignored() {
        let model = TfIdfModel::fit(&[toks(&["alpha"])]).unwrap();
        let with_oov = model.transform(&toks(&["alpha", "zzz"]));
        let without = model.transform(&toks(&["alpha"]));
        assert_eq!(with_oov, without);
    }

    #[test]
    fn model_round_trips_through_json() {
        let model = TfIdfModel::fit(&[toks(&["alpha", "beta"]), toks(&["gamma"])]).unwrap();
        let text = serde_json::to_string(&model).unwrap();
        let back: TfIdfModel = serde_json::from_str(&text).unwrap();
        assert_eq!(back, model);
        assert_eq!(back.transform(&toks(&["beta"])), model.transform(&toks(&["beta"])));
    }
}
