//! Name and readme similarity metrics.

use std::collections::BTreeMap;

use crate::tokenize;

/// Levenshtein edit distance over Unicode scalar values, single-row DP.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, &ca) in a.iter().enumerate() {
        let mut prev_diag = row[0];
        row[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let cost = usize::from(ca != cb);
            let next = (prev_diag + cost).min(row[j] + 1).min(row[j + 1] + 1);
            prev_diag = row[j + 1];
            row[j + 1] = next;
        }
    }
    row[b.len()]
}

/// Canonical form compared by [`name_similarity`]: lowercase with the
/// separators `-`, `_`, and `.` stripped.
pub fn normalize_name(name: &str) -> String {
    name.to_lowercase().chars().filter(|c| !matches!(c, '-' | '_' | '.')).collect()
}

/// Normalized edit similarity between two names:
/// `1 - levenshtein(norm(a), norm(b)) / max(len)`, and `1.0` when both
/// normalize to empty. Symmetric, in `[0, 1]`.
pub fn name_similarity(a: &str, b: &str) -> f64 {
    let a = normalize_name(a);
    let b = normalize_name(b);
    let max_len = a.chars().count().max(b.chars().count());
    if max_len == 0 {
        return 1.0;
    }
    1.0 - levenshtein(&a, &b) as f64 / max_len as f64
}

// BTreeMap rather than HashMap: the dot product below sums floats in
// iteration order, and that sum must not vary from process to process.
fn term_counts(text: &str) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for token in tokenize(text) {
        *counts.entry(token).or_insert(0) += 1;
    }
    counts
}

/// Cosine similarity between the raw term-frequency vectors of two texts.
///
/// Both texts empty (no tokens) compares equal: `1.0`. Exactly one empty
/// gives `0.0`.
pub fn readme_similarity(a: &str, b: &str) -> f64 {
    let ca = term_counts(a);
    let cb = term_counts(b);
    match (ca.is_empty(), cb.is_empty()) {
        (true, true) => return 1.0,
        (true, false) | (false, true) => return 0.0,
        _ => {}
    }
    let dot: f64 = ca
        .iter()
        .filter_map(|(t, &na)| cb.get(t).map(|&nb| na as f64 * nb as f64))
        .sum();
    let norm = |c: &BTreeMap<String, usize>| {
        c.values().map(|&n| (n * n) as f64).sum::<f64>().sqrt()
    };
    dot / (norm(&ca) * norm(&cb))
}
