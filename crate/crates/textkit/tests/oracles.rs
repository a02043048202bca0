//! Independent-oracle checks for the text primitives: a closed-form BM25
//! calculator, a full-matrix edit-distance DP, and central finite differences
//! for the classifier gradients.

use forgescan_textkit::{
    bm25_score, levenshtein, name_similarity, normalize_name, Corpus, SparseVector,
    SpamClassifier, TrainOptions, BM25_B, BM25_K1,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Textbook BM25, recomputed from raw token lists with no shared code.
fn bm25_oracle(docs: &[(&str, Vec<&str>)], query: &[&str], doc_id: &str) -> f64 {
    let n = docs.len() as f64;
    let avg: f64 = docs.iter().map(|(_, t)| t.len() as f64).sum::<f64>() / n;
    let (_, doc) = docs.iter().find(|(id, _)| *id == doc_id).unwrap();
    let mut score = 0.0;
    for term in query {
        let tf = doc.iter().filter(|t| t == &term).count() as f64;
        if tf == 0.0 {
            continue;
        }
        let df = docs.iter().filter(|(_, t)| t.contains(term)).count() as f64;
        let idf = (1.0 + (n - df + 0.5) / (df + 0.5)).ln();
        score += idf * tf * (BM25_K1 + 1.0)
            / (tf + BM25_K1 * (1.0 - BM25_B + BM25_B * doc.len() as f64 / avg));
    }
    score
}

/// Full-matrix Levenshtein DP, the reference the fast single-row version
/// must agree with exactly.
fn levenshtein_oracle(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut dp = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in dp.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=b.len() {
        dp[0][j] = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            dp[i][j] = (dp[i - 1][j] + 1).min(dp[i][j - 1] + 1).min(dp[i - 1][j - 1] + cost);
        }
    }
    dp[a.len()][b.len()]
}

fn random_name(rng: &mut ChaCha8Rng, max_len: usize) -> String {
    let alphabet: Vec<char> = "abcdefgh-_.0123".chars().collect();
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

#[test]
fn bm25_agrees_with_closed_form_oracle() {
    let raw_docs = [
        ("a", vec!["rust", "parser", "parser"]),
        ("b", vec!["game", "engine"]),
        ("c", vec!["parser", "for", "game", "saves", "and", "rust", "types"]),
    ];
    let corpus = Corpus::build(
        raw_docs
            .iter()
            .map(|(id, toks)| ((*id).to_owned(), toks.iter().map(|t| (*t).to_owned()).collect())),
    )
    .unwrap();

    for query in [vec!["parser"], vec!["rust", "parser"], vec!["engine"], vec!["absent"]] {
        for (doc_id, _) in &raw_docs {
            let expected = bm25_oracle(&raw_docs, &query, doc_id);
            let owned: Vec<String> = query.iter().map(|t| (*t).to_owned()).collect();
            let got = bm25_score(&corpus, &owned, doc_id).unwrap();
            let tol = 1e-9 * expected.abs().max(1.0);
            assert!(
                (got - expected).abs() <= tol,
                "query {query:?} on {doc_id}: got {got}, want {expected}"
            );
            assert!(got >= 0.0);
        }
    }
}

#[test]
fn name_similarity_matches_dp_oracle_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xed17);
    for _ in 0..2000 {
        let a = random_name(&mut rng, 30);
        let b = random_name(&mut rng, 30);
        let (na, nb) = (normalize_name(&a), normalize_name(&b));
        assert_eq!(levenshtein(&na, &nb), levenshtein_oracle(&na, &nb), "{a:?} vs {b:?}");
        let max_len = na.chars().count().max(nb.chars().count());
        let expected = if max_len == 0 {
            1.0
        } else {
            1.0 - levenshtein_oracle(&na, &nb) as f64 / max_len as f64
        };
        assert_eq!(name_similarity(&a, &b), expected, "{a:?} vs {b:?}");
    }
}

#[test]
fn analytic_gradients_match_central_finite_differences() {
    let dim = 6;
    let batch: Vec<(SparseVector, bool)> = vec![
        (SparseVector { dim, entries: vec![(0, 0.8), (2, 0.5)] }, true),
        (SparseVector { dim, entries: vec![(1, 1.0)] }, false),
        (SparseVector { dim, entries: vec![(2, 0.4), (3, 0.9)] }, true),
        (SparseVector { dim, entries: vec![(4, 0.7), (5, 0.2)] }, false),
        (SparseVector { dim, entries: vec![(0, 0.3), (5, 0.6)] }, true),
    ];
    let clf = SpamClassifier::new(dim, 5, 1234);
    let analytic = clf.gradients(&batch).unwrap().flatten();
    let params = clf.params();
    let h = 1e-6;
    for (i, &p) in params.iter().enumerate() {
        let mut plus = clf.clone();
        let mut minus = clf.clone();
        let mut pp = params.clone();
        pp[i] = p + h;
        plus.set_params(&pp).unwrap();
        pp[i] = p - h;
        minus.set_params(&pp).unwrap();
        let numeric = (plus.loss(&batch).unwrap() - minus.loss(&batch).unwrap()) / (2.0 * h);
        let denom = analytic[i].abs().max(numeric.abs()).max(1e-8);
        assert!(
            (analytic[i] - numeric).abs() / denom <= 1e-5,
            "param {i}: analytic {} vs numeric {numeric}",
            analytic[i]
        );
    }
}

#[test]
fn separable_toy_set_reaches_full_accuracy_within_500_epochs() {
    // 20 points in 2d, separable by the first coordinate.
    let dim = 2;
    let mut batch = Vec::new();
    for i in 0..10 {
        let x = 0.6 + 0.04 * i as f64;
        batch.push((SparseVector { dim, entries: vec![(0, x), (1, 0.2)] }, true));
        batch.push((SparseVector { dim, entries: vec![(0, x - 0.55), (1, 0.25)] }, false));
    }
    let mut clf = SpamClassifier::new(dim, 8, 7);
    clf.train(&batch, &TrainOptions { epochs: 500, learning_rate: 0.8 }).unwrap();
    for (x, label) in &batch {
        assert_eq!(clf.predict(x).unwrap(), *label, "misclassified {x:?}");
    }
}
