//! Property tests for the text primitives.

use forgescan_textkit::{
    bm25_score, name_similarity, readme_similarity, tokenize, Corpus, TfIdfModel,
};
use proptest::prelude::*;

fn words() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec("[a-f]{2,6}", 0..40)
}

proptest! {
    #[test]
    fn bm25_scores_are_never_negative(
        doc_a in words(),
        doc_b in words(),
        query in prop::collection::vec("[a-f]{2,6}", 0..6),
    ) {
        let corpus = Corpus::build([
            ("a".to_owned(), doc_a),
            ("b".to_owned(), doc_b),
        ]).unwrap();
        for id in ["a", "b"] {
            prop_assert!(bm25_score(&corpus, &query, id).unwrap() >= 0.0);
        }
    }

    #[test]
    fn name_similarity_is_symmetric_self_identical_and_bounded(
        a in "[a-z0-9._-]{0,16}",
        b in "[a-z0-9._-]{0,16}",
    ) {
        let ab = name_similarity(&a, &b);
        prop_assert_eq!(ab, name_similarity(&b, &a));
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(name_similarity(&a, &a), 1.0);
    }

    #[test]
    fn readme_similarity_is_bounded_and_symmetric(
        a in ".{0,120}",
        b in ".{0,120}",
    ) {
        let ab = readme_similarity(&a, &b);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&ab));
        prop_assert_eq!(ab, readme_similarity(&b, &a));
    }

    #[test]
    fn tfidf_vectors_have_unit_norm_or_are_zero(
        docs in prop::collection::vec(words(), 1..6),
        probe in words(),
    ) {
        let model = TfIdfModel::fit(&docs).unwrap();
        let v = model.transform(&probe);
        let norm = v.l2_norm();
        prop_assert!(norm == 0.0 || (norm - 1.0).abs() < 1e-9, "norm was {norm}");
    }

    #[test]
    fn tokenize_output_is_lowercase_and_at_least_two_chars(text in ".{0,200}") {
        for token in tokenize(&text) {
            prop_assert!(token.chars().count() >= 2);
            prop_assert!(token.chars().all(|c| c.is_alphanumeric()));
            prop_assert_eq!(token.clone(), token.to_lowercase());
        }
    }
}
