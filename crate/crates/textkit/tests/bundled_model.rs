//! End-to-end checks on the model trained from the bundled corpus.

use forgescan_textkit::{bundled_spam_corpus, tokenize, SpamModelFile};

#[test]
fn bundled_training_separates_the_corpus_and_generalizes() {
    let model = SpamModelFile::train_default(42).unwrap();

    // Training accuracy on the bundled corpus itself should be essentially
    // perfect for a model this size.
    let corpus = bundled_spam_corpus();
    let correct = corpus
        .iter()
        .filter(|(text, label)| {
            let p = model.score_text(text).unwrap();
            (p >= model.classifier.threshold()) == *label
        })
        .count();
    assert!(
        correct as f64 / corpus.len() as f64 >= 0.99,
        "train accuracy too low: {correct}/{}",
        corpus.len()
    );

    // Held-out texts in the same styles.
    let spam = "IMPORTANT! Your account may be suspended. Verify your login now at \
                https://gh-verify.example/confirm to keep access.";
    let ham = "Panic when parsing empty input on 1.2.0; backtrace attached at \
               https://gist.example/trace42, reproduces with cargo test on linux.";
    let p_spam = model.score_text(spam).unwrap();
    let p_ham = model.score_text(ham).unwrap();
    assert!(p_spam >= 0.5, "phishing text scored only {p_spam}");
    assert!(p_ham < 0.5, "bug report scored {p_ham}");
}

#[test]
fn default_training_is_reproducible_for_a_seed() {
    let a = SpamModelFile::train_default(7).unwrap();
    let b = SpamModelFile::train_default(7).unwrap();
    assert_eq!(a.to_json_string().unwrap(), b.to_json_string().unwrap());

    let text = "free bitcoin giveaway, claim at https://x.example/now";
    let ta = tokenize(text);
    assert_eq!(
        a.classifier.predict_proba(&a.tfidf.transform(&ta)).unwrap(),
        b.classifier.predict_proba(&b.tfidf.transform(&ta)).unwrap()
    );
}
