//! Text analysis primitives used by the detectors.
//!
//! Everything here is deterministic: same inputs (and, for training, same
//! seed) produce identical outputs. No I/O beyond the assets bundled into
//! the crate.

mod background;
mod classifier;
mod corpus;
mod error;
mod extract;
mod similarity;
mod tfidf;
mod tokenize;

pub use background::background_documents;
pub use classifier::{
    bundled_spam_corpus, parse_spam_corpus, Gradients, SpamClassifier, SpamModelFile,
    TrainOptions, DEFAULT_HIDDEN_DIM, DEFAULT_THRESHOLD,
};
pub use corpus::{bm25_score, relevance, Corpus, BM25_B, BM25_K1};
pub use error::TextkitError;
pub use extract::{extract_commands, extract_links};
pub use similarity::{levenshtein, name_similarity, normalize_name, readme_similarity};
pub use tfidf::{SparseVector, TfIdfModel};
pub use tokenize::{keywords_from, tokenize};
