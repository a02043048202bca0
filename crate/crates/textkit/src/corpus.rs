//! Okapi BM25 scoring over a fixed document corpus, plus the normalized
//! keyword relevance built on top of it.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::{tokenize, TextkitError};

pub const BM25_K1: f64 = 1.2;
pub const BM25_B: f64 = 0.75;

#[derive(Debug)]
struct Doc {
    id: String,
    tf: HashMap<String, usize>,
    len: usize,
}

/// An immutable bag-of-words corpus with per-document term frequencies and
/// corpus-level document frequencies.
#[derive(Debug)]
pub struct Corpus {
    docs: Vec<Doc>,
    by_id: HashMap<String, usize>,
    /// Token-list fingerprint -> candidate doc indices, for content lookup.
    by_tokens: HashMap<u64, Vec<usize>>,
    tokens_of: Vec<Vec<String>>,
    df: HashMap<String, usize>,
    avg_len: f64,
}

fn fingerprint(tokens: &[String]) -> u64 {
    let mut h = DefaultHasher::new();
    tokens.hash(&mut h);
    h.finish()
}

impl Corpus {
    /// Build a corpus from `(doc_id, tokens)` pairs. Ids must be unique.
    pub fn build(
        docs: impl IntoIterator<Item = (String, Vec<String>)>,
    ) -> Result<Self, TextkitError> {
        let mut corpus = Corpus {
            docs: Vec::new(),
            by_id: HashMap::new(),
            by_tokens: HashMap::new(),
            tokens_of: Vec::new(),
            df: HashMap::new(),
            avg_len: 0.0,
        };
        let mut total_len = 0usize;
        for (id, tokens) in docs {
            if corpus.by_id.contains_key(&id) {
                return Err(TextkitError::DuplicateDoc(id));
            }
            let idx = corpus.docs.len();
            let mut tf: HashMap<String, usize> = HashMap::new();
            for t in &tokens {
                *tf.entry(t.clone()).or_insert(0) += 1;
            }
            for t in tf.keys() {
                *corpus.df.entry(t.clone()).or_insert(0) += 1;
            }
            total_len += tokens.len();
            corpus.by_id.insert(id.clone(), idx);
            corpus.by_tokens.entry(fingerprint(&tokens)).or_default().push(idx);
            corpus.docs.push(Doc { id, tf, len: tokens.len() });
            corpus.tokens_of.push(tokens);
        }
        if !corpus.docs.is_empty() {
            corpus.avg_len = total_len as f64 / corpus.docs.len() as f64;
        }
        Ok(corpus)
    }

    /// Build a corpus from raw texts, tokenizing each.
    pub fn from_texts<'a>(
        docs: impl IntoIterator<Item = (String, &'a str)>,
    ) -> Result<Self, TextkitError> {
        Corpus::build(docs.into_iter().map(|(id, text)| (id, tokenize(text))))
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn avg_doc_len(&self) -> f64 {
        self.avg_len
    }

    pub fn contains(&self, doc_id: &str) -> bool {
        self.by_id.contains_key(doc_id)
    }

    /// Document frequency of a token.
    pub fn df(&self, token: &str) -> usize {
        self.df.get(token).copied().unwrap_or(0)
    }

    /// Inverse document frequency: `ln(1 + (N - df + 0.5) / (df + 0.5))`.
    pub fn idf(&self, token: &str) -> f64 {
        let n = self.docs.len() as f64;
        let df = self.df(token) as f64;
        (1.0 + (n - df + 0.5) / (df + 0.5)).ln()
    }

    /// Find a registered document whose token list equals `tokens`.
    pub fn find_doc_by_tokens(&self, tokens: &[String]) -> Option<&str> {
        self.by_tokens.get(&fingerprint(tokens)).and_then(|candidates| {
            candidates
                .iter()
                .find(|&&idx| self.tokens_of[idx] == tokens)
                .map(|&idx| self.docs[idx].id.as_str())
        })
    }

    fn doc(&self, doc_id: &str) -> Result<&Doc, TextkitError> {
        self.by_id
            .get(doc_id)
            .map(|&idx| &self.docs[idx])
            .ok_or_else(|| TextkitError::DocNotFound(doc_id.to_owned()))
    }

    /// BM25 term score against an explicit (tf, len) pair, reusing this
    /// corpus's document frequencies and average length.
    fn term_score(&self, token: &str, tf: usize, doc_len: usize) -> f64 {
        if tf == 0 {
            return 0.0;
        }
        let tf = tf as f64;
        let len_norm = if self.avg_len > 0.0 { doc_len as f64 / self.avg_len } else { 1.0 };
        let denom = tf + BM25_K1 * (1.0 - BM25_B + BM25_B * len_norm);
        self.idf(token) * tf * (BM25_K1 + 1.0) / denom
    }
}

/// Okapi BM25 score of `query_tokens` against the registered document
/// `doc_id` (k1 = 1.2, b = 0.75). Always non-negative.
pub fn bm25_score(corpus: &Corpus, query_tokens: &[String], doc_id: &str) -> Result<f64, TextkitError> {
    let doc = corpus.doc(doc_id)?;
    let mut score = 0.0;
    for token in query_tokens {
        let tf = doc.tf.get(token).copied().unwrap_or(0);
        score += corpus.term_score(token, tf, doc.len);
    }
    Ok(score)
}

/// Relevance of `keyword` to `readme`, normalized to `[0, 1]`.
///
/// The raw BM25 score of the keyword against the readme is divided by the
/// score the same keyword achieves against a synthetic document made of the
/// keyword repeated up to the corpus average length — i.e. the best score the
/// keyword could plausibly reach — then clamped. A keyword that never occurs
/// in the readme scores 0. The readme must be registered in the corpus.
pub fn relevance(keyword: &str, readme: &str, corpus: &Corpus) -> Result<f64, TextkitError> {
    let query = tokenize(keyword);
    if query.is_empty() {
        return Ok(0.0);
    }
    let readme_tokens = tokenize(readme);
    let doc_id = corpus
        .find_doc_by_tokens(&readme_tokens)
        .ok_or_else(|| TextkitError::DocNotFound("<readme text>".to_owned()))?
        .to_owned();
    let raw = bm25_score(corpus, &query, &doc_id)?;
    if raw <= 0.0 {
        return Ok(0.0);
    }

    // Synthetic best case: the keyword's own tokens, repeated whole, until
    // the document reaches the corpus average length.
    let repeats = if corpus.avg_doc_len() > 0.0 {
        (corpus.avg_doc_len() / query.len() as f64).ceil().max(1.0) as usize
    } else {
        1
    };
    let synth_len = query.len() * repeats;
    let mut query_tf: HashMap<&str, usize> = HashMap::new();
    for t in &query {
        *query_tf.entry(t.as_str()).or_insert(0) += 1;
    }
    let mut self_max = 0.0;
    for t in &query {
        let tf = query_tf[t.as_str()] * repeats;
        self_max += corpus.term_score(t, tf, synth_len);
    }
    if self_max <= 0.0 {
        return Ok(0.0);
    }
    Ok((raw / self_max).clamp(0.0, 1.0))
}
