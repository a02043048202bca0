//! A small feed-forward spam classifier: one ReLU hidden layer, sigmoid
//! output, trained with full-batch gradient descent on binary cross-entropy.
//!
//! Training is single-threaded and fully determined by the init seed, so two
//! runs with the same corpus and seed produce identical weights.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{SparseVector, TextkitError, TfIdfModel};

/// Hidden width used when callers do not pick one.
pub const DEFAULT_HIDDEN_DIM: usize = 64;

/// Decision threshold used when callers do not pick one.
pub const DEFAULT_THRESHOLD: f64 = 0.5;

const P_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainOptions {
    pub epochs: usize,
    pub learning_rate: f64,
}

impl Default for TrainOptions {
    fn default() -> Self {
        TrainOptions { epochs: 300, learning_rate: 0.8 }
    }
}

/// Gradients of the mean binary cross-entropy, same shapes as the parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

impl Gradients {
    /// Parameters flattened in the canonical order `w1, b1, w2, b2`.
    pub fn flatten(&self) -> Vec<f64> {
        let mut out = self.w1.clone();
        out.extend_from_slice(&self.b1);
        out.extend_from_slice(&self.w2);
        out.push(self.b2);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpamClassifier {
    input_dim: usize,
    hidden_dim: usize,
    /// Row-major `hidden_dim x input_dim`.
    w1: Vec<f64>,
    b1: Vec<f64>,
    w2: Vec<f64>,
    b2: f64,
    threshold: f64,
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

impl SpamClassifier {
    /// Fresh classifier with seeded uniform init (`+-1/sqrt(fan_in)`) and the
    /// default decision threshold.
    pub fn new(input_dim: usize, hidden_dim: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w1_bound = 1.0 / (input_dim.max(1) as f64).sqrt();
        let w2_bound = 1.0 / (hidden_dim.max(1) as f64).sqrt();
        let w1 = (0..hidden_dim * input_dim).map(|_| rng.gen_range(-w1_bound..w1_bound)).collect();
        let w2 = (0..hidden_dim).map(|_| rng.gen_range(-w2_bound..w2_bound)).collect();
        SpamClassifier {
            input_dim,
            hidden_dim,
            w1,
            b1: vec![0.0; hidden_dim],
            w2,
            b2: 0.0,
            threshold: DEFAULT_THRESHOLD,
        }
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn hidden_dim(&self) -> usize {
        self.hidden_dim
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn set_threshold(&mut self, threshold: f64) {
        self.threshold = threshold;
    }

    fn check_dim(&self, x: &SparseVector) -> Result<(), TextkitError> {
        if x.dim != self.input_dim {
            return Err(TextkitError::DimensionMismatch { expected: self.input_dim, got: x.dim });
        }
        Ok(())
    }

    fn hidden_pre_activation(&self, x: &SparseVector) -> Vec<f64> {
        let mut z1 = self.b1.clone();
        for &(j, v) in &x.entries {
            let row_offset = j; // column j across all rows
            for (h, z) in z1.iter_mut().enumerate() {
                *z += self.w1[h * self.input_dim + row_offset] * v;
            }
        }
        z1
    }

    /// Spam probability in `(0, 1)`.
    pub fn predict_proba(&self, x: &SparseVector) -> Result<f64, TextkitError> {
        self.check_dim(x)?;
        let z1 = self.hidden_pre_activation(x);
        let mut z2 = self.b2;
        for (h, &z) in z1.iter().enumerate() {
            if z > 0.0 {
                z2 += self.w2[h] * z;
            }
        }
        Ok(sigmoid(z2))
    }

    /// Hard decision: probability at or above the threshold.
    pub fn predict(&self, x: &SparseVector) -> Result<bool, TextkitError> {
        Ok(self.predict_proba(x)? >= self.threshold)
    }

    /// Mean binary cross-entropy over a batch.
    pub fn loss(&self, data: &[(SparseVector, bool)]) -> Result<f64, TextkitError> {
        if data.is_empty() {
            return Err(TextkitError::InvalidInput("loss over an empty batch".into()));
        }
        let mut total = 0.0;
        for (x, label) in data {
            let p = self.predict_proba(x)?.clamp(P_CLAMP, 1.0 - P_CLAMP);
            total -= if *label { p.ln() } else { (1.0 - p).ln() };
        }
        Ok(total / data.len() as f64)
    }

    /// Analytic gradients of [`loss`](Self::loss) over a batch.
    pub fn gradients(&self, data: &[(SparseVector, bool)]) -> Result<Gradients, TextkitError> {
        if data.is_empty() {
            return Err(TextkitError::InvalidInput("gradients over an empty batch".into()));
        }
        let mut g = Gradients {
            w1: vec![0.0; self.w1.len()],
            b1: vec![0.0; self.hidden_dim],
            w2: vec![0.0; self.hidden_dim],
            b2: 0.0,
        };
        for (x, label) in data {
            self.check_dim(x)?;
            let z1 = self.hidden_pre_activation(x);
            let mut z2 = self.b2;
            for (h, &z) in z1.iter().enumerate() {
                if z > 0.0 {
                    z2 += self.w2[h] * z;
                }
            }
            let p = sigmoid(z2);
            let dz2 = p - f64::from(*label);
            g.b2 += dz2;
            for (h, &z) in z1.iter().enumerate() {
                if z > 0.0 {
                    g.w2[h] += dz2 * z;
                    let dz1 = dz2 * self.w2[h];
                    g.b1[h] += dz1;
                    for &(j, v) in &x.entries {
                        g.w1[h * self.input_dim + j] += dz1 * v;
                    }
                }
            }
        }
        let scale = 1.0 / data.len() as f64;
        for v in g.w1.iter_mut().chain(g.b1.iter_mut()).chain(g.w2.iter_mut()) {
            *v *= scale;
        }
        g.b2 *= scale;
        Ok(g)
    }

    /// Full-batch gradient descent. Requires a non-empty batch containing at
    /// least one example of each class, all with matching dimensions.
    pub fn train(
        &mut self,
        data: &[(SparseVector, bool)],
        opts: &TrainOptions,
    ) -> Result<(), TextkitError> {
        if data.is_empty() {
            return Err(TextkitError::InvalidInput("training requires a non-empty batch".into()));
        }
        let spam = data.iter().filter(|(_, label)| *label).count();
        if spam == 0 || spam == data.len() {
            return Err(TextkitError::InvalidInput(
                "training requires at least one example of each class".into(),
            ));
        }
        for (x, _) in data {
            self.check_dim(x)?;
        }
        for _ in 0..opts.epochs {
            let g = self.gradients(data)?;
            let lr = opts.learning_rate;
            for (w, gw) in self.w1.iter_mut().zip(&g.w1) {
                *w -= lr * gw;
            }
            for (b, gb) in self.b1.iter_mut().zip(&g.b1) {
                *b -= lr * gb;
            }
            for (w, gw) in self.w2.iter_mut().zip(&g.w2) {
                *w -= lr * gw;
            }
            self.b2 -= lr * g.b2;
        }
        Ok(())
    }

    /// Parameters flattened in the canonical order `w1, b1, w2, b2`.
    pub fn params(&self) -> Vec<f64> {
        let mut out = self.w1.clone();
        out.extend_from_slice(&self.b1);
        out.extend_from_slice(&self.w2);
        out.push(self.b2);
        out
    }

    /// Replace all parameters from the canonical flat order.
    pub fn set_params(&mut self, flat: &[f64]) -> Result<(), TextkitError> {
        let expected = self.w1.len() + self.b1.len() + self.w2.len() + 1;
        if flat.len() != expected {
            return Err(TextkitError::DimensionMismatch { expected, got: flat.len() });
        }
        let (w1, rest) = flat.split_at(self.w1.len());
        let (b1, rest) = rest.split_at(self.b1.len());
        let (w2, b2) = rest.split_at(self.w2.len());
        self.w1.copy_from_slice(w1);
        self.b1.copy_from_slice(b1);
        self.w2.copy_from_slice(w2);
        self.b2 = b2[0];
        Ok(())
    }
}

/// Versioned weight file bundling the vectorizer and the classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpamModelFile {
    pub schema_version: u32,
    pub tfidf: TfIdfModel,
    pub classifier: SpamClassifier,
}

impl SpamModelFile {
    pub const SCHEMA_VERSION: u32 = 1;

    pub fn new(tfidf: TfIdfModel, classifier: SpamClassifier) -> Self {
        SpamModelFile { schema_version: Self::SCHEMA_VERSION, tfidf, classifier }
    }

    pub fn to_json_string(&self) -> Result<String, TextkitError> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json_str(s: &str) -> Result<Self, TextkitError> {
        let file: SpamModelFile = serde_json::from_str(s)?;
        if file.schema_version != Self::SCHEMA_VERSION {
            return Err(TextkitError::InvalidInput(format!(
                "unsupported spam model schema_version {}, expected {}",
                file.schema_version,
                Self::SCHEMA_VERSION
            )));
        }
        if file.classifier.input_dim() != file.tfidf.vocab_size() {
            return Err(TextkitError::DimensionMismatch {
                expected: file.tfidf.vocab_size(),
                got: file.classifier.input_dim(),
            });
        }
        Ok(file)
    }

    /// Spam probability of a raw text through the bundled vectorizer.
    pub fn score_text(&self, text: &str) -> Result<f64, TextkitError> {
        self.classifier.predict_proba(&self.tfidf.transform(&crate::tokenize(text)))
    }

    /// Train a model on a labeled text corpus: fit the vectorizer on the
    /// texts, then fit the classifier with the given seed and options.
    pub fn train_from_corpus(
        corpus: &[(String, bool)],
        hidden_dim: usize,
        seed: u64,
        opts: &TrainOptions,
    ) -> Result<Self, TextkitError> {
        let docs: Vec<Vec<String>> = corpus.iter().map(|(t, _)| crate::tokenize(t)).collect();
        let tfidf = TfIdfModel::fit(&docs)?;
        let data: Vec<(SparseVector, bool)> = docs
            .iter()
            .zip(corpus)
            .map(|(tokens, (_, label))| (tfidf.transform(tokens), *label))
            .collect();
        let mut classifier = SpamClassifier::new(tfidf.vocab_size(), hidden_dim, seed);
        classifier.train(&data, opts)?;
        Ok(SpamModelFile::new(tfidf, classifier))
    }

    /// Train on the corpus bundled with this crate. This is the model used
    /// when a scan needs the spam classifier and no weight file is supplied.
    pub fn train_default(seed: u64) -> Result<Self, TextkitError> {
        Self::train_from_corpus(
            bundled_spam_corpus(),
            DEFAULT_HIDDEN_DIM,
            seed,
            &TrainOptions::default(),
        )
    }
}

/// Parse a `{"text": ..., "label": 0|1}` JSON-lines training corpus.
/// Labels may be integers or booleans; blank lines are skipped.
pub fn parse_spam_corpus(text: &str) -> Result<Vec<(String, bool)>, TextkitError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Line {
        text: String,
        label: serde_json::Value,
    }
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parsed: Line = serde_json::from_str(line).map_err(|e| {
            TextkitError::InvalidInput(format!("corpus line {}: {e}", lineno + 1))
        })?;
        let label = match &parsed.label {
            serde_json::Value::Bool(b) => *b,
            serde_json::Value::Number(n) if n.as_u64() == Some(0) => false,
            serde_json::Value::Number(n) if n.as_u64() == Some(1) => true,
            other => {
                return Err(TextkitError::InvalidInput(format!(
                    "corpus line {}: label must be 0, 1, or a boolean, got {other}",
                    lineno + 1
                )))
            }
        };
        out.push((parsed.text, label));
    }
    if out.is_empty() {
        return Err(TextkitError::InvalidInput("training corpus is empty".into()));
    }
    Ok(out)
}

/// The training corpus bundled with this crate, used to train the default
/// spam model when no weight file is supplied.
pub fn bundled_spam_corpus() -> &'static [(String, bool)] {
    static CORPUS: OnceLock<Vec<(String, bool)>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        parse_spam_corpus(include_str!("../assets/spam_train.jsonl"))
            .expect("bundled spam corpus must parse")
    })
}
