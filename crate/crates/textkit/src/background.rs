//! A fixed background corpus of 200 synthetic readme documents.
//!
//! BM25 relevance needs corpus-level document frequencies; a scan batch of
//! one or two repositories is far too small to estimate them. These documents
//! are mixed into every relevance corpus so that common words ("the",
//! "install", "license", ...) keep low IDF while genuinely topical terms stay
//! discriminative. Generation is seeded and fully deterministic, so relevance
//! scores are reproducible across runs and machines.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Id prefix of every background document.
pub const BACKGROUND_PREFIX: &str = "background/";

const GLUE: [&str; 38] = [
    "the", "this", "for", "with", "and", "you", "can", "use", "from", "into", "your", "how",
    "library", "tool", "project", "simple", "fast", "small", "support", "supports", "install",
    "installation", "usage", "example", "examples", "build", "run", "test", "tests", "see",
    "documentation", "docs", "license", "mit", "api", "version", "release", "contributing",
];

const THEMES: [&[&str]; 10] = [
    &["web", "server", "http", "router", "middleware", "request", "response", "handler", "rest",
      "json", "endpoint", "session", "template", "async", "framework"],
    &["game", "engine", "render", "renderer", "sprite", "texture", "shader", "physics", "entity",
      "scene", "audio", "input", "frame", "2d", "3d"],
    &["cli", "command", "line", "terminal", "argument", "flag", "subcommand", "shell",
      "completion", "output", "color", "prompt", "interactive", "pipe", "stdin"],
    &["database", "query", "sql", "table", "index", "transaction", "schema", "migration",
      "connection", "pool", "storage", "key", "value", "cache", "record"],
    &["machine", "learning", "model", "training", "dataset", "tensor", "gradient", "neural",
      "network", "inference", "classifier", "feature", "accuracy", "layer", "optimizer"],
    &["parser", "grammar", "syntax", "token", "lexer", "ast", "tree", "node", "expression",
      "compiler", "language", "parse", "error", "recovery", "stream"],
    &["network", "socket", "protocol", "packet", "tcp", "udp", "client", "connection", "peer",
      "message", "broadcast", "latency", "retry", "timeout", "tls"],
    &["crypto", "encryption", "hash", "signature", "keypair", "cipher", "random", "secret",
      "secure", "aes", "sha256", "nonce", "verify", "token", "auth"],
    &["deploy", "docker", "container", "kubernetes", "pipeline", "ci", "cd", "workflow", "build",
      "release", "artifact", "registry", "config", "secret", "monitor"],
    &["image", "pixel", "filter", "resize", "crop", "png", "jpeg", "color", "channel", "buffer",
      "decode", "encode", "format", "compression", "thumbnail"],
];

/// The 200 background documents as `(doc_id, tokens)` pairs, ids
/// `background/000` through `background/199`. Deterministic.
pub fn background_documents() -> Vec<(String, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x464f_5247);
    let mut docs = Vec::with_capacity(200);
    for i in 0..200 {
        let theme = THEMES[i % THEMES.len()];
        let len = 40 + (i * 7) % 80;
        let mut tokens = Vec::with_capacity(len);
        for _ in 0..len {
            let bank: &[&str] = if rng.gen_bool(0.55) { &GLUE } else { theme };
            tokens.push((*bank.choose(&mut rng).unwrap()).to_owned());
        }
        docs.push((format!("{BACKGROUND_PREFIX}{i:03}"), tokens));
    }
    docs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactly_two_hundred_documents() {
        let docs = background_documents();
        assert_eq!(docs.len(), 200);
        assert_eq!(docs[0].0, "background/000");
        assert_eq!(docs[199].0, "background/199");
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(background_documents(), background_documents());
    }

    #[test]
    fn documents_are_non_trivial(){
        for (_, tokens) in background_documents() {
            assert!(tokens.len() >= 40);
        }
    }
}
