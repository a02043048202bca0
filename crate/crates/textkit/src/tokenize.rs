/// Split text into lowercase tokens.
///
/// Tokens are maximal runs of alphanumeric characters (Unicode-aware);
/// everything else separates. Runs shorter than two characters are dropped.
/// Markdown is not interpreted, so the contents of code fences are tokenized
/// like any other text.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            current.extend(ch.to_lowercase());
        } else if !current.is_empty() {
            if current.chars().count() >= 2 {
                tokens.push(std::mem::take(&mut current));
            } else {
                current.clear();
            }
        }
    }
    if current.chars().count() >= 2 {
        tokens.push(current);
    }
    tokens
}

/// Assemble a repository's keyword set from its topics and description.
///
/// Topics are taken verbatim (lowercased); the description contributes its
/// tokens of length three or more. The result is duplicate-free, preserving
/// first-seen order.
pub fn keywords_from(topics: &[String], description: &str) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    let mut keywords = Vec::new();
    let mut push = |k: String| {
        if !k.is_empty() && seen.insert(k.clone()) {
            keywords.push(k);
        }
    };
    for topic in topics {
        push(topic.to_lowercase());
    }
    for token in tokenize(description) {
        if token.chars().count() >= 3 {
            push(token);
        }
    }
    keywords
}
