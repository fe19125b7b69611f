use serde::{Deserialize, Serialize};

/// A lowercased bag of unigram tokens.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizedDoc {
    pub doc_id: String,
    pub tokens: Vec<String>,
}

impl TokenizedDoc {
    pub fn new(doc_id: impl Into<String>, text: &str) -> Self {
        TokenizedDoc {
            doc_id: doc_id.into(),
            tokens: tokenize(text),
        }
    }

    pub fn from_tokens<S: Into<String>>(
        doc_id: impl Into<String>,
        tokens: impl IntoIterator<Item = S>,
    ) -> Self {
        TokenizedDoc {
            doc_id: doc_id.into(),
            tokens: tokens.into_iter().map(Into::into).collect(),
        }
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }
}

/// Split `text` into lowercase tokens.
///
/// Tokens are runs of letters and digits; an apostrophe or hyphen is kept
/// only between two such characters. Typographic apostrophes are folded to
/// `'`. Tokens made only of digits are dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    let chars: Vec<char> = text
        .chars()
        .flat_map(char::to_lowercase)
        .map(|c| if c == '\u{2019}' { '\'' } else { c })
        .collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        let joiner = matches!(c, '\'' | '-')
            && !current.is_empty()
            && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric());
        if c.is_alphanumeric() || joiner {
            current.push(c);
        } else if !current.is_empty() {
            push_token(&mut tokens, std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        push_token(&mut tokens, current);
    }
    tokens
}

fn push_token(tokens: &mut Vec<String>, token: String) {
    if !token.chars().all(|c| c.is_ascii_digit() || c.is_numeric()) {
        tokens.push(token);
    }
}
