//! Tokenization of caption text.
//!
//! Captions are lowercased and split into word, identity, and punctuation
//! tokens. Identity tokens are standalone words matching `p` followed by
//! digits (case-insensitive), e.g. `P1`, `p12`. Tokenization is total and
//! deterministic; `detokenize` is its canonical inverse.

use std::fmt;

/// Reserved in-memory surface for a blank in a fill-in-the-blanks captionset.
/// Contains `[`/`]`, which tokenize always splits, so no caption text can
/// collide with it.
pub const BLANK_MARKER: &str = "[blank]";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Word,
    /// Identity token carrying its label index (always >= 1).
    Identity(u32),
    Punctuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    surface: String,
    kind: TokenKind,
}

impl Token {
    pub fn word(surface: impl Into<String>) -> Self {
        Self {
            surface: surface.into(),
            kind: TokenKind::Word,
        }
    }

    pub fn identity(index: u32) -> Self {
        debug_assert!(index >= 1);
        Self {
            surface: format!("p{index}"),
            kind: TokenKind::Identity(index),
        }
    }

    pub fn punctuation(ch: char) -> Self {
        Self {
            surface: ch.to_string(),
            kind: TokenKind::Punctuation,
        }
    }

    /// The blank placeholder used by fill-in-the-blanks captionsets.
    pub fn blank() -> Self {
        Self::word(BLANK_MARKER)
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn kind(&self) -> TokenKind {
        self.kind
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.kind, TokenKind::Identity(_))
    }

    pub fn identity_index(&self) -> Option<u32> {
        match self.kind {
            TokenKind::Identity(i) => Some(i),
            _ => None,
        }
    }

    pub fn is_punctuation(&self) -> bool {
        self.kind == TokenKind::Punctuation
    }

    pub fn is_blank(&self) -> bool {
        self.kind == TokenKind::Word && self.surface == BLANK_MARKER
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.surface)
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '\'' || c == '\u{2019}' || c == '-'
}

/// Parses an identity label from a lowercased word: `p` followed by one or
/// more digits, index >= 1.
pub(crate) fn parse_identity_word(word: &str) -> Option<u32> {
    let digits = word.strip_prefix('p')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse::<u32>().ok().filter(|&i| i >= 1)
}

/// Splits a caption into lowercased tokens. Whitespace separates tokens,
/// punctuation characters become single-character punctuation tokens, and
/// standalone `p<digits>` words become identity tokens. Empty input yields
/// an empty sequence.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut word = String::new();
    for ch in text.to_lowercase().chars() {
        if ch.is_whitespace() {
            flush_word(&mut word, &mut tokens);
        } else if is_word_char(ch) {
            word.push(ch);
        } else {
            flush_word(&mut word, &mut tokens);
            tokens.push(Token::punctuation(ch));
        }
    }
    flush_word(&mut word, &mut tokens);
    tokens
}

fn flush_word(word: &mut String, tokens: &mut Vec<Token>) {
    if word.is_empty() {
        return;
    }
    let token = match parse_identity_word(word) {
        Some(index) => Token::identity(index),
        None => Token::word(word.clone()),
    };
    tokens.push(token);
    word.clear();
}

/// Canonical inverse of `tokenize`: words joined by single spaces,
/// punctuation attached to the preceding token, identity tokens rendered
/// uppercase (`P1`).
pub fn detokenize(tokens: &[Token]) -> String {
    let mut out = String::new();
    for token in tokens {
        match token.kind {
            TokenKind::Punctuation => out.push_str(&token.surface),
            TokenKind::Identity(i) => {
                if !out.is_empty() {
                    out.push(' ');
                }
                out.push('P');
                out.push_str(&i.to_string());
            }
            TokenKind::Word => {
                if !out.is_empty() {
                    out.push(' ');
                }
                out.push_str(&token.surface);
            }
        }
    }
    out
}
