//! Coarse lexical classes over caption tokens.
//!
//! Stands in for a full dependency parse: class assignment is lexicon
//! lookup first, then morphological heuristics (inflected forms of known
//! verb stems, `-ly` adverbs excluded as function words), defaulting to
//! noun for unknown open-class words.

use crate::lexicon::Lexicon;
use crate::morph;
use crate::token::{Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenClass {
    Noun,
    Verb,
    Adjective,
    Identity,
    Function,
    Punct,
}

/// Assigns exactly one class per token, aligned with the input sequence.
pub fn tag_tokens(tokens: &[Token], lex: &Lexicon) -> Vec<TokenClass> {
    tokens.iter().map(|t| tag_token(t, lex)).collect()
}

fn tag_token(token: &Token, lex: &Lexicon) -> TokenClass {
    match token.kind() {
        TokenKind::Identity(_) => TokenClass::Identity,
        TokenKind::Punctuation => TokenClass::Punct,
        TokenKind::Word => {
            let w = token.surface();
            if lex.is_function(w) {
                TokenClass::Function
            } else if lex.is_verb(w) {
                TokenClass::Verb
            } else if lex.is_adjective(w) {
                TokenClass::Adjective
            } else if morph::verb_lemma(w, lex.verbs()).is_some() {
                TokenClass::Verb
            } else if w.len() > 3 && w.ends_with("ly") {
                TokenClass::Function
            } else {
                TokenClass::Noun
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::token::tokenize;

    fn classes(text: &str) -> Vec<TokenClass> {
        tag_tokens(&tokenize(text), Lexicon::bundled())
    }

    #[test]
    fn tags_identities_verbs_and_nouns() {
        assert_eq!(
            classes("p1 carries p2"),
            vec![TokenClass::Identity, TokenClass::Verb, TokenClass::Identity]
        );
    }

    #[test]
    fn tags_function_adjective_noun() {
        assert_eq!(
            classes("the unconscious man"),
            vec![TokenClass::Function, TokenClass::Adjective, TokenClass::Noun]
        );
    }

    #[test]
    fn empty_input_yields_empty_tags() {
        assert!(classes("").is_empty());
    }

    #[test]
    fn inflected_verbs_tag_as_verbs() {
        assert_eq!(classes("running"), vec![TokenClass::Verb]);
        assert_eq!(classes("stopped"), vec![TokenClass::Verb]);
    }

    #[test]
    fn ly_adverbs_are_function_words() {
        assert_eq!(classes("slowly"), vec![TokenClass::Function]);
        // Lexicon lookup wins over the suffix heuristic.
        assert_eq!(classes("elderly"), vec![TokenClass::Adjective]);
    }

    #[test]
    fn unknown_words_default_to_noun() {
        assert_eq!(classes("zorp"), vec![TokenClass::Noun]);
        assert_eq!(classes("someone"), vec![TokenClass::Noun]);
    }

    #[test]
    fn punctuation_tags_as_punct() {
        assert_eq!(
            classes("yes ."),
            vec![TokenClass::Noun, TokenClass::Punct]
        );
    }
}
