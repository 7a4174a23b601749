//! Rule-based scene-graph tuple extraction.
//!
//! A deterministic pattern grammar over coarse tags replaces the external
//! dependency-parser pipeline used by scene-graph caption metrics. Per
//! sentence it emits:
//!
//! - one object tuple per noun or identity head;
//! - one attribute tuple per adjective, attached to the nearest following
//!   noun inside its noun phrase, or to a copula subject (`X is ADJ`);
//! - one relation tuple per main verb, with the nearest preceding
//!   noun/identity as subject and the nearest following noun/identity as
//!   object; a preposition crossed on the way to the object folds into the
//!   relation lemma (`walk_towards`).
//!
//! Verbs are lemmatized and nouns de-pluralized so inflection differences
//! do not break tuple matching. Commas and conjunctions bound the scans.

use crate::caption::Captionset;
use crate::lexicon::Lexicon;
use crate::morph;
use crate::tag::{tag_tokens, TokenClass};
use crate::token::Token;
use crate::tuples::{SceneGraphTuple, TupleSet};

const SENTENCE_ENDERS: &[&str] = &[".", "!", "?"];

/// Extracts the scene-graph tuple set of a captionset. Deterministic:
/// identical input always yields an identical set.
pub fn extract_tuples(cs: &Captionset, lex: &Lexicon) -> TupleSet {
    let mut set = TupleSet::new();
    for caption in cs.captions() {
        let classes = tag_tokens(caption, lex);
        for (start, end) in sentence_spans(caption, &classes) {
            extract_sentence(&caption[start..end], &classes[start..end], lex, &mut set);
        }
    }
    set
}

fn sentence_spans(tokens: &[Token], classes: &[TokenClass]) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut start = 0;
    for (i, token) in tokens.iter().enumerate() {
        if classes[i] == TokenClass::Punct && SENTENCE_ENDERS.contains(&token.surface()) {
            if i > start {
                spans.push((start, i));
            }
            start = i + 1;
        }
    }
    if start < tokens.len() {
        spans.push((start, tokens.len()));
    }
    spans
}

fn head_lemma(token: &Token) -> String {
    if token.is_identity() {
        token.surface().to_string()
    } else {
        morph::depluralize(token.surface())
    }
}

fn is_head(class: TokenClass) -> bool {
    matches!(class, TokenClass::Noun | TokenClass::Identity)
}

fn extract_sentence(
    tokens: &[Token],
    classes: &[TokenClass],
    lex: &Lexicon,
    set: &mut TupleSet,
) {
    for (i, class) in classes.iter().enumerate() {
        match class {
            TokenClass::Noun | TokenClass::Identity => {
                set.insert(tuple(vec![head_lemma(&tokens[i])]));
            }
            TokenClass::Adjective => {
                if let Some(head) = attribute_head(tokens, classes, lex, i) {
                    set.insert(tuple(vec![head, tokens[i].surface().to_string()]));
                }
            }
            TokenClass::Verb => {
                relation_tuple(tokens, classes, lex, i, set);
            }
            _ => {}
        }
    }
}

/// Head noun for an adjective: scan right across the noun phrase
/// (adjectives and determiners only); failing that, scan left across
/// function words for a copula subject.
fn attribute_head(
    tokens: &[Token],
    classes: &[TokenClass],
    lex: &Lexicon,
    adj: usize,
) -> Option<String> {
    let mut j = adj + 1;
    while j < tokens.len() {
        match classes[j] {
            TokenClass::Noun | TokenClass::Identity => return Some(head_lemma(&tokens[j])),
            TokenClass::Adjective => j += 1,
            TokenClass::Function if lex.is_determiner(tokens[j].surface()) => j += 1,
            _ => break,
        }
    }
    let mut k = adj;
    while k > 0 {
        k -= 1;
        match classes[k] {
            TokenClass::Noun | TokenClass::Identity => return Some(head_lemma(&tokens[k])),
            TokenClass::Function | TokenClass::Adjective => continue,
            _ => return None,
        }
    }
    None
}

fn relation_tuple(
    tokens: &[Token],
    classes: &[TokenClass],
    lex: &Lexicon,
    verb: usize,
    set: &mut TupleSet,
) {
    // Subject: nearest preceding head. Crosses clause markers so shared
    // subjects survive coordination; stops at punctuation.
    let mut subject = None;
    for k in (0..verb).rev() {
        if is_head(classes[k]) {
            subject = Some(head_lemma(&tokens[k]));
            break;
        }
        if classes[k] == TokenClass::Punct {
            break;
        }
    }
    let Some(subject) = subject else {
        return;
    };

    // Object: nearest following head within the clause. Conjunctions,
    // punctuation, and further verbs end the window; the first preposition
    // crossed is folded into the relation lemma.
    let mut object = None;
    let mut prep: Option<String> = None;
    for k in verb + 1..tokens.len() {
        match classes[k] {
            TokenClass::Noun | TokenClass::Identity => {
                object = Some(head_lemma(&tokens[k]));
                break;
            }
            TokenClass::Punct | TokenClass::Verb => break,
            TokenClass::Function => {
                let w = tokens[k].surface();
                if lex.is_conjunction(w) {
                    break;
                }
                if prep.is_none() && lex.is_preposition(w) {
                    prep = Some(w.to_string());
                }
            }
            TokenClass::Adjective => {}
        }
    }

    let lemma = morph::verb_lemma(tokens[verb].surface(), lex.verbs())
        .unwrap_or_else(|| tokens[verb].surface().to_string());
    match object {
        Some(object) => {
            let relation = match prep {
                Some(p) => format!("{lemma}_{p}"),
                None => lemma,
            };
            set.insert(tuple(vec![subject, relation, object]));
        }
        None => {
            set.insert(tuple(vec![subject, lemma]));
        }
    }
}

fn tuple(slots: Vec<String>) -> SceneGraphTuple {
    SceneGraphTuple::new(slots).expect("extractor emits valid slots")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caption::Captionset;

    fn extract(texts: &[&str]) -> Vec<Vec<String>> {
        let cs = Captionset::from_texts("v0", texts).unwrap();
        extract_tuples(&cs, Lexicon::bundled()).to_slot_lists()
    }

    fn slots(items: &[&[&str]]) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = items
            .iter()
            .map(|t| t.iter().map(|s| s.to_string()).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn extracts_worked_example() {
        assert_eq!(
            extract(&["P1 carries P2. P2 is unconscious"]),
            slots(&[
                &["p1"],
                &["p2"],
                &["p1", "carry", "p2"],
                &["p2", "unconscious"],
            ])
        );
    }

    #[test]
    fn empty_captionset_yields_no_tuples() {
        assert!(extract(&[""]).is_empty());
    }

    #[test]
    fn folds_preposition_into_relation() {
        assert_eq!(
            extract(&["P1 walks towards P2"]),
            slots(&[&["p1"], &["p2"], &["p1", "walk_towards", "p2"]])
        );
    }

    #[test]
    fn attributive_adjective_attaches_to_following_noun() {
        assert_eq!(
            extract(&["the unconscious man"]),
            slots(&[&["man"], &["man", "unconscious"]])
        );
    }

    #[test]
    fn intransitive_verb_gives_two_slot_tuple() {
        assert_eq!(
            extract(&["P1 smiles"]),
            slots(&[&["p1"], &["p1", "smile"]])
        );
    }

    #[test]
    fn nouns_depluralize_and_verbs_lemmatize() {
        assert_eq!(
            extract(&["P1 carries the boxes"]),
            slots(&[&["p1"], &["box"], &["p1", "carry", "box"]])
        );
    }

    #[test]
    fn conjunction_bounds_object_window() {
        assert_eq!(
            extract(&["P1 stands and watches P2"]),
            slots(&[
                &["p1"],
                &["p2"],
                &["p1", "stand"],
                &["p1", "watch", "p2"],
            ])
        );
    }

    #[test]
    fn extraction_is_relabel_invariant_after_normalization() {
        let a = Captionset::from_texts("v0", &["P1 carries P2. P2 is unconscious"]).unwrap();
        let b = Captionset::from_texts("v0", &["P7 carries P3. P3 is unconscious"]).unwrap();
        let lex = Lexicon::bundled();
        assert_eq!(
            extract_tuples(&a.normalize_identities(), lex),
            extract_tuples(&b.normalize_identities(), lex)
        );
    }

    #[test]
    fn sentence_with_no_pattern_contributes_only_object_tuples() {
        assert_eq!(extract(&["the door"]), slots(&[&["door"]]));
    }
}
