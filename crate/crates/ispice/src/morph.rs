//! Rule-based suffix morphology: verb lemmatization against a known-verb
//! list, noun de-pluralization, and a dictionary-free stem for the METEOR
//! stage-2 matcher. Deterministic by construction; mismatches lower
//! absolute scores uniformly on both sides of a comparison.

use std::collections::HashSet;

const PLURAL_EXCEPTIONS: &[(&str, &str)] = &[
    ("men", "man"),
    ("women", "woman"),
    ("children", "child"),
    ("people", "person"),
    ("feet", "foot"),
    ("teeth", "tooth"),
    ("mice", "mouse"),
    ("wives", "wife"),
    ("knives", "knife"),
    ("lives", "life"),
    ("leaves", "leaf"),
    ("shelves", "shelf"),
    ("wolves", "wolf"),
];

fn undouble(stem: &str) -> Option<String> {
    let bytes = stem.as_bytes();
    if bytes.len() < 3 {
        return None;
    }
    let last = bytes[bytes.len() - 1];
    let prev = bytes[bytes.len() - 2];
    // Consonants that double before -ed/-ing; l and s are kept (fall, kiss).
    if last == prev && b"bdgkmnprt".contains(&last) {
        Some(stem[..stem.len() - 1].to_string())
    } else {
        None
    }
}

/// Lemmatizes an inflected verb by suffix stripping with consonant
/// un-doubling and silent-e restoration, accepting only lemmas found in
/// `verbs`. Returns the word itself when it is already a known lemma.
pub fn verb_lemma(word: &str, verbs: &HashSet<String>) -> Option<String> {
    if verbs.contains(word) {
        return Some(word.to_string());
    }
    let mut candidates: Vec<String> = Vec::new();
    if let Some(stem) = word.strip_suffix("ies") {
        if !stem.is_empty() {
            candidates.push(format!("{stem}y"));
        }
    }
    if let Some(stem) = word.strip_suffix("ied") {
        if !stem.is_empty() {
            candidates.push(format!("{stem}y"));
        }
    }
    if let Some(stem) = word.strip_suffix('s') {
        if !stem.ends_with('s') && !stem.is_empty() {
            candidates.push(stem.to_string());
        }
    }
    if let Some(stem) = word.strip_suffix("es") {
        if !stem.is_empty() {
            candidates.push(stem.to_string());
        }
    }
    if let Some(stem) = word.strip_suffix("ing") {
        if stem.len() >= 2 {
            candidates.push(stem.to_string());
            if let Some(short) = undouble(stem) {
                candidates.push(short);
            }
            candidates.push(format!("{stem}e"));
        }
    }
    if let Some(stem) = word.strip_suffix("ed") {
        if stem.len() >= 2 {
            candidates.push(stem.to_string());
            if let Some(short) = undouble(stem) {
                candidates.push(short);
            }
            candidates.push(format!("{stem}e"));
        }
    }
    candidates.into_iter().find(|c| verbs.contains(c))
}

/// Reduces a plural noun to its singular lemma with an exception table and
/// suffix rules. Singulars pass through unchanged.
pub fn depluralize(word: &str) -> String {
    for &(plural, singular) in PLURAL_EXCEPTIONS {
        if word == plural {
            return singular.to_string();
        }
    }
    if word.len() > 4 {
        if let Some(stem) = word.strip_suffix("ies") {
            return format!("{stem}y");
        }
    }
    for suffix in ["xes", "ches", "shes", "sses", "zes"] {
        if let Some(stem) = word.strip_suffix(suffix) {
            let keep = &suffix[..suffix.len() - 2];
            return format!("{stem}{keep}");
        }
    }
    if word.ends_with("ss") || word.ends_with("us") || word.ends_with("is") {
        return word.to_string();
    }
    if word.len() > 3 {
        if let Some(stem) = word.strip_suffix('s') {
            return stem.to_string();
        }
    }
    word.to_string()
}

/// Dictionary-free stem used by the METEOR-lite stage-2 matcher. Collapses
/// common inflections; not guaranteed to produce a real word.
pub fn stem(word: &str) -> String {
    if word.len() > 4 {
        if let Some(s) = word.strip_suffix("ies") {
            return format!("{s}y");
        }
        if let Some(s) = word.strip_suffix("ied") {
            return format!("{s}y");
        }
    }
    if word.len() > 5 {
        if let Some(s) = word.strip_suffix("ing") {
            return undouble(s).unwrap_or_else(|| s.to_string());
        }
    }
    if word.len() > 4 {
        if let Some(s) = word.strip_suffix("ed") {
            return undouble(s).unwrap_or_else(|| s.to_string());
        }
    }
    for suffix in ["xes", "ches", "shes", "sses", "zes"] {
        if let Some(s) = word.strip_suffix(suffix) {
            let keep = &suffix[..suffix.len() - 2];
            return format!("{s}{keep}");
        }
    }
    if word.len() > 3 && !word.ends_with("ss") {
        if let Some(s) = word.strip_suffix('s') {
            return s.to_string();
        }
    }
    word.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::Lexicon;

    fn verbs() -> &'static HashSet<String> {
        Lexicon::bundled().verbs()
    }

    #[test]
    fn lemmatizes_common_inflections() {
        let v = verbs();
        assert_eq!(verb_lemma("carries", v).as_deref(), Some("carry"));
        assert_eq!(verb_lemma("carried", v).as_deref(), Some("carry"));
        assert_eq!(verb_lemma("walks", v).as_deref(), Some("walk"));
        assert_eq!(verb_lemma("walking", v).as_deref(), Some("walk"));
        assert_eq!(verb_lemma("running", v).as_deref(), Some("run"));
        assert_eq!(verb_lemma("stopped", v).as_deref(), Some("stop"));
        assert_eq!(verb_lemma("smiled", v).as_deref(), Some("smile"));
        assert_eq!(verb_lemma("makes", v).as_deref(), Some("make"));
        assert_eq!(verb_lemma("watches", v).as_deref(), Some("watch"));
        assert_eq!(verb_lemma("goes", v).as_deref(), Some("go"));
        assert_eq!(verb_lemma("falling", v).as_deref(), Some("fall"));
        assert_eq!(verb_lemma("carry", v).as_deref(), Some("carry"));
    }

    #[test]
    fn unknown_stems_do_not_lemmatize() {
        let v = verbs();
        assert_eq!(verb_lemma("zorping", v), None);
        assert_eq!(verb_lemma("table", v), None);
    }

    #[test]
    fn depluralizes_nouns() {
        assert_eq!(depluralize("boxes"), "box");
        assert_eq!(depluralize("glasses"), "glass");
        assert_eq!(depluralize("babies"), "baby");
        assert_eq!(depluralize("men"), "man");
        assert_eq!(depluralize("doors"), "door");
        assert_eq!(depluralize("bus"), "bus");
        assert_eq!(depluralize("gas"), "gas");
        assert_eq!(depluralize("man"), "man");
        assert_eq!(depluralize("knives"), "knife");
    }

    #[test]
    fn stem_collapses_inflections() {
        assert_eq!(stem("running"), "run");
        assert_eq!(stem("stopped"), "stop");
        assert_eq!(stem("carries"), "carry");
        assert_eq!(stem("carried"), "carry");
        assert_eq!(stem("walks"), "walk");
        assert_eq!(stem("watches"), "watch");
        assert_eq!(stem("makes"), "make");
        assert_eq!(stem("fall"), "fall");
        assert_eq!(stem("falling"), "fall");
    }
}
