//! Tuple matching and the scene-graph caption scores.
//!
//! The base score is the F1 overlap of the two full tuple sets. The
//! identity-aware score multiplies two F1 terms: one over multi-slot
//! tuples that touch an identity, one over the sets of identity labels.
//! It is undefined when the reference carries no identity labels.

use std::collections::{BTreeMap, HashMap};

use crate::caption::Captionset;
use crate::error::{Error, Result};
use crate::extract::extract_tuples;
use crate::lexicon::Lexicon;
use crate::token::parse_identity_word;
use crate::tuples::{filter_identity_tuples, SceneGraphTuple, TupleSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchResult {
    pub matched: usize,
    pub reference_size: usize,
    pub candidate_size: usize,
}

/// Counts tuples shared by reference and candidate under slot-wise lemma
/// equality. Set semantics guarantee each tuple matches at most once.
pub fn match_tuples(reference: &TupleSet, candidate: &TupleSet) -> MatchResult {
    MatchResult {
        matched: reference.intersection_count(candidate),
        reference_size: reference.len(),
        candidate_size: candidate.len(),
    }
}

/// F1 with the empty-set conventions: both sides empty scores 1.0, exactly
/// one side empty scores 0.0.
pub fn f1(m: &MatchResult) -> f64 {
    if m.reference_size == 0 && m.candidate_size == 0 {
        return 1.0;
    }
    if m.reference_size == 0 || m.candidate_size == 0 {
        return 0.0;
    }
    let precision = m.matched as f64 / m.candidate_size as f64;
    let recall = m.matched as f64 / m.reference_size as f64;
    if precision + recall == 0.0 {
        return 0.0;
    }
    2.0 * precision * recall / (precision + recall)
}

/// How the identity-label term compares label collections.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum IdentityTermMode {
    /// Distinct labels compared as sets.
    #[default]
    Set,
    /// Label occurrences compared as multisets.
    Multiset,
}

/// Optional scoring knobs shared by the tuple metrics.
#[derive(Debug, Clone, Default)]
pub struct EvalOptions {
    pub synonyms: Option<SynonymTable>,
    pub identity_term: IdentityTermMode,
}

/// Tab-separated equivalence classes of lemmas; members map onto the first
/// lemma of their line. Identity labels are never remapped.
#[derive(Debug, Clone, Default)]
pub struct SynonymTable {
    canon: HashMap<String, String>,
}

impl SynonymTable {
    pub fn parse(text: &str) -> Self {
        let mut canon = HashMap::new();
        for line in text.lines() {
            let members: Vec<&str> = line
                .split('\t')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            if members.len() < 2 {
                continue;
            }
            let representative = members[0].to_lowercase();
            for member in members {
                canon.insert(member.to_lowercase(), representative.clone());
            }
        }
        Self { canon }
    }

    fn canonical(&self, lemma: &str) -> String {
        if parse_identity_word(lemma).is_some() {
            return lemma.to_string();
        }
        self.canon
            .get(lemma)
            .cloned()
            .unwrap_or_else(|| lemma.to_string())
    }

    fn apply(&self, ts: &TupleSet) -> TupleSet {
        ts.iter()
            .map(|t| {
                let slots: Vec<String> = t.slots().iter().map(|s| self.canonical(s)).collect();
                SceneGraphTuple::new(slots).expect("canonicalization preserves validity")
            })
            .collect()
    }
}

/// The identity-aware score and its two F1 terms.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct IspiceBreakdown {
    pub value: f64,
    pub term_p2plus: f64,
    pub term_p1: f64,
}

/// Scores for one reference/candidate captionset pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SpiceScore {
    pub spice: f64,
    pub ispice: Option<IspiceBreakdown>,
}

/// Scores precomputed tuple sets. Callers supply tuples either from the
/// built-in extractor or from an external parser; both captionsets are
/// needed to list their identity labels.
pub fn spice_score_from_tuples(
    reference: &Captionset,
    candidate: &Captionset,
    ref_tuples: &TupleSet,
    cand_tuples: &TupleSet,
    options: &EvalOptions,
) -> SpiceScore {
    let (ref_tuples, cand_tuples) = match &options.synonyms {
        Some(table) => (table.apply(ref_tuples), table.apply(cand_tuples)),
        None => (ref_tuples.clone(), cand_tuples.clone()),
    };
    let spice = f1(&match_tuples(&ref_tuples, &cand_tuples));

    let ref_filtered = filter_identity_tuples(&ref_tuples, reference);
    if ref_filtered.p1.is_empty() {
        return SpiceScore { spice, ispice: None };
    }
    let cand_filtered = filter_identity_tuples(&cand_tuples, candidate);

    let term_p2plus = f1(&match_tuples(&ref_filtered.p2plus, &cand_filtered.p2plus));
    let term_p1 = match options.identity_term {
        IdentityTermMode::Set => {
            let matched = ref_filtered
                .p1
                .intersection(&cand_filtered.p1)
                .count();
            f1(&MatchResult {
                matched,
                reference_size: ref_filtered.p1.len(),
                candidate_size: cand_filtered.p1.len(),
            })
        }
        IdentityTermMode::Multiset => multiset_label_f1(reference, candidate),
    };
    SpiceScore {
        spice,
        ispice: Some(IspiceBreakdown {
            value: term_p2plus * term_p1,
            term_p2plus,
            term_p1,
        }),
    }
}

fn multiset_label_f1(reference: &Captionset, candidate: &Captionset) -> f64 {
    let ref_counts: BTreeMap<u32, usize> = reference.identity_multiset();
    let cand_counts: BTreeMap<u32, usize> = candidate.identity_multiset();
    let matched: usize = ref_counts
        .iter()
        .map(|(label, &rc)| rc.min(*cand_counts.get(label).unwrap_or(&0)))
        .sum();
    f1(&MatchResult {
        matched,
        reference_size: ref_counts.values().sum(),
        candidate_size: cand_counts.values().sum(),
    })
}

/// Extracts tuples from both captionsets and scores them. Both sides must
/// already be identity-normalized.
pub fn spice_score(
    reference: &Captionset,
    candidate: &Captionset,
    lex: &Lexicon,
    options: &EvalOptions,
) -> SpiceScore {
    let ref_tuples = extract_tuples(reference, lex);
    let cand_tuples = extract_tuples(candidate, lex);
    spice_score_from_tuples(reference, candidate, &ref_tuples, &cand_tuples, options)
}

/// F1 over the full tuple sets.
pub fn spice(reference: &Captionset, candidate: &Captionset, lex: &Lexicon) -> f64 {
    spice_score(reference, candidate, lex, &EvalOptions::default()).spice
}

/// Identity-aware score; `None` when the reference has no identity labels.
pub fn ispice(reference: &Captionset, candidate: &Captionset, lex: &Lexicon) -> Option<f64> {
    spice_score(reference, candidate, lex, &EvalOptions::default())
        .ispice
        .map(|b| b.value)
}

/// Loads a synonym table from a file.
pub fn load_synonyms(path: &std::path::Path) -> Result<SynonymTable> {
    let text = std::fs::read_to_string(path).map_err(Error::Io)?;
    Ok(SynonymTable::parse(&text))
}
