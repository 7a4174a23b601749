//! Scene-graph tuples and identity filtering.
//!
//! A tuple has 1 to 3 lowercase lemma slots: an object, an
//! (object, attribute) pair, or a (subject, relation, object) triple.
//! Tuple sets use set semantics; matching later compares slots for exact
//! equality.

use std::collections::BTreeSet;

use crate::caption::{Captionset, IdentityLabel};
use crate::error::{Error, Result};
use crate::token::parse_identity_word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TupleArity {
    Object,
    Attribute,
    Relation,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SceneGraphTuple {
    slots: Vec<String>,
}

impl SceneGraphTuple {
    /// Builds a tuple from 1-3 non-empty slot lemmas, lowercasing them.
    pub fn new<S: Into<String>>(slots: Vec<S>) -> Result<Self> {
        let slots: Vec<String> = slots.into_iter().map(|s| s.into().to_lowercase()).collect();
        if slots.is_empty() || slots.len() > 3 {
            return Err(Error::MalformedTuple {
                index: 0,
                reason: format!("expected 1-3 slots, got {}", slots.len()),
            });
        }
        if let Some(pos) = slots.iter().position(|s| s.trim().is_empty()) {
            return Err(Error::MalformedTuple {
                index: 0,
                reason: format!("slot {pos} is empty"),
            });
        }
        Ok(Self { slots })
    }

    pub fn slots(&self) -> &[String] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn arity(&self) -> TupleArity {
        match self.slots.len() {
            1 => TupleArity::Object,
            2 => TupleArity::Attribute,
            _ => TupleArity::Relation,
        }
    }

    /// Slot positions holding identity labels, recognized by the
    /// `p<digits>` grammar.
    pub fn identity_slots(&self) -> Vec<usize> {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| parse_identity_word(s).is_some())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn has_identity(&self) -> bool {
        self.slots.iter().any(|s| parse_identity_word(s).is_some())
    }
}

/// A duplicate-free, deterministically ordered set of tuples.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TupleSet {
    tuples: BTreeSet<SceneGraphTuple>,
}

impl TupleSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, tuple: SceneGraphTuple) -> bool {
        self.tuples.insert(tuple)
    }

    pub fn contains(&self, tuple: &SceneGraphTuple) -> bool {
        self.tuples.contains(tuple)
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SceneGraphTuple> {
        self.tuples.iter()
    }

    pub fn intersection_count(&self, other: &TupleSet) -> usize {
        self.tuples.intersection(&other.tuples).count()
    }

    /// Slot lists for serialization, in deterministic order.
    pub fn to_slot_lists(&self) -> Vec<Vec<String>> {
        self.tuples.iter().map(|t| t.slots.clone()).collect()
    }
}

impl FromIterator<SceneGraphTuple> for TupleSet {
    fn from_iter<I: IntoIterator<Item = SceneGraphTuple>>(iter: I) -> Self {
        Self {
            tuples: iter.into_iter().collect(),
        }
    }
}

/// The two tuple views scored by the identity-aware metric: multi-slot
/// tuples touching at least one identity, and the set of identity labels
/// present in the source captionset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredTuples {
    pub p2plus: TupleSet,
    pub p1: BTreeSet<IdentityLabel>,
}

/// Parses externally produced tuples: each record is a list of 1-3 slot
/// strings. Slots are lowercased, identity slots recognized by the
/// identity grammar, duplicates collapse.
pub fn load_tuples(records: &[Vec<String>]) -> Result<TupleSet> {
    let mut set = TupleSet::new();
    for (index, record) in records.iter().enumerate() {
        let tuple =
            SceneGraphTuple::new(record.clone()).map_err(|e| match e {
                Error::MalformedTuple { reason, .. } => Error::MalformedTuple { index, reason },
                other => other,
            })?;
        set.insert(tuple);
    }
    Ok(set)
}

/// Splits a tuple set into the identity-bearing views scored by the
/// identity-aware metric. `p1` lists every distinct identity label of the
/// captionset, whether or not a tuple mentions it.
pub fn filter_identity_tuples(ts: &TupleSet, cs: &Captionset) -> FilteredTuples {
    let p2plus = ts
        .iter()
        .filter(|t| t.len() >= 2 && t.has_identity())
        .cloned()
        .collect();
    FilteredTuples {
        p2plus,
        p1: cs.distinct_identities(),
    }
}
