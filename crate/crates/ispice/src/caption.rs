//! Captionsets, identity labels, identity normalization, and
//! fill-in-the-blanks instances.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::token::{detokenize, tokenize, Token};

/// A person-id label (`P1`, `P2`, ...). Indices start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdentityLabel(u32);

impl IdentityLabel {
    /// Largest label index used by LSMDC-style corpora.
    pub const LSMDC_MAX: u32 = 10;

    pub fn new(index: u32) -> Option<Self> {
        (index >= 1).then_some(Self(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_lsmdc_compatible(self) -> bool {
        self.0 <= Self::LSMDC_MAX
    }
}

impl fmt::Display for IdentityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

impl serde::Serialize for IdentityLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for IdentityLabel {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for IdentityLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        crate::token::parse_identity_word(&s.to_lowercase())
            .and_then(Self::new)
            .ok_or_else(|| format!("not an identity label: {s:?}"))
    }
}

/// An ordered group of N captions describing one videoset. LSMDC fixes
/// N = 5; any N >= 1 is accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Captionset {
    videoset_id: String,
    captions: Vec<Vec<Token>>,
}

impl Captionset {
    pub fn new(videoset_id: impl Into<String>, captions: Vec<Vec<Token>>) -> Result<Self> {
        let videoset_id = videoset_id.into();
        if captions.is_empty() {
            return Err(Error::EmptyCaptionset { videoset_id });
        }
        Ok(Self {
            videoset_id,
            captions,
        })
    }

    /// Tokenizes each caption string into one caption of the set.
    pub fn from_texts<S: AsRef<str>>(videoset_id: impl Into<String>, texts: &[S]) -> Result<Self> {
        let captions = texts.iter().map(|t| tokenize(t.as_ref())).collect();
        Self::new(videoset_id, captions)
    }

    pub fn videoset_id(&self) -> &str {
        &self.videoset_id
    }

    pub fn captions(&self) -> &[Vec<Token>] {
        &self.captions
    }

    pub fn caption_count(&self) -> usize {
        self.captions.len()
    }

    pub fn to_texts(&self) -> Vec<String> {
        self.captions.iter().map(|c| detokenize(c)).collect()
    }

    /// Renumbers identity indices by first occurrence in reading order:
    /// the first distinct id becomes P1, the second P2, and so on. All
    /// occurrences of one original id map to the same new id.
    pub fn normalize_identities(&self) -> Captionset {
        let mut mapping: HashMap<u32, u32> = HashMap::new();
        let mut next = 1u32;
        let captions = self
            .captions
            .iter()
            .map(|caption| {
                caption
                    .iter()
                    .map(|token| match token.identity_index() {
                        Some(old) => {
                            let new = *mapping.entry(old).or_insert_with(|| {
                                let assigned = next;
                                next += 1;
                                assigned
                            });
                            Token::identity(new)
                        }
                        None => token.clone(),
                    })
                    .collect()
            })
            .collect();
        Captionset {
            videoset_id: self.videoset_id.clone(),
            captions,
        }
    }

    /// Occurrence count of every identity index across all captions.
    pub fn identity_multiset(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for caption in &self.captions {
            for token in caption {
                if let Some(i) = token.identity_index() {
                    *counts.entry(i).or_insert(0) += 1;
                }
            }
        }
        counts
    }

    /// Distinct identity labels present in the captionset.
    pub fn distinct_identities(&self) -> BTreeSet<IdentityLabel> {
        self.identity_multiset()
            .keys()
            .filter_map(|&i| IdentityLabel::new(i))
            .collect()
    }

    /// Positions `(caption_index, token_index)` of every identity token,
    /// in reading order, with the label index held there.
    pub fn identity_positions(&self) -> Vec<(usize, usize, u32)> {
        let mut positions = Vec::new();
        for (ci, caption) in self.captions.iter().enumerate() {
            for (ti, token) in caption.iter().enumerate() {
                if let Some(i) = token.identity_index() {
                    positions.push((ci, ti, i));
                }
            }
        }
        positions
    }

    /// Replaces the token at a position, used by perturbation replay.
    pub(crate) fn with_token(&self, caption_index: usize, token_index: usize, token: Token) -> Self {
        let mut copy = self.clone();
        copy.captions[caption_index][token_index] = token;
        copy
    }
}

/// A captionset whose identity tokens were replaced by blanks, plus the
/// ground-truth labels removed and optional predicted labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitbInstance {
    captionset_with_blanks: Captionset,
    blanks: Vec<(usize, usize)>,
    gt_labels: Vec<IdentityLabel>,
    pred_labels: Option<Vec<IdentityLabel>>,
}

impl FitbInstance {
    pub fn captionset_with_blanks(&self) -> &Captionset {
        &self.captionset_with_blanks
    }

    pub fn videoset_id(&self) -> &str {
        self.captionset_with_blanks.videoset_id()
    }

    /// Blank positions in strictly increasing `(caption, token)` order.
    pub fn blanks(&self) -> &[(usize, usize)] {
        &self.blanks
    }

    pub fn gt_labels(&self) -> &[IdentityLabel] {
        &self.gt_labels
    }

    pub fn pred_labels(&self) -> Option<&[IdentityLabel]> {
        self.pred_labels.as_deref()
    }

    pub fn blank_count(&self) -> usize {
        self.blanks.len()
    }

    /// Attaches predicted labels; their count must match the blank count.
    pub fn with_predictions(mut self, pred_labels: Vec<IdentityLabel>) -> Result<Self> {
        if pred_labels.len() != self.blanks.len() {
            return Err(Error::PredictionLength {
                videoset_id: self.videoset_id().to_string(),
                expected: self.blanks.len(),
                got: pred_labels.len(),
            });
        }
        self.pred_labels = Some(pred_labels);
        Ok(self)
    }

    /// Fills the blanks with the given labels, reconstructing a captionset.
    pub fn fill_blanks(&self, labels: &[IdentityLabel]) -> Result<Captionset> {
        if labels.len() != self.blanks.len() {
            return Err(Error::PredictionLength {
                videoset_id: self.videoset_id().to_string(),
                expected: self.blanks.len(),
                got: labels.len(),
            });
        }
        let mut cs = self.captionset_with_blanks.clone();
        for (&(ci, ti), &label) in self.blanks.iter().zip(labels) {
            cs.captions[ci][ti] = Token::identity(label.index());
        }
        Ok(cs)
    }
}

/// Replaces every identity token with a blank marker, recording the removed
/// labels in reading order. Errors when the captionset has no identities.
pub fn make_fitb(cs: &Captionset) -> Result<FitbInstance> {
    let mut blanks = Vec::new();
    let mut gt_labels = Vec::new();
    let mut blanked = cs.clone();
    for (ci, ti, index) in cs.identity_positions() {
        blanks.push((ci, ti));
        gt_labels.push(IdentityLabel::new(index).expect("identity index is >= 1"));
        blanked.captions[ci][ti] = Token::blank();
    }
    if blanks.is_empty() {
        return Err(Error::NoIdentities {
            videoset_id: cs.videoset_id().to_string(),
        });
    }
    Ok(FitbInstance {
        captionset_with_blanks: blanked,
        blanks,
        gt_labels,
        pred_labels: None,
    })
}
