//! Identity manipulations (swap, add, remove) and the sensitivity
//! experiment that measures how far each metric drops under them.
//!
//! Eligibility rules: swaps touch only identity tokens whose label occurs
//! more than once in the captionset, since swapping standalone ids merely
//! relabels the story; addition replaces one occurrence of a
//! multi-occurrence id with the smallest absent label; removal replaces a
//! single-occurrence id token with a different label already present.
//!
//! Every draw is seeded through a counter-based stream derived from
//! (root seed, videoset id, kind, sample), so results do not depend on
//! corpus order or scheduling.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::caption::{Captionset, IdentityLabel};
use crate::error::{Error, Result};
use crate::lexicon::Lexicon;
use crate::ngram::{bleu4, build_idf, cider, meteor_lite, rouge_l, IdfTable};
use crate::spice::{spice_score, EvalOptions};
use crate::token::Token;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbKind {
    /// Unperturbed control; always succeeds with no edits.
    Identity,
    Swap,
    Add,
    Remove,
}

impl PerturbKind {
    pub const MANIPULATIONS: [PerturbKind; 3] =
        [PerturbKind::Swap, PerturbKind::Add, PerturbKind::Remove];

    fn stream_tag(self) -> u64 {
        match self {
            PerturbKind::Identity => 0,
            PerturbKind::Swap => 1,
            PerturbKind::Add => 2,
            PerturbKind::Remove => 3,
        }
    }
}

impl fmt::Display for PerturbKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PerturbKind::Identity => "identity",
            PerturbKind::Swap => "swap",
            PerturbKind::Add => "add",
            PerturbKind::Remove => "remove",
        };
        f.write_str(name)
    }
}

impl FromStr for PerturbKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_lowercase().as_str() {
            "identity" => Ok(PerturbKind::Identity),
            "swap" => Ok(PerturbKind::Swap),
            "add" => Ok(PerturbKind::Add),
            "remove" => Ok(PerturbKind::Remove),
            other => Err(format!("unknown perturbation kind: {other:?}")),
        }
    }
}

/// One identity-token replacement at a caption/token position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edit {
    pub caption_index: usize,
    pub token_index: usize,
    pub old_label: IdentityLabel,
    pub new_label: IdentityLabel,
}

/// A manipulated captionset plus everything needed to replay it.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationRecord {
    pub kind: PerturbKind,
    pub seed: u64,
    pub edits: Vec<Edit>,
    pub result: Captionset,
}

impl PerturbationRecord {
    /// Re-applies the edits to the source; equals `result` by contract.
    pub fn replay(&self, source: &Captionset) -> Result<Captionset> {
        apply_edits(source, &self.edits)
    }
}

/// Applies edits, validating that each position holds the recorded label.
pub fn apply_edits(source: &Captionset, edits: &[Edit]) -> Result<Captionset> {
    let mut cs = source.clone();
    for edit in edits {
        let held = cs
            .captions()
            .get(edit.caption_index)
            .and_then(|c| c.get(edit.token_index))
            .and_then(|t| t.identity_index());
        if held != Some(edit.old_label.index()) {
            return Err(Error::Parse {
                line: 0,
                reason: format!(
                    "edit at ({}, {}) expected {}, found {:?}",
                    edit.caption_index, edit.token_index, edit.old_label, held
                ),
            });
        }
        cs = cs.with_token(
            edit.caption_index,
            edit.token_index,
            Token::identity(edit.new_label.index()),
        );
    }
    Ok(cs)
}

/// Positions of identity tokens whose label occurs at least twice in the
/// captionset, the only tokens a swap may touch.
pub fn eligible_swap_positions(cs: &Captionset) -> Vec<(usize, usize)> {
    let counts = cs.identity_multiset();
    cs.identity_positions()
        .into_iter()
        .filter(|&(_, _, label)| counts.get(&label).copied().unwrap_or(0) >= 2)
        .map(|(ci, ti, _)| (ci, ti))
        .collect()
}

/// Dispatches one perturbation draw. Returns `None` when the captionset
/// has no eligible site for the kind.
pub fn perturb(cs: &Captionset, kind: PerturbKind, seed: u64) -> Option<PerturbationRecord> {
    match kind {
        PerturbKind::Identity => Some(PerturbationRecord {
            kind,
            seed,
            edits: Vec::new(),
            result: cs.clone(),
        }),
        PerturbKind::Swap => perturb_swap(cs, seed),
        PerturbKind::Add => perturb_add(cs, seed),
        PerturbKind::Remove => perturb_remove(cs, seed),
    }
}

/// Replaces a uniformly random non-empty subset of eligible positions,
/// each with a different label drawn from the labels present.
pub fn perturb_swap(cs: &Captionset, seed: u64) -> Option<PerturbationRecord> {
    let labels: Vec<u32> = cs.identity_multiset().into_keys().collect();
    if labels.len() < 2 {
        return None;
    }
    let eligible = eligible_swap_positions(cs);
    if eligible.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subset_size = rng.gen_range(1..=eligible.len());
    let mut chosen: Vec<(usize, usize)> = eligible
        .choose_multiple(&mut rng, subset_size)
        .copied()
        .collect();
    chosen.sort_unstable();

    let mut edits = Vec::with_capacity(chosen.len());
    let mut result = cs.clone();
    for (ci, ti) in chosen {
        let old = cs.captions()[ci][ti]
            .identity_index()
            .expect("eligible positions hold identity tokens");
        let replacements: Vec<u32> = labels.iter().copied().filter(|&l| l != old).collect();
        let new = *replacements
            .get(rng.gen_range(0..replacements.len()))
            .expect("at least two labels present");
        edits.push(Edit {
            caption_index: ci,
            token_index: ti,
            old_label: IdentityLabel::new(old).expect("label >= 1"),
            new_label: IdentityLabel::new(new).expect("label >= 1"),
        });
        result = result.with_token(ci, ti, Token::identity(new));
    }
    Some(PerturbationRecord {
        kind: PerturbKind::Swap,
        seed,
        edits,
        result,
    })
}

/// Replaces one occurrence of a multi-occurrence id with the smallest
/// absent label, adding exactly one distinct identity.
pub fn perturb_add(cs: &Captionset, seed: u64) -> Option<PerturbationRecord> {
    let counts = cs.identity_multiset();
    let sites: Vec<(usize, usize, u32)> = cs
        .identity_positions()
        .into_iter()
        .filter(|&(_, _, label)| counts.get(&label).copied().unwrap_or(0) >= 2)
        .collect();
    if sites.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let &(ci, ti, old) = sites
        .get(rng.gen_range(0..sites.len()))
        .expect("sites is non-empty");
    let mut new = 1u32;
    while counts.contains_key(&new) {
        new += 1;
    }
    let edit = Edit {
        caption_index: ci,
        token_index: ti,
        old_label: IdentityLabel::new(old).expect("label >= 1"),
        new_label: IdentityLabel::new(new).expect("label >= 1"),
    };
    Some(PerturbationRecord {
        kind: PerturbKind::Add,
        seed,
        edits: vec![edit],
        result: cs.with_token(ci, ti, Token::identity(new)),
    })
}

/// Replaces a random single-occurrence id token with a different label
/// already present, removing exactly one distinct identity.
pub fn perturb_remove(cs: &Captionset, seed: u64) -> Option<PerturbationRecord> {
    let counts = cs.identity_multiset();
    if counts.len() < 2 {
        return None;
    }
    let singles: Vec<(usize, usize, u32)> = cs
        .identity_positions()
        .into_iter()
        .filter(|&(_, _, label)| counts.get(&label).copied().unwrap_or(0) == 1)
        .collect();
    if singles.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let &(ci, ti, old) = singles
        .get(rng.gen_range(0..singles.len()))
        .expect("singles is non-empty");
    let replacements: Vec<u32> = counts.keys().copied().filter(|&l| l != old).collect();
    let new = *replacements
        .get(rng.gen_range(0..replacements.len()))
        .expect("at least two labels present");
    let edit = Edit {
        caption_index: ci,
        token_index: ti,
        old_label: IdentityLabel::new(old).expect("label >= 1"),
        new_label: IdentityLabel::new(new).expect("label >= 1"),
    };
    Some(PerturbationRecord {
        kind: PerturbKind::Remove,
        seed,
        edits: vec![edit],
        result: cs.with_token(ci, ti, Token::identity(new)),
    })
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

fn fnv1a64(text: &str) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for byte in text.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Stream seed for one (captionset, kind, sample) draw. Keyed by videoset
/// id, not corpus position.
pub fn derive_stream_seed(root: u64, videoset_id: &str, kind: PerturbKind, sample: u64) -> u64 {
    let mut seed = splitmix64(root ^ fnv1a64(videoset_id));
    seed = splitmix64(seed ^ kind.stream_tag());
    splitmix64(seed ^ sample)
}

/// Metrics participating in the sensitivity experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteMetric {
    Ispice,
    Spice,
    Bleu4,
    Cider,
    MeteorLite,
    RougeL,
}

impl SuiteMetric {
    pub const ALL: [SuiteMetric; 6] = [
        SuiteMetric::Ispice,
        SuiteMetric::Spice,
        SuiteMetric::Bleu4,
        SuiteMetric::Cider,
        SuiteMetric::MeteorLite,
        SuiteMetric::RougeL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteMetric::Ispice => "ispice",
            SuiteMetric::Spice => "spice",
            SuiteMetric::Bleu4 => "bleu4",
            SuiteMetric::Cider => "cider",
            SuiteMetric::MeteorLite => "meteor_lite",
            SuiteMetric::RougeL => "rouge_l",
        }
    }

    fn eval(
        self,
        reference: &Captionset,
        candidate: &Captionset,
        lex: &Lexicon,
        idf: &IdfTable,
        options: &EvalOptions,
    ) -> Option<f64> {
        match self {
            SuiteMetric::Ispice => spice_score(reference, candidate, lex, options)
                .ispice
                .map(|b| b.value),
            SuiteMetric::Spice => Some(spice_score(reference, candidate, lex, options).spice),
            SuiteMetric::Bleu4 => bleu4(reference, candidate).ok(),
            SuiteMetric::Cider => cider(reference, candidate, idf).ok(),
            SuiteMetric::MeteorLite => meteor_lite(reference, candidate).ok(),
            SuiteMetric::RougeL => rouge_l(reference, candidate).ok(),
        }
    }
}

/// Mean score ratio for one metric under one manipulation kind.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityRow {
    pub kind: PerturbKind,
    pub metric: String,
    pub mean_ratio: f64,
    pub n_samples: usize,
    pub n_skipped: usize,
}

/// Runs the manipulation experiment: for every captionset and kind, draws
/// `samples_per_kind` perturbations, scores the reference against itself
/// (base score) and against the re-normalized perturbation, and averages
/// the score ratios per metric. Draws that find no eligible site, and
/// ratios whose base score is zero or undefined, are skipped and counted.
pub fn sensitivity_experiment(
    corpus: &[Captionset],
    lex: &Lexicon,
    options: &EvalOptions,
    kinds: &[PerturbKind],
    samples_per_kind: usize,
    seed: u64,
) -> Result<Vec<SensitivityRow>> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let idf = build_idf(corpus)?;

    struct Accumulator {
        ratio_sum: f64,
        n_samples: usize,
        n_skipped: usize,
    }
    let mut table: Vec<Vec<Accumulator>> = kinds
        .iter()
        .map(|_| {
            SuiteMetric::ALL
                .iter()
                .map(|_| Accumulator {
                    ratio_sum: 0.0,
                    n_samples: 0,
                    n_skipped: 0,
                })
                .collect()
        })
        .collect();

    for cs in corpus {
        let base: Vec<Option<f64>> = SuiteMetric::ALL
            .iter()
            .map(|m| m.eval(cs, cs, lex, &idf, options))
            .collect();
        for (ki, &kind) in kinds.iter().enumerate() {
            for sample in 0..samples_per_kind {
                let stream = derive_stream_seed(seed, cs.videoset_id(), kind, sample as u64);
                let Some(record) = perturb(cs, kind, stream) else {
                    for acc in &mut table[ki] {
                        acc.n_skipped += 1;
                    }
                    continue;
                };
                let perturbed = record.result.normalize_identities();
                for (mi, metric) in SuiteMetric::ALL.iter().enumerate() {
                    let acc = &mut table[ki][mi];
                    let (Some(s), Some(s_hat)) = (
                        base[mi],
                        metric.eval(cs, &perturbed, lex, &idf, options),
                    ) else {
                        acc.n_skipped += 1;
                        continue;
                    };
                    if s == 0.0 {
                        acc.n_skipped += 1;
                        continue;
                    }
                    acc.ratio_sum += s_hat / s;
                    acc.n_samples += 1;
                }
            }
        }
    }

    let mut rows = Vec::new();
    for (ki, &kind) in kinds.iter().enumerate() {
        for (mi, metric) in SuiteMetric::ALL.iter().enumerate() {
            let acc = &table[ki][mi];
            rows.push(SensitivityRow {
                kind,
                metric: metric.name().to_string(),
                mean_ratio: if acc.n_samples == 0 {
                    0.0
                } else {
                    acc.ratio_sum / acc.n_samples as f64
                },
                n_samples: acc.n_samples,
                n_skipped: acc.n_skipped,
            });
        }
    }
    Ok(rows)
}
