//! N-gram comparison baselines: BLEU-4, ROUGE-L, CIDEr, and METEOR-lite.
//!
//! All four score a candidate captionset against a reference captionset
//! with captions aligned per clip (caption i against caption i).
//! Punctuation tokens are excluded from every n-gram statistic. METEOR-lite
//! replaces the synonym stage of full METEOR with a rule-based stem match,
//! trading absolute comparability for dependency-free determinism.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::caption::Captionset;
use crate::error::{Error, Result};
use crate::morph;
use crate::token::Token;

const MAX_N: usize = 4;

/// ROUGE-L recall weight.
const ROUGE_BETA: f64 = 1.2;
/// METEOR precision weight in the harmonic mean.
const METEOR_ALPHA: f64 = 0.9;
/// METEOR fragmentation penalty exponent.
const METEOR_BETA: f64 = 3.0;
/// METEOR fragmentation penalty weight.
const METEOR_GAMMA: f64 = 0.5;

fn content_tokens(caption: &[Token]) -> Vec<&str> {
    caption
        .iter()
        .filter(|t| !t.is_punctuation())
        .map(|t| t.surface())
        .collect()
}

fn check_aligned(reference: &Captionset, candidate: &Captionset) -> Result<()> {
    if reference.caption_count() != candidate.caption_count() {
        return Err(Error::LengthMismatch {
            reference: reference.caption_count(),
            candidate: candidate.caption_count(),
        });
    }
    Ok(())
}

/// N-grams of one caption as joined keys with counts. BTreeMap keeps float
/// accumulation order deterministic.
fn ngram_counts(tokens: &[&str], n: usize) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    if tokens.len() >= n {
        for window in tokens.windows(n) {
            *counts.entry(window.join("\u{1f}")).or_insert(0) += 1;
        }
    }
    counts
}

/// The n-gram count multisets of one caption for n = 1..4.
#[derive(Debug, Clone)]
pub struct NgramProfile {
    counts: [BTreeMap<String, usize>; MAX_N],
    token_count: usize,
}

impl NgramProfile {
    pub fn from_caption(caption: &[Token]) -> Self {
        let tokens = content_tokens(caption);
        Self {
            counts: std::array::from_fn(|i| ngram_counts(&tokens, i + 1)),
            token_count: tokens.len(),
        }
    }

    /// Counts for one order, n in 1..=4.
    pub fn counts(&self, n: usize) -> &BTreeMap<String, usize> {
        &self.counts[n - 1]
    }

    pub fn token_count(&self) -> usize {
        self.token_count
    }

    /// Total n-gram occurrences at one order: max(0, tokens - n + 1).
    pub fn total(&self, n: usize) -> usize {
        self.counts[n - 1].values().sum()
    }
}

/// Corpus-style BLEU-4 over the aligned caption pairs: clipped n-gram
/// precision micro-aggregated across pairs, geometric mean over n = 1..4,
/// and a brevity penalty. For n >= 2, a zero numerator or denominator
/// triggers add-one smoothing on that order.
pub fn bleu4(reference: &Captionset, candidate: &Captionset) -> Result<f64> {
    check_aligned(reference, candidate)?;
    let mut numerators = [0usize; MAX_N];
    let mut denominators = [0usize; MAX_N];
    let mut ref_len = 0usize;
    let mut cand_len = 0usize;

    for (ref_caption, cand_caption) in reference.captions().iter().zip(candidate.captions()) {
        let ref_profile = NgramProfile::from_caption(ref_caption);
        let cand_profile = NgramProfile::from_caption(cand_caption);
        ref_len += ref_profile.token_count();
        cand_len += cand_profile.token_count();
        for n in 1..=MAX_N {
            for (gram, &count) in cand_profile.counts(n) {
                let clip = *ref_profile.counts(n).get(gram).unwrap_or(&0);
                numerators[n - 1] += count.min(clip);
            }
            denominators[n - 1] += cand_profile.total(n);
        }
    }

    if cand_len == 0 {
        return Ok(if ref_len == 0 { 1.0 } else { 0.0 });
    }
    let mut log_sum = 0.0;
    for n in 1..=MAX_N {
        let (num, den) = (numerators[n - 1], denominators[n - 1]);
        let precision = if n == 1 {
            if den == 0 {
                0.0
            } else {
                num as f64 / den as f64
            }
        } else if num == 0 || den == 0 {
            (num + 1) as f64 / (den + 1) as f64
        } else {
            num as f64 / den as f64
        };
        if precision == 0.0 {
            return Ok(0.0);
        }
        log_sum += precision.ln() / MAX_N as f64;
    }
    let brevity = if cand_len < ref_len {
        (1.0 - ref_len as f64 / cand_len as f64).exp()
    } else {
        1.0
    };
    Ok(brevity * log_sum.exp())
}

fn lcs_length(a: &[&str], b: &[&str]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut current = vec![0usize; b.len() + 1];
    for &token_a in a {
        for (j, &token_b) in b.iter().enumerate() {
            current[j + 1] = if token_a == token_b {
                prev[j] + 1
            } else {
                prev[j + 1].max(current[j])
            };
        }
        std::mem::swap(&mut prev, &mut current);
    }
    prev[b.len()]
}

/// Per-pair longest-common-subsequence F-measure with recall weight 1.2,
/// averaged over the aligned pairs.
pub fn rouge_l(reference: &Captionset, candidate: &Captionset) -> Result<f64> {
    check_aligned(reference, candidate)?;
    let mut total = 0.0;
    for (ref_caption, cand_caption) in reference.captions().iter().zip(candidate.captions()) {
        let ref_tokens = content_tokens(ref_caption);
        let cand_tokens = content_tokens(cand_caption);
        if ref_tokens.is_empty() && cand_tokens.is_empty() {
            total += 1.0;
            continue;
        }
        let lcs = lcs_length(&ref_tokens, &cand_tokens);
        if lcs == 0 {
            continue;
        }
        let precision = lcs as f64 / cand_tokens.len() as f64;
        let recall = lcs as f64 / ref_tokens.len() as f64;
        let beta_sq = ROUGE_BETA * ROUGE_BETA;
        total += (1.0 + beta_sq) * precision * recall / (recall + beta_sq * precision);
    }
    Ok(total / reference.caption_count() as f64)
}

/// Inverse document frequencies over a reference corpus; each caption is
/// one document. Built from references only, never candidates.
#[derive(Debug, Clone)]
pub struct IdfTable {
    idf: HashMap<String, f64>,
    documents: usize,
}

impl IdfTable {
    pub fn documents(&self) -> usize {
        self.documents
    }

    /// idf(g) = ln(D / df(g)) with df clamped to at least 1, so unseen
    /// n-grams take the maximum value ln(D).
    pub fn lookup(&self, gram: &str) -> f64 {
        *self
            .idf
            .get(gram)
            .unwrap_or(&(self.documents as f64).ln())
    }
}

/// Builds the IDF table for CIDEr from the reference corpus.
pub fn build_idf(references: &[Captionset]) -> Result<IdfTable> {
    let mut document_frequency: HashMap<String, usize> = HashMap::new();
    let mut documents = 0usize;
    for captionset in references {
        for caption in captionset.captions() {
            documents += 1;
            let tokens = content_tokens(caption);
            let mut seen: HashSet<String> = HashSet::new();
            for n in 1..=MAX_N {
                for gram in ngram_counts(&tokens, n).into_keys() {
                    seen.insert(gram);
                }
            }
            for gram in seen {
                *document_frequency.entry(gram).or_insert(0) += 1;
            }
        }
    }
    if documents == 0 {
        return Err(Error::EmptyCorpus);
    }
    let d = documents as f64;
    let idf = document_frequency
        .into_iter()
        .map(|(gram, df)| (gram, (d / df.max(1) as f64).ln()))
        .collect();
    Ok(IdfTable { idf, documents })
}

/// Per pair and per n-gram order, the cosine similarity of TF-IDF vectors,
/// averaged over orders, scaled by 10, and averaged over pairs. A pair
/// where both vectors vanish at some order counts that order as a perfect
/// match; one vanishing side scores zero.
pub fn cider(reference: &Captionset, candidate: &Captionset, idf: &IdfTable) -> Result<f64> {
    check_aligned(reference, candidate)?;
    let mut total = 0.0;
    for (ref_caption, cand_caption) in reference.captions().iter().zip(candidate.captions()) {
        let ref_profile = NgramProfile::from_caption(ref_caption);
        let cand_profile = NgramProfile::from_caption(cand_caption);
        let mut pair_sum = 0.0;
        for n in 1..=MAX_N {
            let ref_vec = tfidf_vector(ref_profile.counts(n), idf);
            let cand_vec = tfidf_vector(cand_profile.counts(n), idf);
            pair_sum += cosine(&ref_vec, &cand_vec);
        }
        total += 10.0 * pair_sum / MAX_N as f64;
    }
    Ok(total / reference.caption_count() as f64)
}

fn tfidf_vector(counts: &BTreeMap<String, usize>, idf: &IdfTable) -> BTreeMap<String, f64> {
    counts
        .iter()
        .map(|(gram, &count)| {
            let weight = count as f64 * idf.lookup(gram);
            (gram.clone(), weight)
        })
        .collect()
}

fn cosine(a: &BTreeMap<String, f64>, b: &BTreeMap<String, f64>) -> f64 {
    let norm_a: f64 = a.values().map(|v| v * v).sum::<f64>().sqrt();
    let norm_b: f64 = b.values().map(|v| v * v).sum::<f64>().sqrt();
    if norm_a == 0.0 && norm_b == 0.0 {
        return 1.0;
    }
    if norm_a == 0.0 || norm_b == 0.0 {
        return 0.0;
    }
    let dot: f64 = a
        .iter()
        .filter_map(|(gram, &weight)| b.get(gram).map(|w| weight * w))
        .sum();
    dot / (norm_a * norm_b)
}

/// Unigram alignment by exact match then stem match, one-to-one and greedy
/// left-to-right; harmonic-mean F weighted towards recall with a
/// fragmentation penalty. Averaged over the aligned pairs.
pub fn meteor_lite(reference: &Captionset, candidate: &Captionset) -> Result<f64> {
    check_aligned(reference, candidate)?;
    let mut total = 0.0;
    for (ref_caption, cand_caption) in reference.captions().iter().zip(candidate.captions()) {
        total += meteor_pair(&content_tokens(ref_caption), &content_tokens(cand_caption));
    }
    Ok(total / reference.caption_count() as f64)
}

fn meteor_pair(ref_tokens: &[&str], cand_tokens: &[&str]) -> f64 {
    if ref_tokens.is_empty() || cand_tokens.is_empty() {
        return 0.0;
    }
    // alignment[cand_pos] = ref_pos
    let mut alignment: Vec<Option<usize>> = vec![None; cand_tokens.len()];
    let mut ref_used = vec![false; ref_tokens.len()];

    for (ci, cand_token) in cand_tokens.iter().enumerate() {
        for (ri, ref_token) in ref_tokens.iter().enumerate() {
            if !ref_used[ri] && cand_token == ref_token {
                alignment[ci] = Some(ri);
                ref_used[ri] = true;
                break;
            }
        }
    }
    let cand_stems: Vec<String> = cand_tokens.iter().map(|t| morph::stem(t)).collect();
    let ref_stems: Vec<String> = ref_tokens.iter().map(|t| morph::stem(t)).collect();
    for ci in 0..cand_tokens.len() {
        if alignment[ci].is_some() {
            continue;
        }
        for ri in 0..ref_tokens.len() {
            if !ref_used[ri] && cand_stems[ci] == ref_stems[ri] {
                alignment[ci] = Some(ri);
                ref_used[ri] = true;
                break;
            }
        }
    }

    let matches: Vec<(usize, usize)> = alignment
        .iter()
        .enumerate()
        .filter_map(|(ci, ri)| ri.map(|r| (ci, r)))
        .collect();
    let m = matches.len();
    if m == 0 {
        return 0.0;
    }
    let mut chunks = 1usize;
    for pair in matches.windows(2) {
        let (prev_c, prev_r) = pair[0];
        let (cur_c, cur_r) = pair[1];
        if cur_c != prev_c + 1 || cur_r != prev_r + 1 {
            chunks += 1;
        }
    }
    let precision = m as f64 / cand_tokens.len() as f64;
    let recall = m as f64 / ref_tokens.len() as f64;
    let f_mean =
        precision * recall / (METEOR_ALPHA * precision + (1.0 - METEOR_ALPHA) * recall);
    let penalty = METEOR_GAMMA * (chunks as f64 / m as f64).powf(METEOR_BETA);
    f_mean * (1.0 - penalty)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(texts: &[&str]) -> Captionset {
        Captionset::from_texts("v0", texts).unwrap()
    }

    #[test]
    fn identical_captionsets_score_maxima() {
        let a = cs(&["p1 carries p2 across the yard.", "p2 is unconscious."]);
        assert_eq!(bleu4(&a, &a).unwrap(), 1.0);
        assert_eq!(rouge_l(&a, &a).unwrap(), 1.0);
        let idf = build_idf(std::slice::from_ref(&a)).unwrap();
        assert!((cider(&a, &a, &idf).unwrap() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let a = cs(&["p1 smiles", "p2 waves"]);
        let b = cs(&["p1 smiles"]);
        assert!(matches!(bleu4(&a, &b), Err(Error::LengthMismatch { .. })));
        assert!(matches!(rouge_l(&a, &b), Err(Error::LengthMismatch { .. })));
        assert!(matches!(meteor_lite(&a, &b), Err(Error::LengthMismatch { .. })));
        let idf = build_idf(std::slice::from_ref(&a)).unwrap();
        assert!(matches!(cider(&a, &b, &idf), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn bleu_no_overlap_scores_below_smoothing_floor() {
        let reference = cs(&["red box falls"]);
        let candidate = cs(&["dog barks loud"]);
        let score = bleu4(&reference, &candidate).unwrap();
        assert!(score < 0.05, "got {score}");
    }

    #[test]
    fn rouge_disjoint_scores_zero() {
        let reference = cs(&["red box falls"]);
        let candidate = cs(&["dog barks loud"]);
        assert_eq!(rouge_l(&reference, &candidate).unwrap(), 0.0);
    }

    #[test]
    fn rouge_manual_example() {
        // ref "a b c d", cand "a c d": LCS 3, P = 1, R = 0.75.
        let reference = cs(&["alpha beta gamma delta"]);
        let candidate = cs(&["alpha gamma delta"]);
        let expected = (1.0 + 1.44) * 1.0 * 0.75 / (0.75 + 1.44 * 1.0);
        assert!((rouge_l(&reference, &candidate).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn idf_conventions() {
        let single = vec![cs(&["the man walks"])];
        let idf = build_idf(&single).unwrap();
        assert_eq!(idf.documents(), 1);
        assert_eq!(idf.lookup("man"), 0.0);

        let corpus = vec![
            cs(&["a b"]),
            cs(&["a c"]),
            cs(&["a d"]),
            cs(&["a e"]),
        ];
        let idf = build_idf(&corpus).unwrap();
        assert_eq!(idf.documents(), 4);
        // In all 4 documents.
        assert_eq!(idf.lookup("a"), 0.0);
        // In 1 of 4 documents.
        assert!((idf.lookup("b") - 4.0_f64.ln()).abs() < 1e-12);
        // Unseen: maximum idf.
        assert!((idf.lookup("zzz") - 4.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn empty_reference_corpus_is_an_error() {
        assert!(matches!(build_idf(&[]), Err(Error::EmptyCorpus)));
    }

    #[test]
    fn cider_disjoint_scores_zero() {
        let corpus = vec![cs(&["red box falls down fast"]), cs(&["dog barks very loud now"])];
        let idf = build_idf(&corpus).unwrap();
        let score = cider(&corpus[0], &corpus[1], &idf).unwrap();
        assert_eq!(score, 0.0);
    }

    #[test]
    fn meteor_identical_four_token_caption() {
        let a = cs(&["alpha beta gamma delta"]);
        // One chunk of four matches: F = 1, penalty = 0.5 * (1/4)^3.
        let expected = 1.0 - 0.5 / 64.0;
        assert!((meteor_lite(&a, &a).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn meteor_no_match_scores_zero() {
        let reference = cs(&["alpha beta"]);
        let candidate = cs(&["gamma delta"]);
        assert_eq!(meteor_lite(&reference, &candidate).unwrap(), 0.0);
    }

    #[test]
    fn meteor_stem_stage_matches_inflections() {
        let reference = cs(&["p1 walked home"]);
        let candidate = cs(&["p1 walking home"]);
        let score = meteor_lite(&reference, &candidate).unwrap();
        // All three unigrams align (walked/walking via stems), one chunk.
        let expected = 1.0 * (1.0 - 0.5 * (1.0f64 / 3.0).powi(3));
        assert!((score - expected).abs() < 1e-12);
    }

    #[test]
    fn profile_totals_follow_token_count() {
        let cs = cs(&["p1 carries the heavy box home."]);
        let profile = NgramProfile::from_caption(&cs.captions()[0]);
        assert_eq!(profile.token_count(), 6);
        for n in 1..=4 {
            assert_eq!(profile.total(n), 6 - n + 1);
        }
        let empty = NgramProfile::from_caption(&cs_empty());
        assert_eq!(empty.token_count(), 0);
        assert_eq!(empty.total(4), 0);
    }

    fn cs_empty() -> Vec<crate::token::Token> {
        Vec::new()
    }

    #[test]
    fn punctuation_is_excluded_from_ngrams() {
        let plain = cs(&["p1 smiles p2 waves"]);
        let punctuated = cs(&["p1 smiles, p2 waves."]);
        assert_eq!(bleu4(&plain, &punctuated).unwrap(), 1.0);
        assert_eq!(rouge_l(&plain, &punctuated).unwrap(), 1.0);
    }
}
