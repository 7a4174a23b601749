//! Per-entry and corpus-level reports.
//!
//! Reports are dual-emitted: a machine-readable JSON document and an
//! aligned-column text table. Every report embeds the toolkit version,
//! the lexicon hash, and the seed (when one was used) so results replay.
//! Captionsets whose identity-aware score is undefined are reported as
//! null, excluded from the mean, and counted.

use serde::Serialize;

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::extract::extract_tuples;
use crate::fitb::{pairwise_scores, PairwiseScores};
use crate::lexicon::Lexicon;
use crate::ngram::{bleu4, build_idf, cider, meteor_lite, rouge_l};
use crate::perturb::SensitivityRow;
use crate::spice::{spice_score_from_tuples, EvalOptions, IspiceBreakdown};

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct EntryScores {
    pub videoset_id: String,
    pub spice: f64,
    pub ispice: Option<IspiceBreakdown>,
    pub bleu4: f64,
    pub rouge_l: f64,
    pub cider: f64,
    pub meteor_lite: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Aggregates {
    pub spice: f64,
    pub ispice: Option<f64>,
    pub bleu4: f64,
    pub rouge_l: f64,
    pub cider: f64,
    pub meteor_lite: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricReport {
    pub toolkit_version: String,
    pub lexicon_hash: String,
    pub seed: Option<u64>,
    pub entry_count: usize,
    pub ispice_undefined_count: usize,
    pub zero_identity_ids: Vec<String>,
    pub aggregates: Aggregates,
    pub entries: Vec<EntryScores>,
}

/// Scores every entry of an aligned corpus. Tuples come from the built-in
/// extractor unless an entry carries externally supplied tuple sets.
pub fn evaluate_corpus(corpus: &Corpus, lex: &Lexicon, options: &EvalOptions) -> Result<MetricReport> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let references = corpus.references();
    let idf = build_idf(&references)?;

    let mut entries = Vec::with_capacity(corpus.len());
    for entry in corpus.entries() {
        let reference = &entry.reference;
        let candidate = entry
            .candidate
            .as_ref()
            .ok_or(Error::MissingCandidate {
                videoset_id: reference.videoset_id().to_string(),
            })?;
        let ref_tuples = match &entry.reference_tuples {
            Some(ts) => ts.clone(),
            None => extract_tuples(reference, lex),
        };
        let cand_tuples = match &entry.candidate_tuples {
            Some(ts) => ts.clone(),
            None => extract_tuples(candidate, lex),
        };
        let tuple_scores =
            spice_score_from_tuples(reference, candidate, &ref_tuples, &cand_tuples, options);
        entries.push(EntryScores {
            videoset_id: reference.videoset_id().to_string(),
            spice: tuple_scores.spice,
            ispice: tuple_scores.ispice,
            bleu4: bleu4(reference, candidate)?,
            rouge_l: rouge_l(reference, candidate)?,
            cider: cider(reference, candidate, &idf)?,
            meteor_lite: meteor_lite(reference, candidate)?,
        });
    }

    let mean = |select: &dyn Fn(&EntryScores) -> f64| -> f64 {
        entries.iter().map(select).sum::<f64>() / entries.len() as f64
    };
    let defined: Vec<f64> = entries
        .iter()
        .filter_map(|e| e.ispice.map(|b| b.value))
        .collect();
    let aggregates = Aggregates {
        spice: mean(&|e| e.spice),
        ispice: if defined.is_empty() {
            None
        } else {
            Some(defined.iter().sum::<f64>() / defined.len() as f64)
        },
        bleu4: mean(&|e| e.bleu4),
        rouge_l: mean(&|e| e.rouge_l),
        cider: mean(&|e| e.cider),
        meteor_lite: mean(&|e| e.meteor_lite),
    };
    Ok(MetricReport {
        toolkit_version: TOOLKIT_VERSION.to_string(),
        lexicon_hash: lex.hash().to_string(),
        seed: None,
        entry_count: entries.len(),
        ispice_undefined_count: entries.len() - defined.len(),
        zero_identity_ids: corpus.zero_identity_ids(),
        aggregates,
        entries,
    })
}

fn fmt_opt(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v:.4}"),
        None => "-".to_string(),
    }
}

/// Aligned-column text rendering of a metric report.
pub fn render_metric_report(report: &MetricReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# toolkit {}  lexicon {}  entries {}  ispice-undefined {}\n",
        report.toolkit_version,
        &report.lexicon_hash[..12],
        report.entry_count,
        report.ispice_undefined_count,
    ));
    out.push_str(&format!(
        "{:<20} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}\n",
        "videoset", "spice", "ispice", "term2+", "term1", "bleu4", "rouge_l", "cider", "meteor"
    ));
    for e in &report.entries {
        out.push_str(&format!(
            "{:<20} {:>8.4} {:>8} {:>8} {:>8} {:>8.4} {:>8.4} {:>8.4} {:>8.4}\n",
            e.videoset_id,
            e.spice,
            fmt_opt(e.ispice.map(|b| b.value)),
            fmt_opt(e.ispice.map(|b| b.term_p2plus)),
            fmt_opt(e.ispice.map(|b| b.term_p1)),
            e.bleu4,
            e.rouge_l,
            e.cider,
            e.meteor_lite,
        ));
    }
    out.push_str(&format!(
        "{:<20} {:>8.4} {:>8} {:>8} {:>8} {:>8.4} {:>8.4} {:>8.4} {:>8.4}\n",
        "MEAN",
        report.aggregates.spice,
        fmt_opt(report.aggregates.ispice),
        "-",
        "-",
        report.aggregates.bleu4,
        report.aggregates.rouge_l,
        report.aggregates.cider,
        report.aggregates.meteor_lite,
    ));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SensitivityReport {
    pub toolkit_version: String,
    pub lexicon_hash: String,
    pub seed: u64,
    pub samples_per_kind: usize,
    pub rows: Vec<SensitivityRow>,
}

impl SensitivityReport {
    pub fn new(rows: Vec<SensitivityRow>, seed: u64, samples_per_kind: usize, lex: &Lexicon) -> Self {
        Self {
            toolkit_version: TOOLKIT_VERSION.to_string(),
            lexicon_hash: lex.hash().to_string(),
            seed,
            samples_per_kind,
            rows,
        }
    }
}

/// Tabular text rendering: one row per metric per kind.
pub fn render_sensitivity_report(report: &SensitivityReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# toolkit {}  lexicon {}  seed {}  samples {}\n",
        report.toolkit_version,
        &report.lexicon_hash[..12],
        report.seed,
        report.samples_per_kind,
    ));
    out.push_str(&format!(
        "{:<10} {:<12} {:>10} {:>10} {:>10}\n",
        "kind", "metric", "mean_ratio", "n_samples", "n_skipped"
    ));
    for row in &report.rows {
        out.push_str(&format!(
            "{:<10} {:<12} {:>10.4} {:>10} {:>10}\n",
            row.kind.to_string(),
            row.metric,
            row.mean_ratio,
            row.n_samples,
            row.n_skipped,
        ));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct FitbReport {
    pub toolkit_version: String,
    pub scores: PairwiseScores,
    /// Videosets skipped because the reference has no identities.
    pub skipped_no_identities: Vec<String>,
}

/// Scores the fill-in-the-blanks predictions attached to a corpus.
pub fn evaluate_fitb(corpus: &Corpus, skipped: Vec<String>) -> Result<FitbReport> {
    let instances: Vec<_> = corpus
        .entries()
        .iter()
        .filter_map(|e| e.fitb.clone())
        .collect();
    if instances.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(FitbReport {
        toolkit_version: TOOLKIT_VERSION.to_string(),
        scores: pairwise_scores(&instances)?,
        skipped_no_identities: skipped,
    })
}

/// Text rendering with the four pair accuracies as percentages.
pub fn render_fitb_report(report: &FitbReport) -> String {
    let s = &report.scores;
    let mut out = String::new();
    out.push_str(&format!("# toolkit {}\n", report.toolkit_version));
    out.push_str(&format!(
        "{:<10} {:>10} {:>10} {:>10}\n",
        "metric", "percent", "correct", "total"
    ));
    out.push_str(&format!(
        "{:<10} {:>10.2} {:>10} {:>10}\n",
        "same",
        100.0 * s.same_acc,
        s.correct_same,
        s.same_pairs
    ));
    out.push_str(&format!(
        "{:<10} {:>10.2} {:>10} {:>10}\n",
        "diff",
        100.0 * s.diff_acc,
        s.correct_diff,
        s.diff_pairs
    ));
    out.push_str(&format!(
        "{:<10} {:>10.2} {:>10} {:>10}\n",
        "inst",
        100.0 * s.inst_acc,
        s.correct_same + s.correct_diff,
        s.same_pairs + s.diff_pairs
    ));
    out.push_str(&format!("{:<10} {:>10.2}\n", "class", 100.0 * s.class_acc));
    out.push_str(&format!(
        "{:<10} {:>10.2} {:>10} {:>10}\n",
        "blank",
        100.0 * s.blank_acc,
        s.correct_blanks,
        s.blanks
    ));
    out.push_str(&format!(
        "instances {}  single-blank {}  skipped-no-identities {}\n",
        s.instances,
        s.single_blank_instances,
        report.skipped_no_identities.len()
    ));
    out
}
