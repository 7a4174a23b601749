//! Corpus ingestion and the line-delimited file formats.
//!
//! Canonical captionset corpus: one JSON record per line with fields
//! `videoset_id` and `captions` (list of strings). Identity tokens appear
//! inline as `P1`, `P2`, ... A two-column TSV (videoset_id, caption) is
//! also accepted, grouping consecutive rows with the same id into one
//! captionset. Loading tokenizes and identity-normalizes every captionset.
//!
//! Auxiliary formats: tuple files ({videoset_id, tuples}), prediction
//! files ({videoset_id, pred_labels}), and fill-in-the-blanks files where
//! blanks render as `[...]`.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::caption::{make_fitb, Captionset, FitbInstance, IdentityLabel};
use crate::error::{Error, Result};
use crate::token::{tokenize, Token};
use crate::tuples::{load_tuples, TupleSet};

/// Marker for a blank in fill-in-the-blanks files.
pub const FITB_FILE_BLANK: &str = "[...]";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CorpusFormat {
    #[default]
    Jsonl,
    Tsv,
}

impl std::str::FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_lowercase().as_str() {
            "jsonl" => Ok(Self::Jsonl),
            "tsv" => Ok(Self::Tsv),
            other => Err(format!("unknown corpus format: {other:?}")),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CaptionRecord {
    videoset_id: String,
    captions: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TupleRecord {
    videoset_id: String,
    tuples: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PredictionRecord {
    videoset_id: String,
    pred_labels: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FitbRecord {
    videoset_id: String,
    captions: Vec<String>,
    gt_labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pred_labels: Option<Vec<String>>,
}

/// One evaluation unit: a reference captionset with whatever optional
/// companions the run supplies.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub reference: Captionset,
    pub candidate: Option<Captionset>,
    pub reference_tuples: Option<TupleSet>,
    pub candidate_tuples: Option<TupleSet>,
    pub fitb: Option<FitbInstance>,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [CorpusEntry] {
        &mut self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn references(&self) -> Vec<Captionset> {
        self.entries.iter().map(|e| e.reference.clone()).collect()
    }

    /// Videosets that contain no identity tokens, reported as diagnostics.
    pub fn zero_identity_ids(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|e| e.reference.identity_multiset().is_empty())
            .map(|e| e.reference.videoset_id().to_string())
            .collect()
    }

    /// Joins a candidate corpus by videoset id. Every reference must find
    /// a candidate with the same caption count.
    pub fn attach_candidates(&mut self, candidates: Vec<Captionset>) -> Result<()> {
        let mut by_id: BTreeMap<String, Captionset> = candidates
            .into_iter()
            .map(|c| (c.videoset_id().to_string(), c))
            .collect();
        for entry in &mut self.entries {
            let id = entry.reference.videoset_id().to_string();
            let candidate = by_id.remove(&id).ok_or(Error::MissingCandidate {
                videoset_id: id.clone(),
            })?;
            if candidate.caption_count() != entry.reference.caption_count() {
                return Err(Error::CaptionCountMismatch {
                    videoset_id: id,
                    reference: entry.reference.caption_count(),
                    candidate: candidate.caption_count(),
                });
            }
            entry.candidate = Some(candidate);
        }
        Ok(())
    }

    /// Joins external tuple sets for one side by videoset id.
    pub fn attach_tuples(&mut self, tuples: BTreeMap<String, TupleSet>, candidate_side: bool) -> Result<()> {
        for entry in &mut self.entries {
            let id = entry.reference.videoset_id();
            let ts = tuples.get(id).cloned().ok_or(Error::MissingTuples {
                videoset_id: id.to_string(),
            })?;
            if candidate_side {
                entry.candidate_tuples = Some(ts);
            } else {
                entry.reference_tuples = Some(ts);
            }
        }
        Ok(())
    }

    /// Builds fill-in-the-blanks instances and joins predictions by
    /// videoset id. Entries without identities are skipped and listed.
    pub fn attach_fitb_predictions(
        &mut self,
        predictions: &BTreeMap<String, Vec<IdentityLabel>>,
    ) -> Result<Vec<String>> {
        let mut skipped = Vec::new();
        for entry in &mut self.entries {
            let id = entry.reference.videoset_id().to_string();
            let Ok(instance) = make_fitb(&entry.reference) else {
                skipped.push(id);
                continue;
            };
            let labels = predictions
                .get(&id)
                .ok_or(Error::MissingPredictions {
                    videoset_id: id.clone(),
                })?
                .clone();
            entry.fitb = Some(instance.with_predictions(labels)?);
        }
        Ok(skipped)
    }
}

/// Loads, tokenizes, and identity-normalizes a captionset corpus.
pub fn load_corpus(path: &Path, format: CorpusFormat) -> Result<Corpus> {
    let text = fs::read_to_string(path)?;
    let captionsets = match format {
        CorpusFormat::Jsonl => parse_jsonl(&text)?,
        CorpusFormat::Tsv => parse_tsv(&text)?,
    };
    if captionsets.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut seen: HashSet<String> = HashSet::new();
    for cs in &captionsets {
        if !seen.insert(cs.videoset_id().to_string()) {
            return Err(Error::DuplicateVideosetId {
                videoset_id: cs.videoset_id().to_string(),
            });
        }
    }
    Ok(Corpus {
        entries: captionsets
            .into_iter()
            .map(|reference| CorpusEntry {
                reference: reference.normalize_identities(),
                candidate: None,
                reference_tuples: None,
                candidate_tuples: None,
                fitb: None,
            })
            .collect(),
    })
}

/// Loads a corpus as bare captionsets (used for candidate files).
pub fn load_captionsets(path: &Path, format: CorpusFormat) -> Result<Vec<Captionset>> {
    Ok(load_corpus(path, format)?
        .entries
        .into_iter()
        .map(|e| e.reference)
        .collect())
}

fn parse_jsonl(text: &str) -> Result<Vec<Captionset>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: CaptionRecord =
            serde_json::from_str(line).map_err(|e| Error::Parse {
                line: lineno + 1,
                reason: e.to_string(),
            })?;
        let cs = Captionset::from_texts(record.videoset_id, &record.captions).map_err(|e| {
            Error::Parse {
                line: lineno + 1,
                reason: e.to_string(),
            }
        })?;
        out.push(cs);
    }
    Ok(out)
}

fn parse_tsv(text: &str) -> Result<Vec<Captionset>> {
    let mut out: Vec<(String, Vec<String>)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.splitn(2, '\t');
        let id = fields.next().unwrap_or("").trim();
        let caption = fields.next().ok_or(Error::Parse {
            line: lineno + 1,
            reason: "expected two tab-separated columns".to_string(),
        })?;
        if id.is_empty() {
            return Err(Error::Parse {
                line: lineno + 1,
                reason: "empty videoset id".to_string(),
            });
        }
        match out.last_mut() {
            Some((last_id, captions)) if last_id == id => captions.push(caption.to_string()),
            _ => out.push((id.to_string(), vec![caption.to_string()])),
        }
    }
    out.into_iter()
        .map(|(id, captions)| Captionset::from_texts(id, &captions))
        .collect()
}

/// Serializes captionsets to the canonical JSONL corpus form. Loading the
/// result reproduces the same captionsets.
pub fn save_captionsets(captionsets: &[Captionset], path: &Path) -> Result<()> {
    let mut out = String::new();
    for cs in captionsets {
        let record = CaptionRecord {
            videoset_id: cs.videoset_id().to_string(),
            captions: cs.to_texts(),
        };
        out.push_str(&serde_json::to_string(&record).expect("record serializes"));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Loads an external tuple file: one record per videoset.
pub fn load_tuple_file(path: &Path) -> Result<BTreeMap<String, TupleSet>> {
    let text = fs::read_to_string(path)?;
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: TupleRecord = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: lineno + 1,
            reason: e.to_string(),
        })?;
        let tuples = load_tuples(&record.tuples).map_err(|e| Error::Parse {
            line: lineno + 1,
            reason: format!("videoset {}: {e}", record.videoset_id),
        })?;
        if out.insert(record.videoset_id.clone(), tuples).is_some() {
            return Err(Error::DuplicateVideosetId {
                videoset_id: record.videoset_id,
            });
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(out)
}

/// One line of the external tuple format.
pub fn tuple_record_line(videoset_id: &str, tuples: &TupleSet) -> String {
    let record = TupleRecord {
        videoset_id: videoset_id.to_string(),
        tuples: tuples.to_slot_lists(),
    };
    serde_json::to_string(&record).expect("record serializes")
}

/// Writes tuple sets in the external tuple format, one record per
/// videoset, in the given order.
pub fn save_tuple_file(entries: &[(String, TupleSet)], path: &Path) -> Result<()> {
    let mut out = String::new();
    for (videoset_id, tuples) in entries {
        out.push_str(&tuple_record_line(videoset_id, tuples));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Loads a prediction file: `{videoset_id, pred_labels: ["P1", ...]}`.
pub fn load_predictions(path: &Path) -> Result<BTreeMap<String, Vec<IdentityLabel>>> {
    let text = fs::read_to_string(path)?;
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: PredictionRecord = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: lineno + 1,
            reason: e.to_string(),
        })?;
        let labels = record
            .pred_labels
            .iter()
            .map(|s| s.parse::<IdentityLabel>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|reason| Error::Parse {
                line: lineno + 1,
                reason,
            })?;
        if out.insert(record.videoset_id.clone(), labels).is_some() {
            return Err(Error::DuplicateVideosetId {
                videoset_id: record.videoset_id,
            });
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(out)
}

fn detokenize_with_blanks(tokens: &[Token]) -> String {
    let rendered: Vec<Token> = tokens
        .iter()
        .map(|t| {
            if t.is_blank() {
                Token::word(FITB_FILE_BLANK)
            } else {
                t.clone()
            }
        })
        .collect();
    crate::token::detokenize(&rendered)
}

/// Writes fill-in-the-blanks instances with blanks rendered as `[...]`.
pub fn save_fitb_file(instances: &[FitbInstance], path: &Path) -> Result<()> {
    let mut out = String::new();
    for instance in instances {
        let record = FitbRecord {
            videoset_id: instance.videoset_id().to_string(),
            captions: instance
                .captionset_with_blanks()
                .captions()
                .iter()
                .map(|c| detokenize_with_blanks(c))
                .collect(),
            gt_labels: instance.gt_labels().iter().map(|l| l.to_string()).collect(),
            pred_labels: instance
                .pred_labels()
                .map(|p| p.iter().map(|l| l.to_string()).collect()),
        };
        out.push_str(&serde_json::to_string(&record).expect("record serializes"));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

fn tokenize_fitb_caption(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    for piece in text.split_whitespace() {
        if piece == FITB_FILE_BLANK {
            tokens.push(Token::blank());
        } else if let Some(rest) = piece.strip_prefix(FITB_FILE_BLANK) {
            tokens.push(Token::blank());
            tokens.extend(tokenize(rest));
        } else {
            tokens.extend(tokenize(piece));
        }
    }
    tokens
}

/// Reads a fill-in-the-blanks file back into instances.
pub fn load_fitb_file(path: &Path) -> Result<Vec<FitbInstance>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: FitbRecord = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: lineno + 1,
            reason: e.to_string(),
        })?;
        let parse_labels = |labels: &[String]| -> Result<Vec<IdentityLabel>> {
            labels
                .iter()
                .map(|s| s.parse::<IdentityLabel>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|reason| Error::Parse {
                    line: lineno + 1,
                    reason,
                })
        };
        let gt_labels = parse_labels(&record.gt_labels)?;
        let captions: Vec<Vec<Token>> = record
            .captions
            .iter()
            .map(|c| tokenize_fitb_caption(c))
            .collect();
        let blanked = Captionset::new(record.videoset_id.clone(), captions).map_err(|e| {
            Error::Parse {
                line: lineno + 1,
                reason: e.to_string(),
            }
        })?;
        // Reconstruct through the filled captionset so blank bookkeeping
        // stays in one place.
        let mut blanks = Vec::new();
        for (ci, caption) in blanked.captions().iter().enumerate() {
            for (ti, token) in caption.iter().enumerate() {
                if token.is_blank() {
                    blanks.push((ci, ti));
                }
            }
        }
        if blanks.len() != gt_labels.len() {
            return Err(Error::Parse {
                line: lineno + 1,
                reason: format!(
                    "{} blanks but {} gt labels",
                    blanks.len(),
                    gt_labels.len()
                ),
            });
        }
        let mut filled = blanked.clone();
        for (&(ci, ti), label) in blanks.iter().zip(&gt_labels) {
            filled = filled.with_token(ci, ti, Token::identity(label.index()));
        }
        let mut instance = make_fitb(&filled).map_err(|e| Error::Parse {
            line: lineno + 1,
            reason: e.to_string(),
        })?;
        if let Some(preds) = &record.pred_labels {
            instance = instance.with_predictions(parse_labels(preds)?)?;
        }
        out.push(instance);
    }
    if out.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn write(path: &Path, content: &str) {
        fs::write(path, content).unwrap();
    }

    #[test]
    fn loads_and_normalizes_jsonl() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        write(
            &path,
            r#"{"videoset_id":"v1","captions":["P4 carries P3.","P3 waves."]}
"#,
        );
        let corpus = load_corpus(&path, CorpusFormat::Jsonl).unwrap();
        assert_eq!(corpus.len(), 1);
        assert_eq!(
            corpus.entries()[0].reference.to_texts(),
            vec!["P1 carries P2.".to_string(), "P2 waves.".to_string()]
        );
    }

    #[test]
    fn duplicate_videoset_id_is_an_error() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        write(
            &path,
            "{\"videoset_id\":\"v1\",\"captions\":[\"P1 waves.\"]}\n{\"videoset_id\":\"v1\",\"captions\":[\"P1 smiles.\"]}\n",
        );
        assert!(matches!(
            load_corpus(&path, CorpusFormat::Jsonl),
            Err(Error::DuplicateVideosetId { .. })
        ));
    }

    #[test]
    fn empty_corpus_is_an_error() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("empty.jsonl");
        write(&path, "");
        assert!(matches!(
            load_corpus(&path, CorpusFormat::Jsonl),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn parse_error_reports_line() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        write(
            &path,
            "{\"videoset_id\":\"v1\",\"captions\":[\"P1 waves.\"]}\nnot json\n",
        );
        match load_corpus(&path, CorpusFormat::Jsonl) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn tsv_groups_consecutive_rows() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("corpus.tsv");
        write(
            &path,
            "v1\tP1 waves.\nv1\tP1 smiles.\nv2\tP2 runs.\n",
        );
        let corpus = load_corpus(&path, CorpusFormat::Tsv).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.entries()[0].reference.caption_count(), 2);
        assert_eq!(corpus.entries()[1].reference.caption_count(), 1);
    }

    #[test]
    fn canonical_round_trip_is_lossless() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        write(
            &path,
            "{\"videoset_id\":\"v1\",\"captions\":[\"P1 carries P2.\",\"P2 is unconscious.\"]}\n",
        );
        let original = fs::read_to_string(&path).unwrap();
        let corpus = load_corpus(&path, CorpusFormat::Jsonl).unwrap();
        let out = dir.path().join("round.jsonl");
        save_captionsets(&corpus.references(), &out).unwrap();
        assert_eq!(fs::read_to_string(&out).unwrap(), original);
    }

    #[test]
    fn tuple_file_round_trips() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("tuples.jsonl");
        let ts = load_tuples(&[
            vec!["p1".to_string(), "carry".to_string(), "p2".to_string()],
            vec!["p1".to_string()],
        ])
        .unwrap();
        save_tuple_file(&[("v1".to_string(), ts.clone())], &path).unwrap();
        let loaded = load_tuple_file(&path).unwrap();
        assert_eq!(loaded.get("v1").unwrap(), &ts);
    }

    #[test]
    fn fitb_file_round_trips_with_file_markers() {
        let dir = tempdir().unwrap();
        let cs = Captionset::from_texts("v1", &["P1 carries P2.", "P2 is unconscious."]).unwrap();
        let instance = make_fitb(&cs).unwrap();
        let path = dir.path().join("fitb.jsonl");
        save_fitb_file(std::slice::from_ref(&instance), &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.contains("[...]"));
        assert!(!text.contains("[blank]"));
        let loaded = load_fitb_file(&path).unwrap();
        assert_eq!(loaded.len(), 1);
        assert_eq!(loaded[0].blanks(), instance.blanks());
        assert_eq!(loaded[0].gt_labels(), instance.gt_labels());
        assert_eq!(
            loaded[0].fill_blanks(loaded[0].gt_labels()).unwrap(),
            cs
        );
    }

    #[test]
    fn predictions_parse_and_join() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("preds.jsonl");
        write(
            &path,
            "{\"videoset_id\":\"v1\",\"pred_labels\":[\"P1\",\"P2\",\"P2\"]}\n",
        );
        let preds = load_predictions(&path).unwrap();
        assert_eq!(preds.get("v1").unwrap().len(), 3);

        let corpus_path = dir.path().join("corpus.jsonl");
        write(
            &corpus_path,
            "{\"videoset_id\":\"v1\",\"captions\":[\"P1 carries P2.\",\"P2 waves.\"]}\n",
        );
        let mut corpus = load_corpus(&corpus_path, CorpusFormat::Jsonl).unwrap();
        let skipped = corpus.attach_fitb_predictions(&preds).unwrap();
        assert!(skipped.is_empty());
        let fitb = corpus.entries()[0].fitb.as_ref().unwrap();
        assert_eq!(fitb.blank_count(), 3);
    }

    #[test]
    fn candidate_caption_count_must_match() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        write(
            &path,
            "{\"videoset_id\":\"v1\",\"captions\":[\"P1 waves.\",\"P1 smiles.\"]}\n",
        );
        let mut corpus = load_corpus(&path, CorpusFormat::Jsonl).unwrap();
        let short = Captionset::from_texts("v1", &["P1 waves."]).unwrap();
        assert!(matches!(
            corpus.attach_candidates(vec![short]),
            Err(Error::CaptionCountMismatch { .. })
        ));
    }
}
