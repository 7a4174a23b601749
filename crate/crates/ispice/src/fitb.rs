//! Pairwise fill-in-the-blanks accuracy.
//!
//! Every unordered pair of blanks within one captionset is classified by
//! its ground truth: a same-pair (both blanks hold one label) is correct
//! when the predictions agree, a diff-pair is correct when they differ.
//! Scores are micro-averages over all pairs in the corpus; pairs never
//! cross captionsets. The metrics only compare predictions for equality,
//! so any bijective relabeling of a captionset's predictions scores
//! identically.

use serde::{Deserialize, Serialize};

use crate::caption::FitbInstance;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairwiseScores {
    pub same_acc: f64,
    pub diff_acc: f64,
    /// Combined accuracy over all pairs.
    pub inst_acc: f64,
    /// Harmonic mean of same and diff accuracy.
    pub class_acc: f64,
    pub same_pairs: usize,
    pub diff_pairs: usize,
    pub correct_same: usize,
    pub correct_diff: usize,
    /// Auxiliary per-blank accuracy, reported alongside the pair metrics.
    pub blank_acc: f64,
    pub blanks: usize,
    pub correct_blanks: usize,
    /// Instances with fewer than two blanks contribute no pairs.
    pub single_blank_instances: usize,
    pub instances: usize,
}

fn ratio(correct: usize, total: usize) -> f64 {
    if total == 0 {
        1.0
    } else {
        correct as f64 / total as f64
    }
}

/// Scores predicted labels over all within-captionset blank pairs. Every
/// instance must carry predictions.
pub fn pairwise_scores(instances: &[FitbInstance]) -> Result<PairwiseScores> {
    let mut same_pairs = 0usize;
    let mut diff_pairs = 0usize;
    let mut correct_same = 0usize;
    let mut correct_diff = 0usize;
    let mut blanks = 0usize;
    let mut correct_blanks = 0usize;
    let mut single_blank_instances = 0usize;

    for instance in instances {
        let gt = instance.gt_labels();
        let pred = instance
            .pred_labels()
            .ok_or_else(|| Error::MissingPredictions {
                videoset_id: instance.videoset_id().to_string(),
            })?;
        blanks += gt.len();
        correct_blanks += gt.iter().zip(pred).filter(|(g, p)| g == p).count();
        if gt.len() < 2 {
            single_blank_instances += 1;
            continue;
        }
        for k in 0..gt.len() {
            for k2 in k + 1..gt.len() {
                if gt[k] == gt[k2] {
                    same_pairs += 1;
                    if pred[k] == pred[k2] {
                        correct_same += 1;
                    }
                } else {
                    diff_pairs += 1;
                    if pred[k] != pred[k2] {
                        correct_diff += 1;
                    }
                }
            }
        }
    }

    let same_acc = ratio(correct_same, same_pairs);
    let diff_acc = ratio(correct_diff, diff_pairs);
    let inst_acc = ratio(correct_same + correct_diff, same_pairs + diff_pairs);
    let class_acc = if same_acc + diff_acc == 0.0 {
        0.0
    } else {
        2.0 * same_acc * diff_acc / (same_acc + diff_acc)
    };
    Ok(PairwiseScores {
        same_acc,
        diff_acc,
        inst_acc,
        class_acc,
        same_pairs,
        diff_pairs,
        correct_same,
        correct_diff,
        blank_acc: ratio(correct_blanks, blanks),
        blanks,
        correct_blanks,
        single_blank_instances,
        instances: instances.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caption::{make_fitb, Captionset, IdentityLabel};

    fn instance(gt_text: &str, preds: &[u32]) -> FitbInstance {
        let cs = Captionset::from_texts("v0", &[gt_text]).unwrap();
        let labels: Vec<IdentityLabel> = preds
            .iter()
            .map(|&i| IdentityLabel::new(i).unwrap())
            .collect();
        make_fitb(&cs).unwrap().with_predictions(labels).unwrap()
    }

    #[test]
    fn worked_three_blank_example() {
        // gt [P1, P1, P2], pred [P1, P2, P2]:
        // same-pairs {(1,2)}: 0/1; diff-pairs {(1,3),(2,3)}: 1/2.
        let inst = instance("P1 meets P1 and P2", &[1, 2, 2]);
        let scores = pairwise_scores(&[inst]).unwrap();
        assert_eq!(scores.same_pairs, 1);
        assert_eq!(scores.correct_same, 0);
        assert_eq!(scores.diff_pairs, 2);
        assert_eq!(scores.correct_diff, 1);
        assert!((scores.inst_acc - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(scores.class_acc, 0.0);
    }

    #[test]
    fn perfect_predictions_score_one_everywhere() {
        let inst = instance("P1 meets P2. P1 waves", &[1, 2, 1]);
        let scores = pairwise_scores(&[inst]).unwrap();
        assert_eq!(scores.same_acc, 1.0);
        assert_eq!(scores.diff_acc, 1.0);
        assert_eq!(scores.inst_acc, 1.0);
        assert_eq!(scores.class_acc, 1.0);
        assert_eq!(scores.blank_acc, 1.0);
    }

    #[test]
    fn constant_predictions_annihilate_class_accuracy() {
        let inst = instance("P1 meets P2. P1 waves", &[1, 1, 1]);
        let scores = pairwise_scores(&[inst]).unwrap();
        assert_eq!(scores.diff_acc, 0.0);
        assert_eq!(scores.class_acc, 0.0);
        assert_eq!(scores.same_acc, 1.0);
    }

    #[test]
    fn single_blank_instances_are_counted_not_paired() {
        let single = instance("P1 waves", &[2]);
        let scores = pairwise_scores(&[single]).unwrap();
        assert_eq!(scores.single_blank_instances, 1);
        assert_eq!(scores.same_pairs + scores.diff_pairs, 0);
        assert_eq!(scores.blanks, 1);
        assert_eq!(scores.correct_blanks, 0);
    }

    #[test]
    fn missing_predictions_error() {
        let cs = Captionset::from_texts("v0", &["P1 meets P2"]).unwrap();
        let inst = make_fitb(&cs).unwrap();
        assert!(matches!(
            pairwise_scores(&[inst]),
            Err(Error::MissingPredictions { .. })
        ));
    }

    #[test]
    fn relabeling_predictions_leaves_scores_unchanged() {
        let a = instance("P1 meets P2. P1 waves at P2", &[1, 2, 1, 2]);
        let b = instance("P1 meets P2. P1 waves at P2", &[2, 1, 2, 1]);
        let sa = pairwise_scores(&[a]).unwrap();
        let sb = pairwise_scores(&[b]).unwrap();
        assert_eq!(sa.same_acc, sb.same_acc);
        assert_eq!(sa.diff_acc, sb.diff_acc);
        assert_eq!(sa.inst_acc, sb.inst_acc);
        assert_eq!(sa.class_acc, sb.class_acc);
    }
}
