//! Fill-in-the-blanks: blanking identities, filling them back, and the
//! pairwise accuracy metrics.
//!
//! ```text
//! cargo run --example fitb_scoring
//! ```

use ispice::{make_fitb, pairwise_scores, Captionset, IdentityLabel};

fn main() {
    let cs = Captionset::from_texts(
        "demo",
        &["P1 carries P2.", "P2 is unconscious.", "P1 calls for help."],
    )
    .unwrap()
    .normalize_identities();

    let instance = make_fitb(&cs).unwrap();
    println!("blanked captions:");
    for text in instance.captionset_with_blanks().to_texts() {
        println!("  {text}");
    }
    println!(
        "ground truth: {:?}",
        instance.gt_labels().iter().map(|l| l.to_string()).collect::<Vec<_>>()
    );

    // Filling the blanks back with the ground truth restores the source.
    assert_eq!(instance.fill_blanks(instance.gt_labels()).unwrap(), cs);

    // A prediction that confuses the second blank pair.
    let predicted: Vec<IdentityLabel> = ["P1", "P2", "P1", "P1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let scored = instance.clone().with_predictions(predicted).unwrap();
    let scores = pairwise_scores(&[scored]).unwrap();
    println!("\nsame-acc  {:.2}% ({}/{} pairs)", 100.0 * scores.same_acc, scores.correct_same, scores.same_pairs);
    println!("diff-acc  {:.2}% ({}/{} pairs)", 100.0 * scores.diff_acc, scores.correct_diff, scores.diff_pairs);
    println!("inst-acc  {:.2}%", 100.0 * scores.inst_acc);
    println!("class-acc {:.2}%", 100.0 * scores.class_acc);
    println!("per-blank {:.2}%", 100.0 * scores.blank_acc);
}
