//! Seeded identity manipulations: swap, add, remove.
//!
//! Swaps touch only ids that occur more than once (replacing a standalone
//! id merely relabels the story). Addition replaces one occurrence of a
//! multi-occurrence id with a fresh label; removal rewrites a
//! single-occurrence id to an existing one.
//!
//! ```text
//! cargo run --example perturb_identities
//! ```

use ispice::{eligible_swap_positions, perturb, Captionset, PerturbKind};

fn main() {
    let cs = Captionset::from_texts(
        "demo",
        &["P1 carries P2. P2 is unconscious", "P3 watches from the door."],
    )
    .unwrap()
    .normalize_identities();
    println!("source: {:?}", cs.to_texts());
    println!("eligible swap positions: {:?}", eligible_swap_positions(&cs));

    for kind in PerturbKind::MANIPULATIONS {
        match perturb(&cs, kind, 11) {
            Some(record) => {
                println!("\n{kind} (seed 11):");
                for edit in &record.edits {
                    println!(
                        "  caption {} token {}: {} -> {}",
                        edit.caption_index, edit.token_index, edit.old_label, edit.new_label
                    );
                }
                println!("  result: {:?}", record.result.to_texts());
                // Records replay: applying the edits to the source
                // reproduces the stored result exactly.
                assert_eq!(record.replay(&cs).unwrap(), record.result);
            }
            None => println!("\n{kind}: no eligible site"),
        }
    }
}
