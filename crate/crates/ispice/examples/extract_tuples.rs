//! Rule-based scene-graph tuple extraction and identity filtering.
//!
//! ```text
//! cargo run --example extract_tuples
//! ```

use ispice::{extract_tuples, filter_identity_tuples, Captionset, Lexicon};

fn main() {
    let lex = Lexicon::bundled();
    let cs = Captionset::from_texts(
        "demo",
        &[
            "P1 carries P2. P2 is unconscious",
            "the old man sits on the wooden chair",
            "P1 walks towards P2",
        ],
    )
    .unwrap()
    .normalize_identities();

    let tuples = extract_tuples(&cs, lex);
    println!("extracted {} tuples:", tuples.len());
    for t in tuples.iter() {
        println!("  {:?}  arity={:?}  identity_slots={:?}", t.slots(), t.arity(), t.identity_slots());
    }

    let filtered = filter_identity_tuples(&tuples, &cs);
    println!("\nidentity tuples with two or more slots:");
    for t in filtered.p2plus.iter() {
        println!("  {:?}", t.slots());
    }
    println!(
        "identity labels present: {:?}",
        filtered.p1.iter().map(|l| l.to_string()).collect::<Vec<_>>()
    );
}
