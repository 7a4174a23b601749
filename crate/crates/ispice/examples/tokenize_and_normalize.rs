//! Tokenization, identity detection, and id normalization.
//!
//! ```text
//! cargo run --example tokenize_and_normalize
//! ```

use ispice::{tokenize, Captionset};

fn main() {
    let tokens = tokenize("P1 carries P2.");
    println!("tokens of {:?}:", "P1 carries P2.");
    for token in &tokens {
        println!(
            "  {:<10} kind={:?} identity={:?}",
            token.surface(),
            token.kind(),
            token.identity_index()
        );
    }

    // Normalization renumbers ids by first occurrence, so relabeled
    // captionsets become the same canonical captionset.
    let a = Captionset::from_texts("demo", &["P4 carries P3.", "P3 is unconscious."]).unwrap();
    let b = Captionset::from_texts("demo", &["P2 carries P1.", "P1 is unconscious."]).unwrap();
    println!("\nbefore: {:?}", a.to_texts());
    println!("normalized: {:?}", a.normalize_identities().to_texts());
    assert_eq!(a.normalize_identities(), b.normalize_identities());
    println!("both relabelings normalize to the same captionset");

    let counts = a.normalize_identities().identity_multiset();
    println!("identity occurrence counts: {counts:?}");
}
