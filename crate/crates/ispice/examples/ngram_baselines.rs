//! The four n-gram comparison metrics on aligned captionsets.
//!
//! ```text
//! cargo run --example ngram_baselines
//! ```

use ispice::{bleu4, build_idf, cider, meteor_lite, rouge_l, Captionset};

fn main() {
    let reference = Captionset::from_texts(
        "demo",
        &[
            "P1 carries the heavy box towards the door.",
            "P2 watches P1 from the window.",
        ],
    )
    .unwrap()
    .normalize_identities();
    let candidate = Captionset::from_texts(
        "demo",
        &[
            "P1 carries the box towards the door.",
            "P2 watches P1 quietly from the window.",
        ],
    )
    .unwrap()
    .normalize_identities();

    // CIDEr weighs n-grams by inverse document frequency over the
    // reference corpus; every caption is one document.
    let idf = build_idf(std::slice::from_ref(&reference)).unwrap();

    println!("bleu4       = {:.4}", bleu4(&reference, &candidate).unwrap());
    println!("rouge_l     = {:.4}", rouge_l(&reference, &candidate).unwrap());
    println!("cider       = {:.4}", cider(&reference, &candidate, &idf).unwrap());
    println!("meteor_lite = {:.4}", meteor_lite(&reference, &candidate).unwrap());

    println!(
        "\nself-comparison maxima: bleu {:.1} rouge {:.1} cider {:.1}",
        bleu4(&reference, &reference).unwrap(),
        rouge_l(&reference, &reference).unwrap(),
        cider(&reference, &reference, &idf).unwrap(),
    );
}
