//! The id-manipulation sensitivity experiment on a small inline corpus.
//!
//! For every captionset and manipulation kind, the experiment draws
//! seeded perturbations, scores the reference against itself (s) and
//! against the re-normalized perturbation (s-hat), and reports the mean
//! ratio per metric. Lower means more identity-sensitive; the
//! identity-aware score drops hardest.
//!
//! ```text
//! cargo run --example sensitivity_experiment
//! ```

use ispice::perturb::{sensitivity_experiment, PerturbKind};
use ispice::spice::EvalOptions;
use ispice::{Captionset, Lexicon};

fn main() {
    let corpus: Vec<Captionset> = [
        vec![
            "P1 carries P2 through the dark hallway near the door.",
            "P2 waves at P1 and smiles in the quiet kitchen.",
            "P3 is tired and leans against the wall in the garden.",
            "P1 nods and sighs in the silent room near the window.",
            "the old door creaks near the staircase.",
        ],
        vec![
            "P1 looks at P2 and stumbles in the narrow street.",
            "P2 is angry and P1 holds the letter near the table.",
            "P3 sits beside the window in the kitchen.",
            "P2 shrugs and laughs in the bright garden near the gate.",
            "the tall man walks towards the car.",
        ],
        vec![
            "P1 chases P2 through the empty garden near the fence.",
            "P2 grabs P1 and cries in the cold hallway.",
            "P3 is pale and stands near the mirror in the bedroom.",
            "P1 yawns and stretches in the warm kitchen near the stove.",
            "the heavy suitcase falls near the stairs.",
        ],
    ]
    .iter()
    .enumerate()
    .map(|(i, texts)| {
        Captionset::from_texts(format!("demo-{i}"), texts)
            .unwrap()
            .normalize_identities()
    })
    .collect();

    let rows = sensitivity_experiment(
        &corpus,
        Lexicon::bundled(),
        &EvalOptions::default(),
        &PerturbKind::MANIPULATIONS,
        3,
        0,
    )
    .unwrap();

    println!(
        "{:<8} {:<12} {:>10} {:>10} {:>10}",
        "kind", "metric", "mean_ratio", "n_samples", "n_skipped"
    );
    for row in &rows {
        println!(
            "{:<8} {:<12} {:>10.4} {:>10} {:>10}",
            row.kind.to_string(),
            row.metric,
            row.mean_ratio,
            row.n_samples,
            row.n_skipped
        );
    }
}
