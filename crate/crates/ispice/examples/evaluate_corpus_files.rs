//! End-to-end corpus evaluation through the file formats: write a
//! reference and a candidate corpus, load, join, score, and render the
//! report the same way the `ispice evaluate` command does.
//!
//! ```text
//! cargo run --example evaluate_corpus_files
//! ```

use std::fs;

use ispice::corpus::{load_captionsets, load_corpus, CorpusFormat};
use ispice::report::{evaluate_corpus, render_metric_report};
use ispice::spice::EvalOptions;
use ispice::Lexicon;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("ispice-example");
    fs::create_dir_all(&dir)?;
    let refs_path = dir.join("refs.jsonl");
    let cands_path = dir.join("cands.jsonl");

    fs::write(
        &refs_path,
        concat!(
            "{\"videoset_id\":\"v1\",\"captions\":[\"P1 carries P2.\",\"P2 is unconscious.\"]}\n",
            "{\"videoset_id\":\"v2\",\"captions\":[\"P1 waves at P2.\",\"P2 smiles.\"]}\n",
        ),
    )?;
    fs::write(
        &cands_path,
        concat!(
            "{\"videoset_id\":\"v1\",\"captions\":[\"P2 carries P1.\",\"P2 is unconscious.\"]}\n",
            "{\"videoset_id\":\"v2\",\"captions\":[\"P1 waves at P2.\",\"P2 smiles.\"]}\n",
        ),
    )?;

    let mut corpus = load_corpus(&refs_path, CorpusFormat::Jsonl)?;
    corpus.attach_candidates(load_captionsets(&cands_path, CorpusFormat::Jsonl)?)?;

    let report = evaluate_corpus(&corpus, Lexicon::bundled(), &EvalOptions::default())?;
    print!("{}", render_metric_report(&report));

    let json_path = dir.join("report.json");
    fs::write(&json_path, serde_json::to_string_pretty(&report)?)?;
    println!("\nJSON report written to {}", json_path.display());
    Ok(())
}
