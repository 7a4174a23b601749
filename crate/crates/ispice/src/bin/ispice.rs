//! Command-line front end over the library pipelines.
//!
//! Exit codes: 0 success, 2 input error, 3 internal invariant violation.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ispice::corpus::{
    load_captionsets, load_corpus, load_predictions, load_tuple_file, save_tuple_file,
    tuple_record_line, CorpusFormat,
};
use ispice::extract::extract_tuples;
use ispice::perturb::{sensitivity_experiment, PerturbKind};
use ispice::report::{
    evaluate_corpus, evaluate_fitb, render_fitb_report, render_metric_report,
    render_sensitivity_report, SensitivityReport,
};
use ispice::spice::{load_synonyms, EvalOptions, IdentityTermMode};
use ispice::Lexicon;

#[derive(Parser)]
#[command(name = "ispice", version, about = "Identity-aware caption evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum OutputFormat {
    /// Aligned-column table on stdout.
    #[default]
    Text,
    /// JSON document on stdout.
    Json,
}

#[derive(Args)]
struct CommonScoring {
    /// Reference corpus file (JSONL, one videoset per line).
    #[arg(long)]
    corpus: PathBuf,
    /// Corpus file format.
    #[arg(long, default_value = "jsonl")]
    corpus_format: CorpusFormat,
    /// Optional synonym table: tab-separated equivalence classes.
    #[arg(long)]
    synonyms: Option<PathBuf>,
    /// Compare identity labels as multisets instead of sets.
    #[arg(long)]
    multiset_identity_term: bool,
    /// Stdout rendering.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the JSON report to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Score candidate captionsets against references with all metrics.
    Evaluate {
        #[command(flatten)]
        common: CommonScoring,
        /// Candidate corpus file, joined to references by videoset id.
        #[arg(long)]
        candidates: PathBuf,
        /// External tuple file for the reference side, overriding the
        /// built-in extractor.
        #[arg(long)]
        tuples_from: Option<PathBuf>,
        /// External tuple file for the candidate side; required when
        /// --tuples-from is given.
        #[arg(long)]
        candidate_tuples_from: Option<PathBuf>,
    },
    /// Measure metric sensitivity to identity manipulations.
    Sensitivity {
        #[command(flatten)]
        common: CommonScoring,
        /// Root seed for the perturbation streams.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Manipulated samples per captionset and kind.
        #[arg(long, default_value_t = 3)]
        samples: usize,
        /// Comma-separated kinds: swap, add, remove, identity.
        #[arg(long, default_value = "swap,add,remove", value_delimiter = ',')]
        kinds: Vec<PerturbKind>,
    },
    /// Score fill-in-the-blanks predictions with pairwise accuracies.
    FitbScore {
        #[command(flatten)]
        common: CommonScoring,
        /// Prediction file: {videoset_id, pred_labels} per line.
        #[arg(long)]
        predictions: PathBuf,
    },
    /// Dump extracted scene-graph tuples in the external tuple format.
    ParseTuples {
        #[command(flatten)]
        common: CommonScoring,
    },
}

fn scoring_options(common: &CommonScoring) -> Result<EvalOptions, ispice::Error> {
    Ok(EvalOptions {
        synonyms: match &common.synonyms {
            Some(path) => Some(load_synonyms(path)?),
            None => None,
        },
        identity_term: if common.multiset_identity_term {
            IdentityTermMode::Multiset
        } else {
            IdentityTermMode::Set
        },
    })
}

fn emit(
    common: &CommonScoring,
    text: String,
    json: serde_json::Value,
) -> Result<(), ispice::Error> {
    match common.format {
        OutputFormat::Text => print!("{text}"),
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&json).expect("json")),
    }
    if let Some(path) = &common.out {
        let mut body = serde_json::to_string_pretty(&json).expect("json");
        body.push('\n');
        fs::write(path, body)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), ispice::Error> {
    let lex = Lexicon::bundled();
    match cli.command {
        Command::Evaluate {
            common,
            candidates,
            tuples_from,
            candidate_tuples_from,
        } => {
            let options = scoring_options(&common)?;
            let mut corpus = load_corpus(&common.corpus, common.corpus_format)?;
            corpus.attach_candidates(load_captionsets(&candidates, common.corpus_format)?)?;
            match (&tuples_from, &candidate_tuples_from) {
                (Some(ref_path), Some(cand_path)) => {
                    corpus.attach_tuples(load_tuple_file(ref_path)?, false)?;
                    corpus.attach_tuples(load_tuple_file(cand_path)?, true)?;
                }
                (None, None) => {}
                _ => {
                    return Err(ispice::Error::Parse {
                        line: 0,
                        reason: "--tuples-from and --candidate-tuples-from must be given together"
                            .to_string(),
                    })
                }
            }
            let report = evaluate_corpus(&corpus, lex, &options)?;
            emit(
                &common,
                render_metric_report(&report),
                serde_json::to_value(&report).expect("report serializes"),
            )
        }
        Command::Sensitivity {
            common,
            seed,
            samples,
            kinds,
        } => {
            let options = scoring_options(&common)?;
            let corpus = load_corpus(&common.corpus, common.corpus_format)?;
            let references = corpus.references();
            let rows = sensitivity_experiment(&references, lex, &options, &kinds, samples, seed)?;
            let report = SensitivityReport::new(rows, seed, samples, lex);
            emit(
                &common,
                render_sensitivity_report(&report),
                serde_json::to_value(&report).expect("report serializes"),
            )
        }
        Command::FitbScore {
            common,
            predictions,
        } => {
            let mut corpus = load_corpus(&common.corpus, common.corpus_format)?;
            let predictions = load_predictions(&predictions)?;
            let skipped = corpus.attach_fitb_predictions(&predictions)?;
            let report = evaluate_fitb(&corpus, skipped)?;
            emit(
                &common,
                render_fitb_report(&report),
                serde_json::to_value(&report).expect("report serializes"),
            )
        }
        Command::ParseTuples { common } => {
            let corpus = load_corpus(&common.corpus, common.corpus_format)?;
            let entries: Vec<(String, ispice::TupleSet)> = corpus
                .entries()
                .iter()
                .map(|e| {
                    (
                        e.reference.videoset_id().to_string(),
                        extract_tuples(&e.reference, lex),
                    )
                })
                .collect();
            if let Some(path) = &common.out {
                save_tuple_file(&entries, path)?;
            }
            let lines: Vec<String> = entries
                .iter()
                .map(|(id, ts)| tuple_record_line(id, ts))
                .collect();
            match common.format {
                OutputFormat::Text => {
                    for line in &lines {
                        println!("{line}");
                    }
                }
                OutputFormat::Json => {
                    let records: Vec<serde_json::Value> = lines
                        .iter()
                        .map(|l| serde_json::from_str(l).expect("own output parses"))
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::Value::Array(records))
                            .expect("json")
                    );
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli)));
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(_) => {
            eprintln!("error: internal invariant violation");
            ExitCode::from(3)
        }
    }
}
