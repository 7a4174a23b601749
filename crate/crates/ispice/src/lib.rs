//! Identity-aware evaluation of video-description captionsets.
//!
//! Movie audio descriptions name the people on screen with local person-id
//! labels (`P1`, `P2`, ...) that a caption must use consistently within a
//! videoset. Classic n-gram metrics barely react when those labels are
//! wrong; this crate scores them head-on:
//!
//! - a scene-graph tuple metric (`spice`) and its identity-aware variant
//!   (`ispice`) built on a deterministic rule-based tuple extractor;
//! - n-gram baselines for comparison: BLEU-4, ROUGE-L, CIDEr, METEOR-lite;
//! - seeded identity manipulations (swap, add, remove) and a sensitivity
//!   experiment that measures each metric's score drop under them;
//! - pairwise fill-in-the-blanks accuracy (Same/Diff/Inst/Class) for
//!   predicted person-id labels.
//!
//! Captionsets are identity-normalized before scoring (first distinct id
//! becomes `P1`, the second `P2`, ...) so relabeled captionsets compare
//! equal. See the `examples/` directory for one runnable example per
//! capability; the `ispice` binary exposes the same pipelines as the
//! `evaluate`, `sensitivity`, `fitb-score`, and `parse-tuples` commands.
//!
//! ```
//! use ispice::{Captionset, Lexicon};
//!
//! let lex = Lexicon::bundled();
//! let reference = Captionset::from_texts("v0", &["P1 carries P2. P2 is unconscious"])
//!     .unwrap()
//!     .normalize_identities();
//! let candidate = Captionset::from_texts("v0", &["P2 carries P1. P2 is unconscious"])
//!     .unwrap()
//!     .normalize_identities();
//! let score = ispice::ispice(&reference, &candidate, lex).unwrap();
//! assert_eq!(score, 0.5);
//! ```

pub mod caption;
pub mod corpus;
pub mod error;
pub mod extract;
pub mod fitb;
pub mod lexicon;
pub mod morph;
pub mod ngram;
pub mod perturb;
pub mod report;
pub mod spice;
pub mod tag;
pub mod token;
pub mod tuples;

pub use caption::{make_fitb, Captionset, FitbInstance, IdentityLabel};
pub use corpus::{load_corpus, Corpus, CorpusEntry, CorpusFormat};
pub use error::{Error, Result};
pub use extract::extract_tuples;
pub use fitb::{pairwise_scores, PairwiseScores};
pub use lexicon::Lexicon;
pub use ngram::{bleu4, build_idf, cider, meteor_lite, rouge_l, IdfTable, NgramProfile};
pub use perturb::{
    eligible_swap_positions, perturb, perturb_add, perturb_remove, perturb_swap,
    sensitivity_experiment, PerturbKind, PerturbationRecord, SensitivityRow,
};
pub use report::{evaluate_corpus, MetricReport};
pub use spice::{
    f1, ispice, match_tuples, spice, spice_score, EvalOptions, IdentityTermMode, MatchResult,
    SpiceScore, SynonymTable,
};
pub use tag::{tag_tokens, TokenClass};
pub use token::{detokenize, tokenize, Token, TokenKind};
pub use tuples::{filter_identity_tuples, load_tuples, SceneGraphTuple, TupleSet};
