//! Error type shared across the toolkit.

use std::fmt;
use std::io;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug)]
pub enum Error {
    /// A captionset operation required at least one identity token.
    NoIdentities { videoset_id: String },
    /// A captionset must contain at least one caption.
    EmptyCaptionset { videoset_id: String },
    /// An external tuple record failed validation (wrong arity or empty slot).
    MalformedTuple { index: usize, reason: String },
    /// Aligned metric received captionsets with different caption counts.
    LengthMismatch { reference: usize, candidate: usize },
    /// A candidate captionset does not have the same caption count as its reference.
    CaptionCountMismatch {
        videoset_id: String,
        reference: usize,
        candidate: usize,
    },
    /// A corpus file contained no records.
    EmptyCorpus,
    /// A corpus or auxiliary file failed to parse.
    Parse { line: usize, reason: String },
    /// The same videoset id occurred twice in one corpus.
    DuplicateVideosetId { videoset_id: String },
    /// A candidate corpus lacks an entry for a reference videoset.
    MissingCandidate { videoset_id: String },
    /// An external tuple file lacks a record for a videoset.
    MissingTuples { videoset_id: String },
    /// A prediction file lacks labels for a videoset with blanks.
    MissingPredictions { videoset_id: String },
    /// A prediction record's label count does not match the blank count.
    PredictionLength {
        videoset_id: String,
        expected: usize,
        got: usize,
    },
    Io(io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoIdentities { videoset_id } => {
                write!(f, "captionset {videoset_id} contains no identity tokens")
            }
            Self::EmptyCaptionset { videoset_id } => {
                write!(f, "captionset {videoset_id} has no captions")
            }
            Self::MalformedTuple { index, reason } => {
                write!(f, "malformed tuple at index {index}: {reason}")
            }
            Self::LengthMismatch {
                reference,
                candidate,
            } => write!(
                f,
                "caption count mismatch: reference has {reference}, candidate has {candidate}"
            ),
            Self::CaptionCountMismatch {
                videoset_id,
                reference,
                candidate,
            } => write!(
                f,
                "videoset {videoset_id}: reference has {reference} captions, candidate has {candidate}"
            ),
            Self::EmptyCorpus => write!(f, "corpus contains no records"),
            Self::Parse { line, reason } => write!(f, "parse error at line {line}: {reason}"),
            Self::DuplicateVideosetId { videoset_id } => {
                write!(f, "duplicate videoset id {videoset_id}")
            }
            Self::MissingCandidate { videoset_id } => {
                write!(f, "no candidate captionset for videoset {videoset_id}")
            }
            Self::MissingTuples { videoset_id } => {
                write!(f, "no tuple record for videoset {videoset_id}")
            }
            Self::MissingPredictions { videoset_id } => {
                write!(f, "no predictions for videoset {videoset_id}")
            }
            Self::PredictionLength {
                videoset_id,
                expected,
                got,
            } => write!(
                f,
                "videoset {videoset_id}: expected {expected} predicted labels, got {got}"
            ),
            Self::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Self::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<io::Error> for Error {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}
