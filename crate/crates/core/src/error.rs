use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty message")]
    EmptyMessage,

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown layout `{0}` (expected `lingspam` or `fixture`)")]
    UnknownLayout(String),

    #[error("fixture needs at least one document")]
    EmptyFixture,

    #[error("requested {requested} attributes but only {available} distinct tokens are available")]
    InsufficientTokens { requested: usize, available: usize },

    #[error("attribute count must be at least 1")]
    ZeroAttributes,

    #[error("degenerate training set: both classes are required")]
    DegenerateTrainingSet,

    #[error("vector length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("lambda must be a positive finite real, got {0}")]
    InvalidLambda(f64),

    #[error("instance base needs at least one instance")]
    EmptyInstanceBase,

    #[error("k must be at least 1")]
    InvalidK,

    #[error("cannot evaluate an empty set of messages")]
    EmptyCounts,

    #[error("need at least {k_folds} documents of each class for {k_folds} folds (legit={n_legit}, spam={n_spam})")]
    InsufficientDocuments {
        k_folds: usize,
        n_legit: usize,
        n_spam: usize,
    },

    #[error("fold plan does not match the corpus: {0}")]
    InvalidFoldPlan(String),

    #[error("invalid attribute range {from}:{to}:{step}")]
    InvalidRange { from: usize, to: usize, step: usize },

    #[error("paired t-test needs at least 2 paired samples, got {0}")]
    TooFewSamples(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
