use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the lexicon toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("embedding file {path} contains no usable rows")]
    EmptyEmbeddings { path: PathBuf },

    #[error("embedding file {path}: {skipped} of {total} rows malformed (limit is 1%)")]
    TooManyMalformedRows {
        path: PathBuf,
        skipped: usize,
        total: usize,
    },

    #[error("invalid embedding header in {path}: {line:?}")]
    BadHeader { path: PathBuf, line: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("word {0:?} is not in the embedding table")]
    UnknownWord(String),

    #[error("invalid seed set: {0}")]
    InvalidSeeds(String),

    #[error("pole {pole:?} has no seed words present in the embedding table")]
    EmptyPole { pole: String },

    #[error("invalid lexicon: {0}")]
    InvalidLexicon(String),

    #[error("{path}, line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("sample size {k} exceeds pole size {available} for pole {pole:?}")]
    SampleTooLarge {
        pole: String,
        k: usize,
        available: usize,
    },

    #[error("all raw scores are zero; no polarity to normalize")]
    NoPolarity,

    #[error("length mismatch: {left} truth values vs {right} predictions")]
    LengthMismatch { left: usize, right: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("predictor has zero variance")]
    ZeroVariance,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
