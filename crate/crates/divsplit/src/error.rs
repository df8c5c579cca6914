use std::path::PathBuf;

/// Errors produced anywhere in the splitting pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("alignment mismatch for '{language}': corpus has {corpus} sentences, file has {lines} lines")]
    Alignment {
        language: String,
        corpus: usize,
        lines: usize,
    },

    #[error("divergence undefined: {0} distribution has no mass")]
    UndefinedDivergence(&'static str),

    #[error("cannot split: {0}")]
    CannotSplit(String),

    #[error("invalid state: {0}")]
    State(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("size error: {0}")]
    Size(String),

    #[error("config error in {path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error("i/o error on {path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn file(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::File {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
