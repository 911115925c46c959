use std::path::PathBuf;

use thiserror::Error;

use crate::grammar::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported language code {0:?} (expected one of en, da, fr, ja)")]
    UnsupportedLanguage(String),

    #[error("value {value} is outside the supported range [0, {max}]")]
    OutOfRange { value: u64, max: u64 },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("could not synthesize an ungrammatical word within {attempts} attempts")]
    Synthesis { attempts: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("template error: {0}")]
    Template(String),

    #[error("capacity error: need {needed} distinct {what}, only {available} available")]
    Capacity {
        what: &'static str,
        needed: usize,
        available: usize,
    },

    #[error("{}:{line}: {message}", path.display())]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{}: record {record}: {message}", path.display())]
    Corrupt {
        path: PathBuf,
        record: usize,
        message: String,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
