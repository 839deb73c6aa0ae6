use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("zero variance: {0}")]
    ZeroVariance(String),

    #[error("degenerate predictor: every predictor dimension is constant")]
    DegeneratePredictor,

    /// A computed quantity left its admissible range by more than round-off.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("pair ({left}, {right}): {source}")]
    Pair {
        left: String,
        right: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Format(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    /// True for errors that come from the numerics rather than from input handling.
    pub fn is_degenerate(&self) -> bool {
        match self {
            Error::ZeroVariance(_) | Error::DegeneratePredictor | Error::Inconsistent(_) => true,
            Error::Pair { source, .. } => source.is_degenerate(),
            _ => false,
        }
    }
}
