use std::io;

use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("number of cells must be in 1..={max}, got {got}")]
    InvalidCellCount { got: usize, max: usize },

    #[error("dimension mismatch: expected {expected} cells, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cell index {index} out of range 1..={n_cells}")]
    CellOutOfRange { index: usize, n_cells: usize },

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("graph of iterations of `{0}` is not strongly connected")]
    NotStronglyConnected(String),

    #[error("invalid architecture: {0}")]
    InvalidArchitecture(String),

    #[error("parameter shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("training set is empty")]
    EmptyTrainingSet,

    #[error("invalid training configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
