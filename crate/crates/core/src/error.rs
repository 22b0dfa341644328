use thiserror::Error;

/// Errors raised while loading lattices or evaluating entropy measures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("cell ({row}, {col}) outside a {nrows}x{ncols} grid")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        nrows: usize,
        ncols: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid probability vector: {0}")]
    Distribution(String),

    #[error("focal category {focal} has no cells; the measure is undefined")]
    NoFocalCells { focal: u32 },

    #[error("spatial measures need at least 2 categories, grid has {0}")]
    TooFewCategories(u32),

    #[error("distance classes end at {upper} but the grid spans {d_max}")]
    Uncovered { upper: f64, d_max: f64 },

    #[error("empty pair distribution")]
    EmptyDistribution,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
