//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("matrix is not square: {rows} rows, {cols} cols")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid CSR structure: {0}")]
    InvalidStructure(String),

    #[error("zero diagonal entry at row {0}")]
    ZeroDiagonal(usize),

    #[error("matrix has an entry above the diagonal at ({row}, {col})")]
    NotLowerTriangular { row: usize, col: usize },

    #[error("singular matrix: pivot below {threshold:e} at elimination step {step}")]
    Singular { step: usize, threshold: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("problem size {n} exceeds limit {limit} for {what}")]
    TooLarge {
        n: usize,
        limit: usize,
        what: &'static str,
    },

    #[error("enumeration found no complementary solution")]
    NoSolution,

    #[error("enumeration found multiple distinct complementary solutions")]
    MultipleSolutions,
}

pub type Result<T> = std::result::Result<T, Error>;
