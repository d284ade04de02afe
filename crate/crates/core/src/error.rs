use thiserror::Error;

use crate::bounds::NumericMode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OctError {
    #[error("arithmetic overflow adding {lhs} and {rhs}")]
    Overflow { lhs: String, rhs: String },

    #[error("cannot halve odd integer {value}")]
    OddIntegerHalving { value: String },

    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid traversal order: {0}")]
    InvalidTraversal(String),

    #[error("operation requires {expected} mode, DBM is in {found} mode")]
    ModeMismatch { expected: NumericMode, found: NumericMode },

    #[error("variable x{var} out of range for {n} variables")]
    VariableOutOfRange { var: usize, n: usize },

    #[error("invalid number literal: {0}")]
    InvalidLiteral(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: unknown variable x{var} (system declares {n})")]
    UnknownVariable { line: usize, var: usize, n: usize },

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
}

pub type Result<T, E = OctError> = std::result::Result<T, E>;
