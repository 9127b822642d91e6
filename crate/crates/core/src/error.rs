use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("entry ({p},{q}) out of range for dimension {n}")]
    EntryOutOfRange { n: usize, p: usize, q: usize },

    #[error("Serre symmetry fails at ({p},{q}): {left} != {right}")]
    SerreAsymmetry { p: usize, q: usize, left: u64, right: u64 },

    #[error("Poincaré symmetry fails at degree {k}: {left} != {right}")]
    PoincareAsymmetry { k: usize, left: u64, right: u64 },

    #[error("codimension must be at least 2, got {0}")]
    CodimensionTooSmall(usize),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown table kind: {0}")]
    UnknownKind(String),

    #[error("missing entry ({p},{q}) in partial table")]
    MissingEntry { p: usize, q: usize },

    #[error("duality check failed: {0}")]
    Duality(String),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("not a first-order contraction: {0}")]
    NotAContraction(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("parse error: {0}")]
    Parse(String),
}
