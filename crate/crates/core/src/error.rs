use thiserror::Error;

/// Errors produced by the enumeration engine and its series algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("{0} is undefined for the empty permutation")]
    UndefinedForEmpty(&'static str),
    #[error("cannot parse pattern {text:?}: {reason}")]
    PatternParse { text: String, reason: String },
    #[error("length {requested} exceeds the configured maximum {max}")]
    ResourceLimit { requested: usize, max: usize },
    #[error("series has zero constant term and is not invertible")]
    NotInvertible,
    #[error("series constant term is not 1; no series square root")]
    NoSquareRoot,
    #[error("coefficient index {index} beyond truncation order {order}")]
    OutOfOrder { index: usize, order: usize },
    #[error("formula {formula} produced a non-integer value at n = {n}")]
    FormulaIntegrity { formula: &'static str, n: usize },
    #[error("unknown lemma id {0:?}")]
    UnknownLemma(String),
    #[error("unknown identity id {0:?}")]
    UnknownIdentity(String),
    #[error("unknown geometric block {0:?}")]
    UnknownShape(String),
    #[error("no closed form available: {0}")]
    NoFormula(String),
    #[error("outside the domain: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
