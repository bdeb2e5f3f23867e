use thiserror::Error;

use crate::series::Convention;
use crate::triangular::MatrixClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("convention mismatch: {0} vs {1}")]
    ConventionMismatch(Convention, Convention),
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("series must have zero constant term")]
    NonZeroConstant,
    #[error("series must have constant term 1")]
    ConstantNotOne,
    #[error("expected valuation {expected}, found {found:?}")]
    Valuation { expected: usize, found: Option<usize> },
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("cannot truncate to {n}: matrix has size {size}")]
    TruncationTooLarge { n: usize, size: usize },
    #[error("expected a {expected} matrix, found {found}")]
    WrongClass { expected: MatrixClass, found: MatrixClass },
    #[error("zero diagonal entry at index {0}")]
    ZeroDiagonal(usize),
    #[error("pair recovery hypothesis violated: {0}")]
    Recovery(String),
    #[error("insufficient order: need {needed}, have {have}")]
    InsufficientOrder { needed: usize, have: usize },
    #[error("operator has mixed weights {0} and {1}")]
    MixedWeight(i64, i64),
    #[error("operator monomial must contain exactly one annihilator")]
    NotSingleAnnihilator,
    #[error("excess must be non-negative, found {0}")]
    NegativeExcess(i64),
    #[error("{0}")]
    Unsupported(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }
}
