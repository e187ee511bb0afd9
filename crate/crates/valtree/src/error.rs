use thiserror::Error;

use crate::skp::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("negative exponent at offset {offset}")]
    NegativeExponent { offset: usize },
    #[error("invalid branch: {0}")]
    InvalidBranch(String),
    #[error("truncation insufficient at order {0}")]
    TruncationInsufficient(usize),
    #[error("field extension required: {0}")]
    FieldExtensionRequired(String),
    #[error("polynomial is not monic in {0}")]
    NotMonic(&'static str),
    #[error("0 * inf is undefined")]
    ZeroTimesInfinity,
    #[error("invalid SKP: {0}")]
    InvalidSkp(Violation),
    #[error("normalization mismatch: {0}")]
    NormalizationMismatch(String),
    #[error("branches are identical")]
    IdenticalBranches,
    #[error("invalid blowup: {0}")]
    InvalidBlowup(String),
    #[error("vertex E{0} does not exist")]
    NoSuchVertex(usize),
    #[error("chart data unavailable for this graph")]
    ChartsUnavailable,
    #[error("inconsistent equisingularity data: {0}")]
    InconsistentEquising(String),
    #[error("iteration cap reached: {0}")]
    IterationCap(String),
    #[error("potential is not affine on an edge: {0}")]
    NonAffine(String),
    #[error("non-integral factorization: {0}")]
    NonIntegral(String),
    #[error("ideal is not primary: {0}")]
    NotPrimary(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
