//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(String, String),

    #[error("inner series has a non-nilpotent constant term")]
    ConstantTermNonzero,

    #[error("leading coefficient is not invertible: {0}")]
    NonInvertibleLeadingCoefficient(String),

    #[error("leading Laurent coefficient is not a p-local unit scalar")]
    NotPLocalUnit,

    #[error("operation would push mass below the retained t-window (degree {degree} < tlow {tlow})")]
    WindowUnderflow { degree: i64, tlow: i64 },

    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),

    #[error("element is not p-typical: m-coordinate {0} survives outside the p-power slots")]
    NotPTypical(u32),

    #[error("element is not p-local at p={prime}: coefficient {coeff} has denominator divisible by p")]
    NotPLocal { prime: u32, coeff: String },

    #[error("integrality failure: coefficient {0} is not an integer")]
    IntegralityFailure(String),

    #[error("division by the p-series failed at t^{tdegree}: solved coefficient is not p-local")]
    DivisibilityFailure { tdegree: i64 },

    #[error("relation oracle rejected a vector that the descent step produced (t-degree {0})")]
    OracleInconsistency(i64),

    #[error("invalid coset representatives: {0}")]
    InvalidCosetReps(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
