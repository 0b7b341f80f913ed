use thiserror::Error;

/// Errors raised by the combinatorial and algebraic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("size limit exceeded: n = {n} is above the configured maximum {max} for {what}")]
    SizeLimit { what: &'static str, n: usize, max: usize },

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("order violation: {0}")]
    OrderViolation(String),

    #[error("invalid block index: {0}")]
    BlockIndex(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("degree {degree} is above the truncation degree {truncation}")]
    BeyondTruncation { degree: usize, truncation: usize },

    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("missing value for `{0}`")]
    MissingValue(String),

    #[error("not an infinitesimal character: {0}")]
    NotInfinitesimal(String),

    #[error("not a character: {0}")]
    NotCharacter(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    /// Two independent computations disagreed; always an implementation bug.
    #[error("internal inconsistency between routes: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
