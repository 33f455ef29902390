use thiserror::Error;

use crate::witness::Witness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("arity error: {0}")]
    Arity(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{axiom} fails: {witness}")]
    Axiom { axiom: String, witness: Witness },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("guard refused: {0} (raise the limit with an explicit guard override or TDHOM_GUARD_LIMIT)")]
    Guard(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
