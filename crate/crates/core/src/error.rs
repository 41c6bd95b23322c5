use alloc::string::String;

use crate::coeff::ParseRationalError;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid context: {0}")]
    Context(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("guardrail: degree {degree} needs {dimension} basis monomials, limit is {limit}")]
    Guardrail { degree: u32, dimension: u128, limit: u128 },
    #[error("derivation step `{step}`: {message}")]
    Derivation { step: String, message: String },
}

pub type Result<T> = core::result::Result<T, Error>;
