use thiserror::Error;

/// Errors raised by the exact tensor algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("model parameters require n >= 2, got n = {0}")]
    InvalidParams(u32),

    #[error("operands built over different model parameters")]
    ParamsMismatch,

    #[error("slot labels do not match: {0}")]
    LabelMismatch(String),

    #[error("operation undefined at this grade: {0}")]
    DegreeError(String),

    #[error("value outside the operation's domain: {0}")]
    DomainError(String),

    #[error("malformed scalar literal: {0}")]
    ParseError(String),

    #[error("tensor is not invariant under the requested slot groups: {0}")]
    GroupError(String),

    #[error("linear system is inconsistent")]
    Inconsistent,
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
