use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix does not have full row rank")]
    Rank,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("form is not positive definite: {0}")]
    Form(String),
    #[error("invalid specification: {0}")]
    Spec(String),
    #[error("division by zero")]
    Div,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("element does not lie in the real subfield")]
    NotInSubfield,
    #[error("the zero ideal is not a fractional ideal")]
    ZeroIdeal,
    #[error("prime {0} is not ramified in this field")]
    NotRamified(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("modularity check failed at clause ({clause}): {detail}")]
    ModularityFailure { clause: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
