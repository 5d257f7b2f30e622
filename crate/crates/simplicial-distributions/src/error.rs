use thiserror::Error;

/// Crate-wide error type.
///
/// `Validation` carries the full list of violations found by a `validate`
/// call so callers can report every failing face relation at once.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mixed semirings: {0} and {1}")]
    MixedSemirings(crate::semiring::SemiringKind, crate::semiring::SemiringKind),

    #[error("invalid scalar: {0}")]
    InvalidScalar(String),

    #[error("validation failed:\n{}", .0.join("\n"))]
    Validation(Vec<String>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("distribution not normalized: {0}")]
    NotNormalized(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
