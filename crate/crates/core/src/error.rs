use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not in companion form")]
    NotCompanion,
    #[error("-a0 = 1: the eigenvalue -a0 coincides with 1 and the eigenvector matrix Q is undefined")]
    NonDiagonalizable,
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("polynomial is not primitive: {0}")]
    NotPrimitive(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
