use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} is not a usable prime modulus")]
    NotPrime(u32),
    #[error("subspace is not contained in the ambient span")]
    NotASubspace,
    #[error("modules live over different algebras or sides")]
    AlgebraMismatch,
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("lifting system is inconsistent: {0}")]
    LiftFailed(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
