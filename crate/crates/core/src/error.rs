use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("density matrix has eigenvalue {0:e} below the physical threshold")]
    NegativeEigenvalue(f64),

    #[error("basis mismatch: {0}")]
    Basis(String),

    #[error("subsystem {0} is not present in the basis")]
    MissingFactor(String),

    #[error("state has support outside the supported basis: {0}")]
    OutsideDomain(String),

    #[error("unsupported term: {0}")]
    UnsupportedTerm(String),

    #[error("nullspace has dimension {0}, expected 1")]
    Nullspace(usize),

    #[error("invalid state parameters: {0}")]
    InvalidParams(String),

    #[error("integer overflow computing {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
