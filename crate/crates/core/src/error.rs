use thiserror::Error;

/// Errors raised by the linear-algebra kernel, the state constructors and the
/// survey engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("eigensolver did not converge within {iterations} iterations")]
    Numerical { iterations: usize },

    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("operation needs bipartite structure: {0}")]
    Structure(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("resource budget exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
