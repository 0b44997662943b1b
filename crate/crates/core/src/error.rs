use thiserror::Error;

/// Why a tuple failed Jacobi validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotJacobi {
    /// The Jacobian determinant has positive degree; the offending
    /// determinant is carried as canonical text for diagnostics.
    NonConstant(String),
    /// The Jacobian determinant is identically zero.
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range 1..={arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("arity {arity} too small, need at least {min}")]
    ArityTooSmall { arity: usize, min: usize },
    #[error("not a Jacobi tuple: {}", match .0 {
        NotJacobi::NonConstant(det) => format!("determinant {det} is not constant"),
        NotJacobi::Zero => "determinant is zero".to_string(),
    })]
    NotJacobi(NotJacobi),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
