use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u32),
    #[error("{which} polynomial is reducible")]
    Reducible { which: &'static str },
    #[error("{which} polynomial must be monic of degree {expected}, got {found:?}")]
    DegreeMismatch {
        which: &'static str,
        expected: usize,
        found: Vec<u32>,
    },
    #[error("field of order {order} exceeds the desk-scale limit 2^20")]
    FieldTooLarge { order: u64 },
    #[error("element code {code} is not in a field of order {order}")]
    LevelMismatch { code: u32, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero vector has no projective point")]
    ZeroVector,
    #[error("the two points coincide")]
    SamePoint,
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("zero subspace")]
    ZeroSubspace,
    #[error("vectors are linearly dependent over F_q^m")]
    DependentRows,
    #[error("code is degenerate (columns are F_q-dependent)")]
    DegenerateCode,
    #[error("subspace does not span the ambient space over F_q^m")]
    NotSpanning,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("infeasible at desk scale: {0}")]
    Infeasible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
