//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Field characteristic 2 is rejected everywhere, and moduli must be prime.
    #[error("invalid prime modulus {0}: must be an odd prime")]
    InvalidPrime(u64),

    /// Two values from different field configurations met in one computation.
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    /// A matrix, tensor or vector had the wrong shape.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// The requested operation needs the second bilinear product, which is absent.
    #[error("algebra has no second product table")]
    MissingSecondProduct,

    /// A super-identity or superderivation was requested on an ungraded algebra.
    #[error("operation requires a Z2-grading, but the algebra is ungraded")]
    UngradedAlgebra,

    /// The structure tensor violates the superalgebra law G_i G_j ⊆ G_{i+j mod 2}.
    #[error("grading inconsistency: c[{i}][{j}][{k}] is nonzero but parity({k}) != parity({i}) + parity({j}) mod 2")]
    GradingInconsistent { i: usize, j: usize, k: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("division by zero")]
    DivisionByZero,

    /// Preconditions of `lie_double`: the base algebra must pass the Lie checks.
    #[error("algebra is not Lie: {0}")]
    NotLie(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Witt basis indices start at -1.
    #[error("Witt basis index {0} out of range (must be >= -1)")]
    WittIndex(i64),

    /// Window bounds for the truncated Witt checks must be at least 1.
    #[error("window bound {0} too small (must be >= 1)")]
    WindowTooSmall(i64),

    #[error("unsupported file version {0} (expected 1)")]
    UnsupportedVersion(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
