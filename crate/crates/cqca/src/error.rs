//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by the library.
///
/// Variants are split between *input* problems (bad files, violated
/// preconditions: the CLI maps these to exit code 2) and *internal* problems
/// (assertions the underlying theory guarantees; exit code 1).
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime")]
    NotPrime(u64),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not invertible over the Laurent ring: {0}")]
    NotInvertible(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("operation supports at most one variable, matrix uses {0}")]
    TooManyVariables(usize),

    #[error("form is singular (associated hermitian matrix has non-unit determinant)")]
    SingularForm,

    #[error("hermitian form over F_2 is not even: diagonal entry {0} has a nonzero constant term")]
    NotEven(usize),

    #[error("matrix fails the {0} check: {1}")]
    FlavorCheck(String, String),

    #[error("invalid generator argument: {0}")]
    InvalidGenerator(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True when the error indicates bad user input rather than a library bug.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
