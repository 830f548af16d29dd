use thiserror::Error;

/// Errors raised by the computational core.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent user input.
    #[error("input error: {0}")]
    Input(String),

    /// A relation string could not be parsed.
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    /// The nilpotency cap does not contain a power of the maximal ideal.
    #[error("cap too small: monomials of degree {degree} survive modulo the relations; raise the cap above {degree}")]
    CapTooSmall { degree: usize },

    /// Two objects built over different algebras were combined.
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    /// An internal consistency check failed; this indicates a bug or a false identity.
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
