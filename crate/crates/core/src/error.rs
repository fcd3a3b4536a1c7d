use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),

    /// Numerical failure (non-convergence, non-finite values).
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// An operator does not have the structure an algorithm relies on.
    #[error("structural error: {0}")]
    Structural(String),

    /// A closed form was requested outside the parameter point it is valid for.
    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    /// The interference ansatz does not reproduce the sampled probabilities.
    #[error("interference fit violated at t = {t}: residual {residual:e} exceeds {tolerance:e}")]
    FitViolation {
        t: f64,
        residual: f64,
        tolerance: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
