use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid {field}: {reason}")]
    Invariant { field: &'static str, reason: String },

    #[error("{what} needs at least {min} points, got {got}")]
    Size {
        what: &'static str,
        min: usize,
        got: usize,
    },

    #[error("x = {x} lies outside the Chebyshev domain [-1, 1]")]
    Domain { x: f64 },

    #[error("{operation} requires a {expected} function, got kind `{found}`")]
    KindMismatch {
        operation: &'static str,
        expected: &'static str,
        found: &'static str,
    },

    #[error("grid of {grid} points is too coarse for order {order} (need at least {required})")]
    AntiAliasing {
        order: usize,
        grid: usize,
        required: usize,
    },

    #[error("{operation} is not defined for the {basis} basis")]
    BasisMismatch {
        operation: &'static str,
        basis: &'static str,
    },

    #[error("band center has |a_{j}| = {amplitude:e}, expected at most {limit:e}")]
    CenterNotZeroed {
        j: usize,
        amplitude: f64,
        limit: f64,
    },

    #[error("invalid request: {0}")]
    Request(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invariant(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Invariant {
            field,
            reason: reason.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}
