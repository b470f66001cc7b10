//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An element was handed to a backend it does not belong to.
    #[error("element `{element}` is not a member of {backend}")]
    NotAnElement { backend: String, element: String },

    /// A multiplication table failed the associativity check.
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: String, b: String, c: String },

    /// An exact operation was requested on an infinite backend.
    #[error("{operation} requires a finite semigroup; {backend} is infinite")]
    RequiresFinite { operation: String, backend: String },

    /// A stated hypothesis of a witness construction does not hold.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// A constructed object failed the check that was supposed to confirm it.
    #[error("verification failed: {0}")]
    Verification(String),

    /// Malformed input text (tables, elements, expressions, certificates).
    #[error("parse error at {line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    /// Any other precondition failure, with a human-readable message.
    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn not_an_element(backend: &str, element: impl Into<String>) -> Self {
        Error::NotAnElement {
            backend: backend.to_string(),
            element: element.into(),
        }
    }

    pub fn parse(line: usize, col: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
