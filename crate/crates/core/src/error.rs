use thiserror::Error;

/// Errors produced by the library.
///
/// The CLI maps every variant to exit code 2; a property that simply fails
/// to hold is never an error, it is a report with a `false` verdict.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input (degree mismatch, bad tuple, ...).
    #[error("input error: {0}")]
    Input(String),

    /// The requested operation exceeds a configured scale bound.
    #[error("capability error: {0}")]
    Capability(String),

    /// A text format could not be parsed.
    #[error("parse error at line {line}, offset {offset}: {message}")]
    Parse {
        line: usize,
        offset: usize,
        message: String,
    },

    /// The operation is undefined for this input (e.g. rank of an
    /// intransitive action).
    #[error("undefined: {0}")]
    Undefined(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub(crate) fn parse(line: usize, offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            offset,
            message: msg.into(),
        }
    }
}
