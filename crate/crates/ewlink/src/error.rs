use thiserror::Error;

/// Errors produced by the library and the CLI front end.
#[derive(Debug, Error)]
pub enum Error {
    /// A physically meaningless input (non-positive power, range, etc.).
    #[error("domain error: {0}")]
    Domain(String),

    /// A scenario/config file problem, reported with its line number.
    #[error("config error (line {line}): {message}")]
    Config { line: usize, message: String },

    /// Misuse of an API or CLI surface (bad flag combination, empty input).
    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(line: usize, msg: impl Into<String>) -> Self {
        Error::Config {
            line,
            message: msg.into(),
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
