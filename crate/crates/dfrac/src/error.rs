//! Error type shared across the crate.

use std::fmt;

/// Errors raised by operators, special functions, and I/O.
#[derive(Debug)]
pub enum Error {
    /// A precondition or domain restriction was violated. The message names
    /// the violated clause.
    Domain(String),
    /// A gamma ratio whose numerator sits at a pole while the denominator is
    /// regular: the value is infinite and is never silently approximated.
    InfiniteValue(String),
    /// A series did not converge within the term budget. Carries the last
    /// partial sum and the magnitude of the last term for diagnostics.
    NonConvergence {
        partial: f64,
        last_term: f64,
        k_max: usize,
    },
    /// Malformed input text (rational literals, CSV rows, problem files).
    Parse(String),
    /// Underlying I/O failure while reading or writing CSV.
    Io(std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InfiniteValue(msg) => write!(f, "infinite value: {msg}"),
            Error::NonConvergence {
                partial,
                last_term,
                k_max,
            } => write!(
                f,
                "series did not converge within {k_max} terms (partial sum {partial}, last term {last_term})"
            ),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}
