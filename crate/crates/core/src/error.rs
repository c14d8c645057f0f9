use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input: wrong degrees, non-subgroups,
    /// mismatched primes or codomains.
    #[error("invalid input: {0}")]
    Input(String),
    /// A certificate could not be produced within the search budget. Never
    /// coerced into a yes/no answer.
    #[error("undecided: {0}")]
    Undecided(String),
    /// A checked statement failed. Any occurrence is a defect in this crate.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
