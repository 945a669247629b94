use thiserror::Error;

/// Crate-wide error type.
///
/// `Malformed` covers structural problems (overlapping labels, bad arity,
/// unparsable input) and is kept distinct from `Unstable`, which reports a
/// well-formed tree or curve failing a stability condition.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("stability violation: {0}")]
    Unstable(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
