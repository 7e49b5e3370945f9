use thiserror::Error;

/// Errors raised by the algebraic layer.
///
/// Everything here is a contract violation by the caller (mismatched
/// shapes, out-of-range indices, parameters outside their domain). Exact
/// arithmetic means there are no numerical failure modes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("mismatched shapes: {0}")]
    Mismatch(String),

    #[error("word {word} is longer than the truncation order {order}")]
    BeyondTruncation { word: String, order: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
