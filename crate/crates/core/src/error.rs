use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The k-th nearest neighbour radius needs more than `k` points.
    #[error("k-th nearest neighbour radius undefined: vertex {vertex} has {available} neighbours, k = {k}")]
    UndefinedRadius {
        vertex: usize,
        k: usize,
        available: usize,
    },

    #[error("region too small: {0}")]
    RegionTooSmall(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
