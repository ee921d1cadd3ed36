use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("invalid construction: {0}")]
    Construction(String),

    /// The requested search is larger than the configured bound.
    #[error("guard refused: {what} is limited to {limit}, requested {actual}")]
    Guard {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("component is not connected")]
    Disconnected,

    #[error("state is connected; component decomposition needs a disconnected state")]
    Connected,

    #[error("no analytic condition in scope for {0}")]
    Unsupported(String),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}
