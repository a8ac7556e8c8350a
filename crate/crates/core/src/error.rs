use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An integer argument falls outside what an operation supports.
    #[error("{what} = {value} is out of range ({limit})")]
    Range {
        what: &'static str,
        value: u64,
        limit: String,
    },

    /// A result would exceed one of the configurable size guards.
    #[error("{guard} exceeded: {detail}")]
    Size { guard: &'static str, detail: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// Word text could not be parsed; `position` is a 0-based character offset.
    #[error("cannot parse word at position {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn is_size(&self) -> bool {
        matches!(self, Error::Size { .. })
    }
}
