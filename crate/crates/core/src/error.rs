use thiserror::Error;

/// Errors surfaced by the library. Input errors correspond to violated
/// preconditions, resource errors to enumeration caps, and consistency
/// errors to situations that indicate a bug rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable counts differ: m={0} vs m={1}")]
    VariableCountMismatch(u8, u8),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension {k} exceeds the enumeration limit {limit}; raise the limit to at least {k}")]
    DimensionLimit { k: usize, limit: usize },

    #[error("enumeration size {required} exceeds the configured limit {limit}")]
    EnumerationLimit { required: u128, limit: u128 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}
