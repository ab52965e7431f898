use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied argument violates a precondition.
    #[error("invalid input: {0}")]
    Input(String),

    /// Serialized input could not be decoded; `field` names the offending part.
    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },

    /// The requested object is larger than the configured limit.
    #[error("resource limit exceeded: {what} requires {required}, limit is {limit}")]
    Budget {
        what: String,
        required: u64,
        limit: u64,
    },

    /// A size or sum does not fit in 64 bits.
    #[error("arithmetic overflow while computing {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Budget { .. } | Error::Overflow(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
