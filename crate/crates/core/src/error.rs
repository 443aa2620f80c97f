use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed input at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },

    #[error("{0}")]
    Validation(String),

    #[error("group closure exceeded the maximum order {bound}")]
    Overflow { bound: usize },

    #[error("consistency failure at degree {degree}: {message}")]
    Consistency { degree: usize, message: String },

    #[error("operation `{0}` is only available on the exact backend")]
    UnsupportedBackend(&'static str),
}

impl Error {
    /// Short machine-readable category name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Arithmetic(_) => "arithmetic",
            Error::Shape { .. } => "shape",
            Error::Validation(_) => "validation",
            Error::Overflow { .. } => "overflow",
            Error::Consistency { .. } => "consistency",
            Error::UnsupportedBackend(_) => "unsupported",
        }
    }

    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn shape(expected: impl ToString, found: impl ToString) -> Self {
        Error::Shape {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
