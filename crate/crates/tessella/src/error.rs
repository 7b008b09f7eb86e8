use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("{0}")]
    Domain(String),

    /// A structured text document failed to parse.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A pitch name failed to parse.
    #[error("invalid pitch {input:?} at position {position}")]
    InvalidPitch { input: String, position: usize },

    /// The modulus exceeds the configured complement-search bound.
    #[error("modulus {modulus} exceeds the search bound {bound}")]
    SearchBound { modulus: usize, bound: usize },

    /// A fixed resource (e.g. MIDI channels) ran out.
    #[error("{0}")]
    Capacity(String),

    /// A constructed value violated an internal invariant.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invariant(message: impl Into<String>) -> Self {
        Error::Invariant(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
