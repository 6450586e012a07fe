use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("no time-step bound for scheme {scheme} with norm {norm}")]
    UnsupportedBound { scheme: String, norm: String },

    #[error("empty admissible time-step interval: {0}")]
    EmptyInterval(String),

    #[error("non-positive density {rho:e} in cell {cell}")]
    Positivity { cell: usize, rho: f64 },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("singular implicit system in {0}")]
    Singular(String),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidConfig(_)
            | Error::UnsupportedBound { .. }
            | Error::SizeMismatch { .. }
            | Error::Empty(_)
            | Error::ParameterRange(_) => 2,
            Error::Io(_) => 1,
            Error::EmptyInterval(_)
            | Error::Positivity { .. }
            | Error::NonFinite(_)
            | Error::Singular(_) => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
