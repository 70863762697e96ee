use thiserror::Error;

/// Largest register handled by the dense matrix routines.
pub const MAX_DENSE_QUBITS: usize = 12;

#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a documented invariant.
    #[error("invalid `{field}`: {reason}")]
    Validation { field: String, reason: String },

    /// A dense routine was asked to handle more qubits than it supports.
    #[error("instance needs {qubits} qubits, dense routines support at most {max}")]
    Capacity { qubits: usize, max: usize },

    /// A formula was evaluated outside its mathematical domain.
    #[error("numeric domain error: {0}")]
    Domain(String),

    /// A run configuration could not be parsed or is inconsistent.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn capacity(qubits: usize) -> Self {
        Error::Capacity {
            qubits,
            max: MAX_DENSE_QUBITS,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Validation { .. } => 2,
            Error::Capacity { .. } => 3,
            Error::Domain(_) => 4,
            Error::Io(_) => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
