use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const INTERNAL: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const RESOURCE: u8 = 3;
    pub const MISMATCH: u8 = 4;
    pub const IO: u8 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    /// Verification found differences; the payload is the full report.
    #[error("{0}")]
    Mismatch(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Resource(_) => exit::RESOURCE,
            CliError::Mismatch(_) => exit::MISMATCH,
            CliError::Io { .. } => exit::IO,
            CliError::Internal(_) => exit::INTERNAL,
        }
    }
}

impl From<thetagraph_core::Error> for CliError {
    fn from(e: thetagraph_core::Error) -> Self {
        use thetagraph_core::Error as E;
        match e {
            E::Usage(_) | E::Domain(_) | E::Unsupported(_) => CliError::Usage(e.to_string()),
            E::Resource { .. } => CliError::Resource(e.to_string()),
            E::Inconsistent(_) => CliError::Internal(e.to_string()),
        }
    }
}
