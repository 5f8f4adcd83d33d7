use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure kinds shared by every module of the crate.
///
/// The CLI maps each kind onto a distinct exit code, so new variants should
/// keep to these categories.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller handed in arguments that do not fit together (mismatched
    /// fields, invalid side/flag combinations, bad overrides).
    #[error("usage error: {0}")]
    Usage(String),

    /// Input outside the mathematical domain of the operation (inverting 0,
    /// a point off the curve, dividing by 0 in Z[i]).
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation exists but only for characteristic 5.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A configured budget (trial division bound, enumeration size) was hit.
    #[error("resource limit: {what}")]
    Resource {
        what: String,
        /// Unfactored cofactor, when the limit was the trial-division bound.
        cofactor: Option<String>,
    },

    /// An internal identity that must hold did not (e.g. a cycle count that is
    /// not an integer). Always indicates a bug or a corrupted rule.
    #[error("internal consistency error: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource {
            what: msg.into(),
            cofactor: None,
        }
    }
}
