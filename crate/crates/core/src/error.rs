//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by starkit operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Two values belong to different groups.
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    /// Two values have incompatible coefficient rings.
    #[error("coefficient ring mismatch: {0}")]
    CoefficientRing(String),
    /// An element was expected to lie in a given group or subgroup.
    #[error("element outside group: {0}")]
    ElementOutsideGroup(String),
    /// A matrix or presentation was malformed.
    #[error("bad presentation: {0}")]
    BadPresentation(String),
    /// Minor enumeration requested beyond the supported size cap.
    #[error("matrix too large for minor enumeration: {0}")]
    TooLarge(String),
    /// A finite enumeration bound was exceeded.
    #[error("enumeration bound exceeded: {0}")]
    EnumerationBound(String),
    /// A precondition on the number-theoretic input failed.
    #[error("bad instance: {0}")]
    BadInstance(String),
    /// Numeric precision requested cannot be certified.
    #[error("precision unachievable: {0}")]
    Precision(String),
    /// A linear system was too ill-conditioned to solve reliably.
    #[error("ill-conditioned system: {0}")]
    IllConditioned(String),
    /// Serialization or config parsing failure.
    #[error("parse error: {0}")]
    Parse(String),
    /// Unknown verifier name in a config file.
    #[error("unknown verifier: {0}")]
    UnknownVerifier(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
