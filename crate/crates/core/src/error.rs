use thiserror::Error;

/// Errors raised across the library. The CLI maps each variant onto an exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands built over different field descriptors, or shapes that do not line up.
    #[error("structural mismatch: {0}")]
    Structural(String),
    /// A mathematically undefined request (inverse of zero, singular move, ...).
    #[error("domain error: {message}")]
    Domain {
        message: String,
        witness: Option<String>,
    },
    #[error("invalid argument: {0}")]
    Argument(String),
    /// An exhaustive loop would exceed the configured cap.
    #[error("resource cap exceeded: {what} requires {requested} items (cap {cap})")]
    Resource {
        what: String,
        requested: String,
        cap: u64,
    },
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn domain(message: impl Into<String>) -> Self {
        Error::Domain {
            message: message.into(),
            witness: None,
        }
    }

    pub fn rejected(message: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Domain {
            message: message.into(),
            witness: Some(witness.into()),
        }
    }

    pub fn resource(what: impl Into<String>, requested: impl ToString, cap: u64) -> Self {
        Error::Resource {
            what: what.into(),
            requested: requested.to_string(),
            cap,
        }
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            Error::Domain { witness, .. } => witness.as_deref(),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on the number of codewords (or representatives) visited by exhaustive loops.
pub const DEFAULT_EXHAUSTIVE_CAP: u64 = 1 << 24;

/// Default cap on the number of subspaces an enumeration may produce.
pub const DEFAULT_SUBSPACE_CAP: u64 = 1_000_000_000;

/// Exhaustive cap in force, honouring the `RANKLAB_CAP` environment override.
pub fn exhaustive_cap() -> u64 {
    std::env::var("RANKLAB_CAP")
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_EXHAUSTIVE_CAP)
}

pub(crate) fn check_cap(what: &str, requested: u128, cap: u64) -> Result<()> {
    if requested > cap as u128 {
        Err(Error::resource(what, requested, cap))
    } else {
        Ok(())
    }
}
