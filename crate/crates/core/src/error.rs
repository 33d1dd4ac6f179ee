use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: duplicate letters, bad syntax, out-of-range parameters.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The input of a bijection is outside its declared domain.
    #[error("{map}: input is outside the domain ({predicate})")]
    Domain {
        map: &'static str,
        predicate: String,
    },

    /// A family or constraint that has no closed form here.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An enumeration was asked for a size above its hard cap.
    #[error("{what} of size {requested} exceeds the enumeration cap {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(map: &'static str, predicate: impl Into<String>) -> Self {
        Error::Domain {
            map,
            predicate: predicate.into(),
        }
    }
}
