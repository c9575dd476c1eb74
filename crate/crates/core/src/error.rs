use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 2^31]")]
    InvalidModulus(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("objects live in different categories: {0}")]
    CategoryMismatch(String),

    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("{what} needs {size} elements, above the limit {limit}")]
    LimitExceeded { what: String, size: u64, limit: u64 },

    #[error("isomorphism test inconclusive: {0}")]
    Inconclusive(String),

    #[error("{0} is projective; no almost split sequence ends there")]
    Projective(String),

    #[error("counterexample: {0}")]
    Counterexample(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn limit(what: impl Into<String>, size: u64, limit: u64) -> Self {
        Error::LimitExceeded {
            what: what.into(),
            size,
            limit,
        }
    }
}
