//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown poset element `{0}`")]
    UnknownElement(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid field spec `{spec}`: {reason}")]
    FieldSpec { spec: String, reason: String },

    #[error("cannot parse scalar `{text}`: {reason}")]
    ScalarParse { text: String, reason: String },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("chain is not maximal: {0}")]
    NotMaximalChain(String),

    #[error("variable set is not of prime shape: {0}")]
    NotPrimeShape(String),

    #[error("algebra is not local with residue field K: {0}")]
    NotLocal(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid algebra instance: {0}")]
    InvalidInstance(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn field_spec(spec: &str, reason: &str) -> Self {
        Error::FieldSpec { spec: spec.to_string(), reason: reason.to_string() }
    }

    pub fn scalar_parse(text: &str, reason: &str) -> Self {
        Error::ScalarParse { text: text.to_string(), reason: reason.to_string() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
