use thiserror::Error;

/// Errors produced by graph construction, file parsing, and the algorithm
/// entry points.
#[derive(Error, Debug)]
pub enum Error {
    /// Input text or file is not well-formed (bad JSON, wrong arity, wrong types).
    #[error("parse error: {0}")]
    Parse(String),
    /// Input is well-formed but violates a contract (range, duplicate, precondition).
    #[error("validation error: {0}")]
    Validation(String),
    /// Vector or matrix shapes do not match the configured dimensions.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// A color-conditioned forward pass met a color with no embedding table.
    #[error("missing embedding table for color {0}")]
    MissingColorTable(usize),
    /// A brute-force search would exceed its configured cap.
    #[error("complexity error: {0}")]
    Complexity(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
