use thiserror::Error;

/// Errors produced by the orbit calculus, root-system engine and table loader.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("bad sequence: {0}")]
    BadSequence(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid weighted diagram: {0}")]
    InvalidDiagram(String),

    #[error("data error: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;
