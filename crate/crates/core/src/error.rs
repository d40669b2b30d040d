//! Error taxonomy shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("unsupported Cartan type `{0}`")]
    UnsupportedType(String),

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("recursion stall: no applicable rule for pair ({0}, {1})")]
    RecursionStall(String, String),

    #[error("degenerate form family: {0}")]
    DegenerateFamily(String),

    #[error("truncation window mismatch: {0}")]
    WindowMismatch(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
