use thiserror::Error;

use crate::expr::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("function spec: {0}")]
    Spec(#[from] ParseError),

    #[error(transparent)]
    Library(#[from] monogenica::MonogenicError),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl std::error::Error for ParseError {}
