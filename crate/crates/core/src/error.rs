use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("singular matrix")]
    Singular,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring validation failed: {0}")]
    Validation(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not found within search bound {0}")]
    NotFound(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Short machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Singular => "singular",
            Error::NotSquare(..) => "not_square",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::Validation(_) => "validation",
            Error::NotInvertible(_) => "not_invertible",
            Error::Parse(_) => "parse",
            Error::NotFound(_) => "not_found",
            Error::Unsupported(_) => "unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
