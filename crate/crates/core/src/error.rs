use thiserror::Error;

/// Errors raised by the matrix kernel and the verification routines.
///
/// Every variant except [`Error::Decomposition`] describes an input that
/// violates an operation's precondition.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not Hermitian: deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e} below -{tolerance:.3e}")]
    NotPsd { eigenvalue: f64, tolerance: f64 },
    #[error("{name} out of range: {detail}")]
    OutOfRange { name: &'static str, detail: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
}

impl Error {
    pub(crate) fn out_of_range(name: &'static str, detail: impl Into<String>) -> Self {
        Error::OutOfRange { name, detail: detail.into() }
    }

    /// True for every variant that reports a precondition violation.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Decomposition(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
