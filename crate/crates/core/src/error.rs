use thiserror::Error;

/// Errors raised by the polytope kernel and the verification routines built
/// on top of it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("body is not full-dimensional")]
    DegenerateBody,
    #[error("empty point set")]
    EmptyInput,
    #[error("level {level} outside (0, {max}]")]
    OutOfRange { level: f64, max: f64 },
    #[error("volumes and section measures must be positive")]
    NonPositiveVolume,
    #[error("maximal sections are not translates (residual {residual:e})")]
    NotATranslate { residual: f64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("random sample stayed degenerate after {attempts} attempts")]
    DegenerateSample { attempts: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Invalid(format!("json: {e}"))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
