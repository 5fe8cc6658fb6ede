use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("precondition `{name}` violated: {detail}")]
    Precondition { name: &'static str, detail: String },

    #[error("grid axis {axis} has {len} samples, at least {min} required")]
    GridTooSmall { axis: usize, len: usize, min: usize },

    #[error("integral diverges {0}")]
    Divergent(&'static str),

    #[error("field carries a non-scalar channel (blade {0})")]
    NonScalarField(usize),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(name: &'static str, detail: impl Into<String>) -> Error {
    Error::Precondition {
        name,
        detail: detail.into(),
    }
}
