use thiserror::Error;

/// A text input could not be parsed. `position` is a byte offset into the
/// parsed string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message} (in {input:?})")]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("not finitely generated: {0}")]
    NotFinitelyGenerated(String),
    #[error("resolution did not close within {0} steps")]
    ResolutionTooLong(usize),
    #[error("dualizing module not concentrated: nonzero in homological degrees {0:?}")]
    NotConcentrated(Vec<usize>),
    #[error("unsupported ideal: {0}")]
    UnsupportedIdeal(String),
    #[error("unbounded below: {0}")]
    UnboundedBelow(String),
    #[error("uncertified window: {0}")]
    UncertifiedWindow(String),
    #[error("not Gorenstein: {0}")]
    NotGorenstein(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
