use thiserror::Error;

use super::quad::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("field mismatch: expected Q(sqrt{expected}), found Q(sqrt{found})")]
    FieldMismatch { expected: i64, found: i64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("ring {ring} is not contained in Q(sqrt{m})")]
    IncompatibleRing { ring: Ring, m: i64 },
    #[error("cannot parse number {0:?}")]
    Parse(String),
    #[error("{0} is not representable in this arithmetic")]
    NotHosted(String),
    #[error("singular matrix")]
    Singular,
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
}
