use thiserror::Error;

use crate::MAX_ALLOWED;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("{0} is outside the representable range 0..={max}", max = MAX_ALLOWED)]
    OutOfRange(u32),
    #[error("{value} is not greater than the current maximum {max}")]
    NotGreater { value: u32, max: u32 },
    #[error("input is not strictly ascending at index {index}: {value} follows {previous}")]
    NotSorted { index: usize, value: u32, previous: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("malformed header: {0}")]
    MalformedHeader(&'static str),
    #[error("invalid word #{index} ({raw:08X}): {reason}")]
    InvalidWord { index: usize, raw: u32, reason: &'static str },
    #[error("truncated input: expected {expected} bytes, found {found}")]
    TruncatedInput { expected: usize, found: usize },
}
