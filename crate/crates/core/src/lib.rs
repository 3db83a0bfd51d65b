//! Compressed integer sets over 32-bit words.
//!
//! [`ConciseSet`] implements the CONCISE encoding: literal words carry one
//! 31-bit block, fill words carry runs of homogeneous blocks, and mixed
//! fills additionally flip one bit in the run's first block. [`WahSet`] is
//! the Word-Aligned Hybrid baseline with the same interface.
//!
//! ```
//! use concise_core::{ConciseSet, SetOp};
//!
//! let a = ConciseSet::from_sorted(&[1, 2, 3, 1000]).unwrap();
//! let b = ConciseSet::from_sorted(&[2, 3, 4]).unwrap();
//! assert_eq!(a.perform_operation(&b, SetOp::And).decode(), vec![2, 3]);
//! ```

pub mod concise;
pub mod cursor;
pub mod datagen;
mod engine;
mod error;
pub mod experiment;
pub mod inspect;
mod op;
pub mod oracle;
pub mod par;
pub mod serial;
pub mod set;
pub mod wah;
pub mod word;

pub use concise::ConciseSet;
pub use cursor::{CursorExhausted, WordCursor};
pub use engine::Iter;
pub use error::{DecodeError, SetError};
pub use op::{FillSkip, SetOp};
pub use set::{CompressedSet, Encoding};
pub use wah::WahSet;
pub use word::{BlockLiteral, CodecError, EncodedWord, FillKind, Format, WordKind};

/// Largest integer a CONCISE set can hold: `31 * 2^25 + 30`.
pub const MAX_ALLOWED: u32 = 31 * (1 << 25) + 30;
