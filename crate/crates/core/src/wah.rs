//! WAH baseline: word-aligned hybrid compression without mixed fills.
//!
//! Shares the CONCISE control flow with the mixed-fill paths disabled and
//! stores the fill length directly in a 30-bit count.

use crate::engine;
use crate::set::{CompressedSet, Encoding};
use crate::word::{EncodedWord, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Wah;

impl Encoding for Wah {
    const FORMAT: Format = Format::Wah;
    const NAME: &'static str = "WahSet";
}

pub type WahSet = CompressedSet<Wah>;

/// Merges a homogeneous last word into its predecessor under WAH rules.
pub fn compress(words: &mut Vec<EncodedWord>) {
    engine::compress(words, Format::Wah);
}
