//! CONCISE: word-aligned compression with mixed fills.
//!
//! A mixed fill stores a run of homogeneous blocks together with one bit
//! flipped in the run's first block, so a sparse set needs about one word
//! per element.

use crate::engine;
use crate::set::{CompressedSet, Encoding};
use crate::word::{EncodedWord, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Concise;

impl Encoding for Concise {
    const FORMAT: Format = Format::Concise;
    const NAME: &'static str = "ConciseSet";
}

pub type ConciseSet = CompressedSet<Concise>;

/// Merges a homogeneous last word into its predecessor under CONCISE rules.
pub fn compress(words: &mut Vec<EncodedWord>) {
    engine::compress(words, Format::Concise);
}
