use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

use crate::cursor::WordCursor;
use crate::engine::{self, Iter};
use crate::error::{DecodeError, SetError};
use crate::op::{FillSkip, SetOp};
use crate::serial;
use crate::word::{EncodedWord, Format};
use crate::MAX_ALLOWED;

/// Selects the word layout of a [`CompressedSet`].
pub trait Encoding: fmt::Debug + Clone + Copy + PartialEq + Eq + Hash + Default + Send + Sync + 'static {
    const FORMAT: Format;
    const NAME: &'static str;
}

/// Integer set stored as a word-aligned compressed bitmap.
///
/// Sets are built by appending integers in strictly ascending order, then
/// combined with [`perform_operation`](Self::perform_operation), which works
/// on the compressed words directly and returns a new set.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CompressedSet<E: Encoding> {
    words: Vec<EncodedWord>,
    max: Option<u32>,
    encoding: PhantomData<E>,
}

impl<E: Encoding> CompressedSet<E> {
    pub fn new() -> Self {
        CompressedSet { words: Vec::new(), max: None, encoding: PhantomData }
    }

    fn from_trimmed(words: Vec<EncodedWord>) -> Self {
        let max = engine::compute_max(&words, E::FORMAT).map(|m| m as u32);
        CompressedSet { words, max, encoding: PhantomData }
    }

    pub fn singleton(value: u32) -> Result<Self, SetError> {
        let mut set = Self::new();
        set.append(value)?;
        Ok(set)
    }

    /// Builds a set by appending every element of a strictly ascending slice.
    pub fn from_sorted(values: &[u32]) -> Result<Self, SetError> {
        let mut set = Self::new();
        set.words.reserve(values.len().min(1 << 16));
        for (index, &value) in values.iter().enumerate() {
            if let Some(previous) = set.max.filter(|&m| value <= m) {
                return Err(SetError::NotSorted { index, value, previous });
            }
            set.append(value)?;
        }
        Ok(set)
    }

    /// Appends an integer greater than every current member.
    pub fn append(&mut self, value: u32) -> Result<(), SetError> {
        engine::append(&mut self.words, &mut self.max, value, E::FORMAT)
    }

    pub fn format(&self) -> Format {
        E::FORMAT
    }

    pub fn words(&self) -> &[EncodedWord] {
        &self.words
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Index of the last word, `None` when empty.
    pub fn top(&self) -> Option<usize> {
        self.words.len().checked_sub(1)
    }

    pub fn max(&self) -> Option<u32> {
        self.max
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn cursor(&self) -> WordCursor<'_> {
        WordCursor::new(&self.words, E::FORMAT)
    }

    pub fn perform_operation(&self, other: &Self, op: SetOp) -> Self {
        self.perform_operation_with(other, op, FillSkip::Enabled)
    }

    pub fn perform_operation_with(&self, other: &Self, op: SetOp, skip: FillSkip) -> Self {
        Self::from_trimmed(engine::perform_operation(&self.words, &other.words, op, E::FORMAT, skip))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.perform_operation(other, SetOp::And)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.perform_operation(other, SetOp::Or)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.perform_operation(other, SetOp::Xor)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.perform_operation(other, SetOp::AndNot)
    }

    pub fn contains(&self, value: u32) -> bool {
        match self.max {
            Some(max) if value <= max => engine::contains(&self.words, value, E::FORMAT),
            _ => false,
        }
    }

    pub fn cardinality(&self) -> u64 {
        engine::cardinality(&self.words, E::FORMAT)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter::new(&self.words, E::FORMAT)
    }

    pub fn decode(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Returns `self ∪ {value}`, appending when `value` exceeds the max.
    pub fn add(&self, value: u32) -> Result<Self, SetError> {
        if value > MAX_ALLOWED {
            return Err(SetError::OutOfRange(value));
        }
        match self.max {
            Some(max) if value <= max => Ok(self.union(&Self::singleton(value)?)),
            _ => {
                let mut out = self.clone();
                out.append(value)?;
                Ok(out)
            }
        }
    }

    /// Returns `self \ {value}`.
    pub fn remove(&self, value: u32) -> Result<Self, SetError> {
        Ok(self.difference(&Self::singleton(value)?))
    }

    /// 32-bit words per element; 0 for the empty set.
    pub fn words_per_element(&self) -> f64 {
        match self.cardinality() {
            0 => 0.0,
            n => self.words.len() as f64 / n as f64,
        }
    }

    pub fn serialize(&self) -> Vec<u8> {
        serial::encode(E::FORMAT, &self.words, self.max)
    }

    pub fn deserialize(bytes: &[u8]) -> Result<Self, DecodeError> {
        let (words, header_max) = serial::decode(E::FORMAT, bytes)?;
        let max = engine::validate(&words, E::FORMAT)?;
        if max.unwrap_or(serial::empty_max()) != header_max {
            return Err(DecodeError::MalformedHeader("max does not match the encoded content"));
        }
        Ok(CompressedSet { words, max, encoding: PhantomData })
    }
}

impl<E: Encoding> fmt::Debug for CompressedSet<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct(E::NAME).field("words", &self.words).field("max", &self.max).finish()
    }
}

impl<'a, E: Encoding> IntoIterator for &'a CompressedSet<E> {
    type Item = u32;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

macro_rules! binary_operator {
    ($trait:ident, $method:ident, $op:expr) => {
        impl<E: Encoding> $trait<&CompressedSet<E>> for &CompressedSet<E> {
            type Output = CompressedSet<E>;

            fn $method(self, rhs: &CompressedSet<E>) -> CompressedSet<E> {
                self.perform_operation(rhs, $op)
            }
        }
    };
}

binary_operator!(BitAnd, bitand, SetOp::And);
binary_operator!(BitOr, bitor, SetOp::Or);
binary_operator!(BitXor, bitxor, SetOp::Xor);
binary_operator!(Sub, sub, SetOp::AndNot);
