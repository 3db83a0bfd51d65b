//! Bit layouts of single 32-bit words for the CONCISE and WAH encodings.
//!
//! Both formats partition the logical bitmap into 31-bit blocks. Bit 0 of
//! a block is its smallest integer.
//!
//! ```text
//! literal        1 | 31-bit block
//! CONCISE fill   0 | type | position (5) | count (25)    blocks = count + 1
//! WAH fill       0 | type | count (30)                   blocks = count
//! ```
//!
//! A CONCISE position `p` in `1..=31` flips bit `p - 1` of the fill's first
//! block (0 -> 1 in a run of zeros, 1 -> 0 in a run of ones). `p = 0` is a
//! pure fill.

use std::fmt;

use thiserror::Error;

/// Number of payload bits carried by a literal.
pub const BLOCK_BITS: u32 = 31;

pub(crate) const LITERAL_FLAG: u32 = 0x8000_0000;
pub(crate) const ONES_FLAG: u32 = 0x4000_0000;
pub(crate) const PAYLOAD_MASK: u32 = 0x7FFF_FFFF;
pub(crate) const CONCISE_COUNT_MASK: u32 = 0x01FF_FFFF;
pub(crate) const WAH_COUNT_MASK: u32 = 0x3FFF_FFFF;
pub(crate) const POSITION_SHIFT: u32 = 25;

/// Largest number of blocks a single CONCISE fill can describe.
pub const CONCISE_MAX_FILL_BLOCKS: u32 = CONCISE_COUNT_MASK + 1;
/// Largest number of blocks a single WAH fill can describe.
pub const WAH_MAX_FILL_BLOCKS: u32 = WAH_COUNT_MASK;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Concise,
    Wah,
}

impl Format {
    /// Maximum block count of one fill word.
    pub fn max_fill_blocks(self) -> u32 {
        match self {
            Format::Concise => CONCISE_MAX_FILL_BLOCKS,
            Format::Wah => WAH_MAX_FILL_BLOCKS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordKind {
    Literal,
    ZeroFill,
    OneFill,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FillKind {
    Zeros,
    Ones,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("word {0:#010X} is a literal, not a fill")]
    NotAFill(u32),
    #[error("block index {index} out of range for a fill of {blocks} blocks")]
    BlockOutOfRange { index: u32, blocks: u32 },
    #[error("{blocks} blocks exceed the fill capacity of {capacity}")]
    CountOverflow { blocks: u32, capacity: u32 },
    #[error("a fill must span at least one block")]
    EmptyFill,
    #[error("position {0} is outside 0..=31")]
    PositionOutOfRange(u32),
    #[error("WAH fills carry no position bits (got {0})")]
    PositionUnsupported(u32),
}

/// One 31-bit block, stored with the literal flag set.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockLiteral(u32);

impl BlockLiteral {
    pub const ZEROS: BlockLiteral = BlockLiteral(LITERAL_FLAG);
    pub const ONES: BlockLiteral = BlockLiteral(u32::MAX);

    /// Builds a literal from the low 31 bits of `bits`.
    pub fn from_bits(bits: u32) -> Self {
        BlockLiteral(LITERAL_FLAG | (bits & PAYLOAD_MASK))
    }

    pub fn bits(self) -> u32 {
        self.0 & PAYLOAD_MASK
    }

    pub fn raw(self) -> u32 {
        self.0
    }

    pub fn word(self) -> EncodedWord {
        EncodedWord(self.0)
    }
}

impl fmt::Debug for BlockLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockLiteral({:#010X})", self.0)
    }
}

/// A raw 32-bit word of a compressed bitmap.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
#[repr(transparent)]
pub struct EncodedWord(u32);

impl EncodedWord {
    pub const fn from_raw(raw: u32) -> Self {
        EncodedWord(raw)
    }

    pub const fn raw(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_literal(self) -> bool {
        self.0 & LITERAL_FLAG != 0
    }

    #[inline]
    pub const fn is_fill(self) -> bool {
        !self.is_literal()
    }

    /// Fill type bit. Meaningless for literals.
    #[inline]
    pub(crate) const fn fills_ones(self) -> bool {
        self.0 & ONES_FLAG != 0
    }

    pub fn classify(self, _format: Format) -> WordKind {
        // Both formats share the two leading bits.
        if self.is_literal() {
            WordKind::Literal
        } else if self.fills_ones() {
            WordKind::OneFill
        } else {
            WordKind::ZeroFill
        }
    }

    pub fn fill_kind(self) -> Option<FillKind> {
        match self.classify(Format::Concise) {
            WordKind::Literal => None,
            WordKind::ZeroFill => Some(FillKind::Zeros),
            WordKind::OneFill => Some(FillKind::Ones),
        }
    }

    pub fn fill_blocks(self, format: Format) -> Result<u32, CodecError> {
        if self.is_literal() {
            return Err(CodecError::NotAFill(self.0));
        }
        Ok(self.fill_blocks_unchecked(format))
    }

    #[inline]
    pub(crate) const fn fill_blocks_unchecked(self, format: Format) -> u32 {
        match format {
            Format::Concise => (self.0 & CONCISE_COUNT_MASK) + 1,
            Format::Wah => self.0 & WAH_COUNT_MASK,
        }
    }

    /// Raw count field of a fill.
    #[inline]
    pub(crate) const fn fill_count(self, format: Format) -> u32 {
        match format {
            Format::Concise => self.0 & CONCISE_COUNT_MASK,
            Format::Wah => self.0 & WAH_COUNT_MASK,
        }
    }

    /// CONCISE position field: 0 for a pure fill, `p` to flip bit `p - 1`.
    pub fn fill_position(self) -> Result<u32, CodecError> {
        if self.is_literal() {
            return Err(CodecError::NotAFill(self.0));
        }
        Ok(self.position_unchecked())
    }

    #[inline]
    pub(crate) const fn position_unchecked(self) -> u32 {
        (self.0 >> POSITION_SHIFT) & 0x1F
    }

    /// Position field under `format`; always 0 for WAH.
    #[inline]
    pub(crate) const fn position_in(self, format: Format) -> u32 {
        match format {
            Format::Concise => self.position_unchecked(),
            Format::Wah => 0,
        }
    }

    /// Literal payload of the `block_idx`-th block covered by this fill.
    pub fn expand_fill_block(self, block_idx: u32, format: Format) -> Result<BlockLiteral, CodecError> {
        let blocks = self.fill_blocks(format)?;
        if block_idx >= blocks {
            return Err(CodecError::BlockOutOfRange { index: block_idx, blocks });
        }
        Ok(self.expand_unchecked(block_idx, format))
    }

    #[inline]
    pub(crate) fn expand_unchecked(self, block_idx: u32, format: Format) -> BlockLiteral {
        let pure = if self.fills_ones() { u32::MAX } else { LITERAL_FLAG };
        let position = self.position_in(format);
        if block_idx == 0 && position != 0 {
            BlockLiteral(pure ^ (1 << (position - 1)))
        } else {
            BlockLiteral(pure)
        }
    }

    /// Encodes a fill of `blocks` blocks.
    pub fn make_fill(kind: FillKind, blocks: u32, position: u32, format: Format) -> Result<Self, CodecError> {
        if blocks == 0 {
            return Err(CodecError::EmptyFill);
        }
        let capacity = format.max_fill_blocks();
        if blocks > capacity {
            return Err(CodecError::CountOverflow { blocks, capacity });
        }
        if position > 31 {
            return Err(CodecError::PositionOutOfRange(position));
        }
        let type_bit = match kind {
            FillKind::Zeros => 0,
            FillKind::Ones => ONES_FLAG,
        };
        match format {
            Format::Concise => Ok(EncodedWord(type_bit | (position << POSITION_SHIFT) | (blocks - 1))),
            Format::Wah => {
                if position != 0 {
                    return Err(CodecError::PositionUnsupported(position));
                }
                Ok(EncodedWord(type_bit | blocks))
            }
        }
    }
}

impl From<BlockLiteral> for EncodedWord {
    fn from(lit: BlockLiteral) -> Self {
        EncodedWord(lit.0)
    }
}

impl fmt::Debug for EncodedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:08X}", self.0)
    }
}

impl fmt::Display for EncodedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:08X}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(raw: u32) -> EncodedWord {
        EncodedWord::from_raw(raw)
    }

    #[test]
    fn classify_examples() {
        assert_eq!(w(0x8000_0001).classify(Format::Concise), WordKind::Literal);
        assert_eq!(w(0x0200_0009).classify(Format::Concise), WordKind::ZeroFill);
        assert_eq!(w(0x4000_0001).classify(Format::Concise), WordKind::OneFill);
        assert_eq!(w(0x4000_0001).classify(Format::Wah), WordKind::OneFill);
    }

    #[test]
    fn fill_blocks_examples() {
        assert_eq!(w(0x0000_0001).fill_blocks(Format::Concise), Ok(2));
        assert_eq!(w(0x0200_0009).fill_blocks(Format::Concise), Ok(10));
        assert_eq!(w(0x0000_0003).fill_blocks(Format::Wah), Ok(3));
        assert_eq!(
            w(0x8000_0000).fill_blocks(Format::Concise),
            Err(CodecError::NotAFill(0x8000_0000))
        );
    }

    #[test]
    fn fill_position_examples() {
        assert_eq!(w(0x0200_0001).fill_position(), Ok(1));
        assert_eq!(w(0x0000_0005).fill_position(), Ok(0));
        assert_eq!(w(0x0200_001D).fill_position(), Ok(1));
        assert!(w(0xFFFF_FFFF).fill_position().is_err());
    }

    /// Bit-by-bit expansion of a fill, written against the layout table only.
    fn expand_bits(raw: u32, format: Format) -> Vec<bool> {
        assert_eq!(raw >> 31, 0);
        let ones = (raw >> 30) & 1 == 1;
        let (blocks, position) = match format {
            Format::Concise => ((raw & 0x1FF_FFFF) + 1, (raw >> 25) & 0x1F),
            Format::Wah => (raw & 0x3FFF_FFFF, 0),
        };
        let mut bits = vec![ones; blocks as usize * 31];
        if position != 0 {
            bits[position as usize - 1] = !ones;
        }
        bits
    }

    #[test]
    fn mixed_fill_word_expands_to_93_then_gap() {
        // Fill starting at block 3 (integer 93): 93 present, 94..=1022 absent.
        let bits = expand_bits(0x0200_001D, Format::Concise);
        assert_eq!(bits.len(), 30 * 31);
        let base = 93usize;
        let present: Vec<usize> = bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| base + i).collect();
        assert_eq!(present, vec![93]);
        assert_eq!(base + bits.len() - 1, 1022);
    }

    #[test]
    fn expand_examples() {
        assert_eq!(w(0x0200_0009).expand_fill_block(0, Format::Concise).unwrap().raw(), 0x8000_0001);
        assert_eq!(w(0x0200_0009).expand_fill_block(1, Format::Concise).unwrap().raw(), 0x8000_0000);
        assert_eq!(w(0x4000_0001).expand_fill_block(1, Format::Concise).unwrap().raw(), 0xFFFF_FFFF);
        assert_eq!(
            w(0x4000_0001).expand_fill_block(2, Format::Concise),
            Err(CodecError::BlockOutOfRange { index: 2, blocks: 2 })
        );
        // Mixed one-fill clears bit p-1 of the first block.
        assert_eq!(w(0x4600_0001).expand_fill_block(0, Format::Concise).unwrap().raw(), 0xFFFF_FFFB);
    }

    #[test]
    fn make_fill_examples() {
        assert_eq!(EncodedWord::make_fill(FillKind::Zeros, 2, 1, Format::Concise).unwrap().raw(), 0x0200_0001);
        assert_eq!(EncodedWord::make_fill(FillKind::Ones, 2, 0, Format::Concise).unwrap().raw(), 0x4000_0001);
        assert_eq!(EncodedWord::make_fill(FillKind::Zeros, 3, 0, Format::Wah).unwrap().raw(), 0x0000_0003);
    }

    #[test]
    fn make_fill_errors() {
        assert_eq!(
            EncodedWord::make_fill(FillKind::Zeros, (1 << 25) + 1, 0, Format::Concise),
            Err(CodecError::CountOverflow { blocks: (1 << 25) + 1, capacity: 1 << 25 })
        );
        assert!(EncodedWord::make_fill(FillKind::Zeros, 1 << 25, 31, Format::Concise).is_ok());
        assert_eq!(
            EncodedWord::make_fill(FillKind::Ones, 1 << 30, 0, Format::Wah),
            Err(CodecError::CountOverflow { blocks: 1 << 30, capacity: (1 << 30) - 1 })
        );
        assert_eq!(
            EncodedWord::make_fill(FillKind::Ones, 4, 2, Format::Wah),
            Err(CodecError::PositionUnsupported(2))
        );
        assert_eq!(
            EncodedWord::make_fill(FillKind::Ones, 4, 32, Format::Concise),
            Err(CodecError::PositionOutOfRange(32))
        );
        assert_eq!(EncodedWord::make_fill(FillKind::Ones, 0, 0, Format::Concise), Err(CodecError::EmptyFill));
    }

    fn kind_strategy() -> impl Strategy<Value = FillKind> {
        prop_oneof![Just(FillKind::Zeros), Just(FillKind::Ones)]
    }

    proptest! {
        #[test]
        fn concise_fill_round_trips(kind in kind_strategy(), blocks in 1u32..=(1 << 25), position in 0u32..=31) {
            let word = EncodedWord::make_fill(kind, blocks, position, Format::Concise).unwrap();
            prop_assert_eq!(word.fill_kind(), Some(kind));
            prop_assert_eq!(word.fill_blocks(Format::Concise), Ok(blocks));
            prop_assert_eq!(word.fill_position(), Ok(position));
        }

        #[test]
        fn wah_fill_round_trips(kind in kind_strategy(), blocks in 1u32..(1 << 30)) {
            let word = EncodedWord::make_fill(kind, blocks, 0, Format::Wah).unwrap();
            prop_assert_eq!(word.fill_kind(), Some(kind));
            prop_assert_eq!(word.fill_blocks(Format::Wah), Ok(blocks));
        }

        #[test]
        fn expansion_popcount(kind in kind_strategy(), blocks in 1u32..40, position in 0u32..=31) {
            let word = EncodedWord::make_fill(kind, blocks, position, Format::Concise).unwrap();
            let ones: u32 = (0..blocks)
                .map(|b| word.expand_fill_block(b, Format::Concise).unwrap().bits().count_ones())
                .sum();
            let expected = match (kind, position) {
                (FillKind::Zeros, 0) => 0,
                (FillKind::Zeros, _) => 1,
                (FillKind::Ones, 0) => 31 * blocks,
                (FillKind::Ones, _) => 31 * blocks - 1,
            };
            prop_assert_eq!(ones, expected);
            let oracle = expand_bits(word.raw(), Format::Concise).iter().filter(|b| **b).count() as u32;
            prop_assert_eq!(ones, oracle);
        }

        #[test]
        fn classification_is_total(raw in any::<u32>()) {
            for format in [Format::Concise, Format::Wah] {
                let word = w(raw);
                let kind = word.classify(format);
                prop_assert_eq!(kind == WordKind::Literal, raw >> 31 == 1);
                prop_assert_eq!(word.is_literal(), !word.is_fill());
                prop_assert_eq!(word.fill_blocks(format).is_ok(), kind != WordKind::Literal);
            }
        }
    }
}
