use thiserror::Error;

use crate::word::{BlockLiteral, EncodedWord, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cursor has no more words")]
pub struct CursorExhausted;

/// Block-granular read position over a compressed word array.
///
/// `block_offset` counts the blocks already consumed from the current word
/// and is always 0 on a literal. A fill whose last block is consumed moves
/// the cursor to the next word.
#[derive(Debug, Clone)]
pub struct WordCursor<'a> {
    words: &'a [EncodedWord],
    format: Format,
    word_index: usize,
    block_offset: u32,
}

impl<'a> WordCursor<'a> {
    pub fn new(words: &'a [EncodedWord], format: Format) -> Self {
        WordCursor { words, format, word_index: 0, block_offset: 0 }
    }

    /// Cursor positioned at an arbitrary block of an arbitrary word.
    pub fn at(words: &'a [EncodedWord], format: Format, word_index: usize, block_offset: u32) -> Self {
        WordCursor { words, format, word_index, block_offset }
    }

    pub fn word_index(&self) -> usize {
        self.word_index
    }

    pub fn block_offset(&self) -> u32 {
        self.block_offset
    }

    #[inline]
    pub fn has_more(&self) -> bool {
        self.word_index < self.words.len()
    }

    pub fn current(&self) -> Option<EncodedWord> {
        self.words.get(self.word_index).copied()
    }

    /// Returns the next block and advances by one block.
    #[inline]
    pub fn next_literal(&mut self) -> Result<BlockLiteral, CursorExhausted> {
        let word = *self.words.get(self.word_index).ok_or(CursorExhausted)?;
        if word.is_literal() {
            self.word_index += 1;
            return Ok(BlockLiteral::from_bits(word.raw()));
        }
        let literal = word.expand_unchecked(self.block_offset, self.format);
        self.block_offset += 1;
        if self.block_offset >= word.fill_blocks_unchecked(self.format) {
            self.word_index += 1;
            self.block_offset = 0;
        }
        Ok(literal)
    }

    /// Pure blocks of the current fill lying after the block at the cursor,
    /// or 0 on a literal.
    pub fn remaining_fill_length(&self) -> Result<u32, CursorExhausted> {
        let word = self.current().ok_or(CursorExhausted)?;
        if word.is_literal() {
            return Ok(0);
        }
        Ok(word.fill_blocks_unchecked(self.format).saturating_sub(self.block_offset + 1))
    }

    /// Unconsumed blocks of a fill the cursor is part-way through. These are
    /// always pure, since only a fill's first block can carry a flipped bit.
    #[inline]
    pub(crate) fn fill_tail(&self) -> u32 {
        if self.block_offset == 0 {
            return 0;
        }
        let word = self.words[self.word_index];
        word.fill_blocks_unchecked(self.format) - self.block_offset
    }

    /// Advances by `n_blocks`, crossing word boundaries as needed.
    pub fn skip(&mut self, mut n_blocks: u32) -> Result<(), CursorExhausted> {
        while n_blocks > 0 {
            let word = self.current().ok_or(CursorExhausted)?;
            if word.is_literal() {
                self.word_index += 1;
                n_blocks -= 1;
                continue;
            }
            let available = word.fill_blocks_unchecked(self.format) - self.block_offset;
            if n_blocks < available {
                self.block_offset += n_blocks;
                return Ok(());
            }
            n_blocks -= available;
            self.word_index += 1;
            self.block_offset = 0;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(raw: &[u32]) -> Vec<EncodedWord> {
        raw.iter().copied().map(EncodedWord::from_raw).collect()
    }

    #[test]
    fn next_literal_on_mixed_fill() {
        let ws = words(&[0x0200_0009]);
        let mut c = WordCursor::new(&ws, Format::Concise);
        assert_eq!(c.next_literal().unwrap().raw(), 0x8000_0001);
        assert_eq!(c.block_offset(), 1);
        assert_eq!(c.remaining_fill_length(), Ok(8));
    }

    #[test]
    fn remaining_length_on_literal_is_zero() {
        let ws = words(&[0x8000_00F0, 0x0000_0004]);
        let c = WordCursor::new(&ws, Format::Concise);
        assert_eq!(c.remaining_fill_length(), Ok(0));
        let c = WordCursor::at(&ws, Format::Concise, 1, 0);
        assert_eq!(c.remaining_fill_length(), Ok(4));
    }

    #[test]
    fn walks_every_block_in_order() {
        let ws = words(&[0x8000_0003, 0x4000_0001, 0x0000_0002]);
        let mut c = WordCursor::new(&ws, Format::Wah);
        let mut seen = Vec::new();
        while c.has_more() {
            seen.push(c.next_literal().unwrap().raw());
        }
        assert_eq!(seen, vec![0x8000_0003, 0xFFFF_FFFF, 0x8000_0000, 0x8000_0000]);
        assert_eq!(c.next_literal(), Err(CursorExhausted));
        assert_eq!(c.remaining_fill_length(), Err(CursorExhausted));
    }

    #[test]
    fn skip_crosses_words() {
        let ws = words(&[0x0000_0004, 0x8000_0001, 0x4000_0002]);
        let mut c = WordCursor::new(&ws, Format::Concise);
        c.skip(3).unwrap();
        assert_eq!((c.word_index(), c.block_offset()), (0, 3));
        assert_eq!(c.fill_tail(), 2);
        c.skip(3).unwrap();
        assert_eq!((c.word_index(), c.block_offset()), (2, 0));
        assert_eq!(c.fill_tail(), 0);
        c.skip(3).unwrap();
        assert!(!c.has_more());
        assert_eq!(c.skip(1), Err(CursorExhausted));
        c.skip(0).unwrap();
    }

    #[test]
    fn skip_matches_repeated_next_literal() {
        let ws = words(&[0x0200_0009, 0x8000_1234, 0x4000_0003, 0x8000_0001]);
        let total = 10 + 1 + 4 + 1;
        for n in 0..=total {
            let mut fast = WordCursor::new(&ws, Format::Concise);
            let mut slow = fast.clone();
            fast.skip(n).unwrap();
            for _ in 0..n {
                slow.next_literal().unwrap();
            }
            assert_eq!((fast.word_index(), fast.block_offset()), (slow.word_index(), slow.block_offset()));
        }
    }
}
