//! Word-array algorithms shared by the CONCISE and WAH encodings.
//!
//! The control flow is the same for both formats. The CONCISE-only paths
//! (mixed fills and their position bits) are gated on `Format::Concise`.

use crate::cursor::WordCursor;
use crate::error::{DecodeError, SetError};
use crate::op::{FillSkip, SetOp};
use crate::word::{
    BlockLiteral, EncodedWord, FillKind, Format, BLOCK_BITS, CONCISE_COUNT_MASK, LITERAL_FLAG, PAYLOAD_MASK,
    POSITION_SHIFT, WAH_COUNT_MASK,
};
use crate::MAX_ALLOWED;

const ZERO_LITERAL: u32 = LITERAL_FLAG;
const ONE_LITERAL: u32 = u32::MAX;

#[inline]
fn count_mask(format: Format) -> u32 {
    match format {
        Format::Concise => CONCISE_COUNT_MASK,
        Format::Wah => WAH_COUNT_MASK,
    }
}

#[inline]
fn fill_word(ones: bool, blocks: u32, format: Format) -> EncodedWord {
    let kind = if ones { FillKind::Ones } else { FillKind::Zeros };
    EncodedWord::make_fill(kind, blocks, 0, format).expect("fill length within capacity")
}

#[inline]
fn blocks_of(word: EncodedWord, format: Format) -> u32 {
    if word.is_literal() {
        1
    } else {
        word.fill_blocks_unchecked(format)
    }
}

/// Merges a homogeneous last word into the word before it, when possible.
pub(crate) fn compress(words: &mut Vec<EncodedWord>, format: Format) {
    let n = words.len();
    if n < 2 {
        return;
    }
    let last = words[n - 1].raw();
    let all_zeros = last == ZERO_LITERAL;
    let all_ones = last == ONE_LITERAL;
    if !all_zeros && !all_ones {
        return;
    }
    let prev = words[n - 2];
    if prev.is_fill() {
        // Same-type fill (pure or mixed): extend it by one block.
        if prev.fills_ones() == all_ones && prev.fill_count(format) < count_mask(format) {
            words.pop();
            words[n - 2] = EncodedWord::from_raw(prev.raw() + 1);
        }
        return;
    }
    let dirty = if all_ones { !prev.raw() } else { prev.raw() & PAYLOAD_MASK };
    let single_dirty = format == Format::Concise && dirty.count_ones() == 1;
    if dirty == 0 || single_dirty {
        words.pop();
        let mut merged = fill_word(all_ones, 2, format).raw();
        if single_dirty {
            merged |= (1 + dirty.trailing_zeros()) << POSITION_SHIFT;
        }
        words[n - 2] = EncodedWord::from_raw(merged);
    }
}

#[inline]
fn push_literal(words: &mut Vec<EncodedWord>, literal: BlockLiteral, format: Format) {
    words.push(literal.word());
    compress(words, format);
}

/// Adds up to `blocks` to the count of the last word, a fill. Returns how
/// many were added; fewer than requested only when the count field is full.
#[inline]
fn extend_last_fill(words: &mut [EncodedWord], blocks: u32, format: Format) -> u32 {
    let last = words.last_mut().expect("non-empty");
    debug_assert!(last.is_fill());
    let room = count_mask(format) - last.fill_count(format);
    let added = blocks.min(room);
    *last = EncodedWord::from_raw(last.raw() + added);
    added
}

/// Pushes `blocks` homogeneous blocks, equivalent to pushing them one at a
/// time as literals.
fn push_run(words: &mut Vec<EncodedWord>, ones: bool, mut blocks: u32, format: Format) {
    let literal = if ones { BlockLiteral::ONES } else { BlockLiteral::ZEROS };
    while blocks > 0 {
        push_literal(words, literal, format);
        blocks -= 1;
        if blocks > 0 && words.last().is_some_and(|w| w.is_fill()) {
            blocks -= extend_last_fill(words, blocks, format);
        }
    }
}

/// Pushes an arbitrary word, block-equivalently.
fn push_word(words: &mut Vec<EncodedWord>, word: EncodedWord, format: Format) {
    if word.is_literal() {
        push_literal(words, BlockLiteral::from_bits(word.raw()), format);
        return;
    }
    let blocks = word.fill_blocks_unchecked(format);
    if word.position_in(format) != 0 {
        push_literal(words, word.expand_unchecked(0, format), format);
        push_run(words, word.fills_ones(), blocks - 1, format);
    } else {
        push_run(words, word.fills_ones(), blocks, format);
    }
}

/// Drops trailing blocks that hold no integers. A trailing mixed zero-fill
/// collapses to the literal of its first block.
pub(crate) fn trim_trailing_zeros(words: &mut Vec<EncodedWord>, format: Format) {
    while let Some(&last) = words.last() {
        if last.is_literal() {
            if last.raw() == ZERO_LITERAL {
                words.pop();
                continue;
            }
            return;
        }
        if last.fills_ones() {
            return;
        }
        match last.position_in(format) {
            0 => {
                words.pop();
            }
            _ => {
                let first = last.expand_unchecked(0, format);
                *words.last_mut().unwrap() = first.word();
                return;
            }
        }
    }
}

/// Total number of blocks covered by `words`.
pub(crate) fn total_blocks(words: &[EncodedWord], format: Format) -> u64 {
    words.iter().map(|&w| blocks_of(w, format) as u64).sum()
}

/// Greatest integer in a trimmed word array.
pub(crate) fn compute_max(words: &[EncodedWord], format: Format) -> Option<u64> {
    let &last = words.last()?;
    let last_block = if last.is_literal() {
        BlockLiteral::from_bits(last.raw())
    } else {
        last.expand_unchecked(last.fill_blocks_unchecked(format) - 1, format)
    };
    let bits = last_block.bits();
    if bits == 0 {
        return None;
    }
    let high_bit = (31 - bits.leading_zeros()) as u64;
    Some((total_blocks(words, format) - 1) * BLOCK_BITS as u64 + high_bit)
}

/// Appends `value`, which must exceed `max`.
pub(crate) fn append(
    words: &mut Vec<EncodedWord>,
    max: &mut Option<u32>,
    value: u32,
    format: Format,
) -> Result<(), SetError> {
    if value > MAX_ALLOWED {
        return Err(SetError::OutOfRange(value));
    }
    let Some(current_max) = *max else {
        let f = value / BLOCK_BITS;
        words.clear();
        match f {
            0 => {}
            1 => words.push(EncodedWord::from_raw(ZERO_LITERAL)),
            _ => words.push(fill_word(false, f, format)),
        }
        words.push(BlockLiteral::from_bits(1 << (value % BLOCK_BITS)).word());
        *max = Some(value);
        return Ok(());
    };
    if value <= current_max {
        return Err(SetError::NotGreater { value, max: current_max });
    }

    let mut b = value - current_max + current_max % BLOCK_BITS;
    if b >= BLOCK_BITS {
        // Whole zero blocks strictly between max's block and value's block.
        let gap = b / BLOCK_BITS - 1;
        if gap > 0 {
            let top = *words.last().expect("non-empty set");
            let payload = top.raw() & PAYLOAD_MASK;
            if format == Format::Concise && top.is_literal() && payload.count_ones() == 1 {
                let position = 1 + payload.trailing_zeros();
                *words.last_mut().unwrap() = EncodedWord::from_raw((position << POSITION_SHIFT) | gap);
            } else if gap == 1 {
                words.push(EncodedWord::from_raw(ZERO_LITERAL));
            } else {
                words.push(fill_word(false, gap, format));
            }
        }
        b %= BLOCK_BITS;
        words.push(EncodedWord::from_raw(ZERO_LITERAL));
    } else if words.last().is_some_and(|w| w.is_fill()) {
        split_last_block(words, format);
    }
    let top = words.last_mut().unwrap();
    *top = EncodedWord::from_raw(top.raw() | (1 << b));
    *max = Some(value);
    compress(words, format);
    Ok(())
}

/// Turns the last block of a trailing fill into its own literal word. Only
/// reachable for one-block fills accepted from serialized input, since the
/// encoder never leaves max inside a fill that still has unset bits.
fn split_last_block(words: &mut Vec<EncodedWord>, format: Format) {
    let last = words.pop().unwrap();
    let blocks = last.fill_blocks_unchecked(format);
    let tail = last.expand_unchecked(blocks - 1, format);
    if blocks > 1 {
        words.push(EncodedWord::from_raw(last.raw() - 1));
    }
    words.push(tail.word());
}

fn drain(words: &mut Vec<EncodedWord>, mut cursor: WordCursor<'_>, source: &[EncodedWord], format: Format) {
    let tail = cursor.fill_tail();
    if tail > 0 {
        let ones = cursor.current().unwrap().fills_ones();
        push_run(words, ones, tail, format);
        cursor.skip(tail).unwrap();
    }
    for &word in &source[cursor.word_index()..] {
        push_word(words, word, format);
    }
}

/// Streams both operands block by block, combining one literal from each.
pub(crate) fn perform_operation(
    left: &[EncodedWord],
    right: &[EncodedWord],
    op: SetOp,
    format: Format,
    skip: FillSkip,
) -> Vec<EncodedWord> {
    let mut a = WordCursor::new(left, format);
    let mut b = WordCursor::new(right, format);
    let mut out = Vec::with_capacity(left.len().max(right.len()));

    while a.has_more() && b.has_more() {
        let la = a.next_literal().unwrap();
        let lb = b.next_literal().unwrap();
        push_literal(&mut out, BlockLiteral::from_bits(op.apply(la.bits(), lb.bits())), format);
        if skip == FillSkip::Enabled && out.last().is_some_and(|w| w.is_fill()) {
            let s = a.fill_tail().min(b.fill_tail());
            if s > 0 {
                let s = extend_last_fill(&mut out, s, format);
                a.skip(s).unwrap();
                b.skip(s).unwrap();
            }
        }
    }

    match op {
        SetOp::Or | SetOp::Xor => {
            if a.has_more() {
                drain(&mut out, a, left, format);
            } else {
                drain(&mut out, b, right, format);
            }
        }
        SetOp::AndNot => drain(&mut out, a, left, format),
        SetOp::And => {}
    }
    trim_trailing_zeros(&mut out, format);
    out
}

pub(crate) fn contains(words: &[EncodedWord], value: u32, format: Format) -> bool {
    let block = value / BLOCK_BITS;
    let bit = value % BLOCK_BITS;
    let mut start = 0u32;
    for &word in words {
        let blocks = blocks_of(word, format);
        if block - start < blocks {
            let literal = if word.is_literal() {
                BlockLiteral::from_bits(word.raw())
            } else {
                word.expand_unchecked(block - start, format)
            };
            return literal.bits() & (1 << bit) != 0;
        }
        start += blocks;
    }
    false
}

pub(crate) fn cardinality(words: &[EncodedWord], format: Format) -> u64 {
    words
        .iter()
        .map(|&word| {
            if word.is_literal() {
                return (word.raw() & PAYLOAD_MASK).count_ones() as u64;
            }
            let mixed = word.position_in(format) != 0;
            if word.fills_ones() {
                BLOCK_BITS as u64 * word.fill_blocks_unchecked(format) as u64 - mixed as u64
            } else {
                mixed as u64
            }
        })
        .sum()
}

/// Checks a word array read from untrusted input and returns its max.
pub(crate) fn validate(words: &[EncodedWord], format: Format) -> Result<Option<u32>, DecodeError> {
    let capacity = count_mask(format);
    for (index, pair) in words.windows(2).enumerate() {
        let (prev, next) = (pair[0], pair[1]);
        if prev.is_fill()
            && next.is_fill()
            && next.position_in(format) == 0
            && prev.fills_ones() == next.fills_ones()
            && prev.fill_count(format) < capacity
        {
            return Err(DecodeError::InvalidWord {
                index: index + 1,
                raw: next.raw(),
                reason: "unmerged fill of the same type as its predecessor",
            });
        }
    }
    if format == Format::Wah {
        if let Some((index, w)) = words.iter().enumerate().find(|(_, w)| w.is_fill() && w.fill_count(format) == 0) {
            return Err(DecodeError::InvalidWord { index, raw: w.raw(), reason: "empty fill" });
        }
    }
    let Some(&last) = words.last() else {
        return Ok(None);
    };
    let max = compute_max(words, format).ok_or(DecodeError::InvalidWord {
        index: words.len() - 1,
        raw: last.raw(),
        reason: "trailing block holds no integers",
    })?;
    let mut trimmed = words.to_vec();
    trim_trailing_zeros(&mut trimmed, format);
    if trimmed.len() != words.len() {
        return Err(DecodeError::InvalidWord {
            index: words.len() - 1,
            raw: last.raw(),
            reason: "trailing block holds no integers",
        });
    }
    if max > MAX_ALLOWED as u64 {
        return Err(DecodeError::InvalidWord {
            index: words.len() - 1,
            raw: last.raw(),
            reason: "content exceeds the maximum representable integer",
        });
    }
    Ok(Some(max as u32))
}

/// Ascending iterator over the integers of a word array.
#[derive(Debug, Clone)]
pub struct Iter<'a> {
    words: std::slice::Iter<'a, EncodedWord>,
    format: Format,
    next_block_start: u32,
    bits: u32,
    bits_base: u32,
    run_next: u32,
    run_end: u32,
    run_hole: Option<u32>,
}

impl<'a> Iter<'a> {
    pub(crate) fn new(words: &'a [EncodedWord], format: Format) -> Self {
        Iter {
            words: words.iter(),
            format,
            next_block_start: 0,
            bits: 0,
            bits_base: 0,
            run_next: 0,
            run_end: 0,
            run_hole: None,
        }
    }

    fn load(&mut self, word: EncodedWord) {
        let base = self.next_block_start;
        let blocks = blocks_of(word, self.format);
        self.next_block_start = base + blocks * BLOCK_BITS;
        if word.is_literal() {
            self.bits = word.raw() & PAYLOAD_MASK;
            self.bits_base = base;
            return;
        }
        let position = word.position_in(self.format);
        if word.fills_ones() {
            self.run_next = base;
            self.run_end = self.next_block_start;
            self.run_hole = (position != 0).then(|| base + position - 1);
        } else if position != 0 {
            self.bits = 1 << (position - 1);
            self.bits_base = base;
        }
    }
}

impl Iterator for Iter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.bits != 0 {
                let offset = self.bits.trailing_zeros();
                self.bits &= self.bits - 1;
                return Some(self.bits_base + offset);
            }
            while self.run_next < self.run_end {
                let value = self.run_next;
                self.run_next += 1;
                if Some(value) != self.run_hole {
                    return Some(value);
                }
            }
            let word = *self.words.next()?;
            self.load(word);
        }
    }
}
