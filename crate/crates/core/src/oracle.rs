//! Brute-force reference sets.
//!
//! Nothing here touches the compressed-word code paths, so these types can
//! be used to falsify them. They double as the uncompressed baselines in
//! benchmarks: [`SortedList`] as the plain array, [`PlainBitmap`] as the
//! plain bitmap.

use std::cmp::Ordering;

use crate::op::SetOp;

/// Strictly ascending list of distinct integers.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct SortedList(Vec<u32>);

impl SortedList {
    /// Sorts and deduplicates arbitrary input.
    pub fn from_unsorted(mut values: Vec<u32>) -> Self {
        values.sort_unstable();
        values.dedup();
        SortedList(values)
    }

    /// Wraps already sorted input, or returns `None` if it is not strictly
    /// ascending.
    pub fn from_sorted(values: Vec<u32>) -> Option<Self> {
        values.windows(2).all(|w| w[0] < w[1]).then_some(SortedList(values))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn contains(&self, value: u32) -> bool {
        self.0.binary_search(&value).is_ok()
    }

    pub fn insert(&mut self, value: u32) {
        if let Err(at) = self.0.binary_search(&value) {
            self.0.insert(at, value);
        }
    }

    pub fn remove(&mut self, value: u32) {
        if let Ok(at) = self.0.binary_search(&value) {
            self.0.remove(at);
        }
    }

    /// Appends a value greater than the current max.
    pub fn push(&mut self, value: u32) {
        assert!(self.max().is_none_or(|m| value > m), "push out of order");
        self.0.push(value);
    }

    /// Merge-walk over both lists.
    pub fn op(&self, other: &SortedList, op: SetOp) -> SortedList {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    if matches!(op, SetOp::Or | SetOp::Xor | SetOp::AndNot) {
                        out.push(a[i]);
                    }
                    i += 1;
                }
                Ordering::Greater => {
                    if matches!(op, SetOp::Or | SetOp::Xor) {
                        out.push(b[j]);
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    if matches!(op, SetOp::And | SetOp::Or) {
                        out.push(a[i]);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        if matches!(op, SetOp::Or | SetOp::Xor | SetOp::AndNot) {
            out.extend_from_slice(&a[i..]);
        }
        if matches!(op, SetOp::Or | SetOp::Xor) {
            out.extend_from_slice(&b[j..]);
        }
        SortedList(out)
    }
}

/// Uncompressed bitmap of 32-bit words; bit `i % 32` of word `i / 32` holds
/// integer `i`. Never carries trailing all-zero words.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct PlainBitmap {
    words: Vec<u32>,
}

impl PlainBitmap {
    pub fn from_values(values: &[u32]) -> Self {
        let mut bitmap = PlainBitmap::default();
        for &v in values {
            bitmap.insert(v);
        }
        bitmap
    }

    pub fn words(&self) -> &[u32] {
        &self.words
    }

    /// Memory footprint in 32-bit words: `ceil((max + 1) / 32)`.
    pub fn memory_words(&self) -> usize {
        self.words.len()
    }

    pub fn contains(&self, value: u32) -> bool {
        self.words.get((value / 32) as usize).is_some_and(|w| w >> (value % 32) & 1 == 1)
    }

    pub fn insert(&mut self, value: u32) {
        let index = (value / 32) as usize;
        if index >= self.words.len() {
            self.words.resize(index + 1, 0);
        }
        self.words[index] |= 1 << (value % 32);
    }

    pub fn remove(&mut self, value: u32) {
        let index = (value / 32) as usize;
        if let Some(word) = self.words.get_mut(index) {
            *word &= !(1 << (value % 32));
        }
        self.trim();
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn cardinality(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn to_values(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (index, &word) in self.words.iter().enumerate() {
            for bit in 0..32 {
                if word >> bit & 1 == 1 {
                    out.push(index as u32 * 32 + bit);
                }
            }
        }
        out
    }

    /// Word-by-word combination.
    pub fn op(&self, other: &PlainBitmap, op: SetOp) -> PlainBitmap {
        let len = match op {
            SetOp::And => self.words.len().min(other.words.len()),
            SetOp::AndNot => self.words.len(),
            SetOp::Or | SetOp::Xor => self.words.len().max(other.words.len()),
        };
        let mut words = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            words.push(op.apply(a, b));
        }
        let mut out = PlainBitmap { words };
        out.trim();
        out
    }
}

/// Sorted list plus an optional bitmap mirror of the same content.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlainSet {
    pub elements: SortedList,
    pub bitmap: Option<PlainBitmap>,
}

impl PlainSet {
    pub fn new(values: Vec<u32>, with_bitmap: bool) -> Self {
        let elements = SortedList::from_unsorted(values);
        let bitmap = with_bitmap.then(|| PlainBitmap::from_values(elements.as_slice()));
        PlainSet { elements, bitmap }
    }

    pub fn contains(&self, value: u32) -> bool {
        let found = self.elements.contains(value);
        if let Some(bitmap) = &self.bitmap {
            assert_eq!(bitmap.contains(value), found, "oracle representations disagree on {value}");
        }
        found
    }

    pub fn cardinality(&self) -> u64 {
        let n = self.elements.len() as u64;
        if let Some(bitmap) = &self.bitmap {
            assert_eq!(bitmap.cardinality(), n, "oracle representations disagree on cardinality");
        }
        n
    }

    /// Words needed by the uncompressed bitmap, `ceil((max + 1) / 32)`.
    pub fn bitmap_words(&self) -> usize {
        self.elements.max().map_or(0, |m| (m as usize + 1).div_ceil(32))
    }

    /// Words needed by the plain array: one per element.
    pub fn array_words(&self) -> usize {
        self.elements.len()
    }
}

/// Combines two plain sets through the list path and, when both carry one,
/// through the bitmap path as well, panicking if the two disagree.
pub fn plain_op(a: &PlainSet, b: &PlainSet, op: SetOp) -> PlainSet {
    let elements = a.elements.op(&b.elements, op);
    let bitmap = match (&a.bitmap, &b.bitmap) {
        (Some(x), Some(y)) => {
            let bitmap = x.op(y, op);
            assert_eq!(bitmap.to_values(), elements.as_slice(), "list and bitmap paths disagree for {op}");
            Some(bitmap)
        }
        _ => None,
    };
    PlainSet { elements, bitmap }
}

/// Encodes a sorted list block by block from first principles: a run of
/// two or more identical homogeneous blocks becomes a fill, and, when
/// `mixed_fills` is set, a block that differs from a following run in one
/// bit joins that run as its first block. Returns raw words.
pub fn naive_encode(values: &[u32], mixed_fills: bool) -> Vec<u32> {
    const FULL: u32 = 0x7FFF_FFFF;
    let Some(&max) = values.last() else {
        return Vec::new();
    };
    let mut blocks = vec![0u32; (max / 31 + 1) as usize];
    for &v in values {
        blocks[(v / 31) as usize] |= 1 << (v % 31);
    }
    let run_length = |from: usize, content: u32| blocks[from..].iter().take_while(|&&b| b == content).count();
    let fill = |ones: bool, len: usize, position: u32| -> u32 {
        let type_bit = if ones { 0x4000_0000 } else { 0 };
        if mixed_fills {
            type_bit | position << 25 | (len as u32 - 1)
        } else {
            type_bit | len as u32
        }
    };

    let mut out = Vec::new();
    let mut k = 0;
    while k < blocks.len() {
        let block = blocks[k];
        if block == 0 || block == FULL {
            let run = run_length(k, block);
            if run >= 2 {
                out.push(fill(block == FULL, run, 0));
            } else {
                out.push(0x8000_0000 | block);
            }
            k += run;
            continue;
        }
        if mixed_fills && k + 1 < blocks.len() {
            let zeros_after = block.count_ones() == 1 && blocks[k + 1] == 0;
            let ones_after = block.count_ones() == 30 && blocks[k + 1] == FULL;
            if zeros_after || ones_after {
                let run = run_length(k + 1, blocks[k + 1]);
                let flipped = if zeros_after { block } else { !block & FULL };
                out.push(fill(ones_after, run + 1, flipped.trailing_zeros() + 1));
                k += run + 1;
                continue;
            }
        }
        out.push(0x8000_0000 | block);
        k += 1;
    }
    out
}
