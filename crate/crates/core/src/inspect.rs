//! Human-readable word dumps.

use std::fmt::Write as _;

use crate::set::{CompressedSet, Encoding};
use crate::word::{EncodedWord, Format, WordKind, BLOCK_BITS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordInfo {
    pub index: usize,
    pub word: EncodedWord,
    pub kind: WordKind,
    /// CONCISE position field; `None` for literals and WAH fills.
    pub position: Option<u32>,
    pub blocks: u32,
    /// First and last integer covered by the word's blocks.
    pub first: u64,
    pub last: u64,
}

pub fn describe(words: &[EncodedWord], format: Format) -> Vec<WordInfo> {
    let mut start = 0u64;
    words
        .iter()
        .enumerate()
        .map(|(index, &word)| {
            let kind = word.classify(format);
            let (blocks, position) = match kind {
                WordKind::Literal => (1, None),
                _ => (
                    word.fill_blocks(format).unwrap(),
                    (format == Format::Concise).then(|| word.fill_position().unwrap()),
                ),
            };
            let first = start * BLOCK_BITS as u64;
            start += blocks as u64;
            WordInfo { index, word, kind, position, blocks, first, last: start * BLOCK_BITS as u64 - 1 }
        })
        .collect()
}

impl WordInfo {
    /// One line: index, hex, classification, fields, covered range.
    pub fn line(&self) -> String {
        let body = match self.kind {
            WordKind::Literal => format!("literal, bits={}", (self.word.raw() & 0x7FFF_FFFF).count_ones()),
            kind => {
                let fill = if kind == WordKind::OneFill { "1's" } else { "0's" };
                match self.position {
                    Some(p) => format!("fill {fill}, pos={p}, blocks={}", self.blocks),
                    None => format!("fill {fill}, blocks={}", self.blocks),
                }
            }
        };
        format!("#{} {} {} [{}..={}]", self.index, self.word, body, self.first, self.last)
    }
}

/// Header line followed by one line per word.
pub fn render<E: Encoding>(set: &CompressedSet<E>) -> String {
    let label = match E::FORMAT {
        Format::Concise => "CONCISE",
        Format::Wah => "WAH",
    };
    let max = set.max().map_or_else(|| "-".to_string(), |m| m.to_string());
    let mut out = format!("{label} words={} cardinality={} max={max}\n", set.word_count(), set.cardinality());
    for info in describe(set.words(), E::FORMAT) {
        writeln!(out, "{}", info.line()).unwrap();
    }
    out
}
