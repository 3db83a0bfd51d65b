//! Binary envelope shared by both encodings.
//!
//! ```text
//! offset  size  field
//!      0     4  magic ("CNCS" or "WAHS")
//!      4     1  version (01h)
//!      5     1  reserved (00h)
//!      6     4  word count, little-endian
//!     10     4  max, little-endian (FFFFFFFFh when empty)
//!     14   4*n  words, little-endian
//! ```

use crate::error::DecodeError;
use crate::word::{EncodedWord, Format};

pub const CONCISE_MAGIC: [u8; 4] = *b"CNCS";
pub const WAH_MAGIC: [u8; 4] = *b"WAHS";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 14;
const EMPTY_MAX: u32 = u32::MAX;

pub fn magic_for(format: Format) -> [u8; 4] {
    match format {
        Format::Concise => CONCISE_MAGIC,
        Format::Wah => WAH_MAGIC,
    }
}

/// Identifies the encoding of a serialized set from its magic bytes.
pub fn detect_format(bytes: &[u8]) -> Option<Format> {
    match bytes.get(..4)? {
        m if m == CONCISE_MAGIC => Some(Format::Concise),
        m if m == WAH_MAGIC => Some(Format::Wah),
        _ => None,
    }
}

pub(crate) fn encode(format: Format, words: &[EncodedWord], max: Option<u32>) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * words.len());
    out.extend_from_slice(&magic_for(format));
    out.push(VERSION);
    out.push(0);
    out.extend_from_slice(&(words.len() as u32).to_le_bytes());
    out.extend_from_slice(&max.unwrap_or(EMPTY_MAX).to_le_bytes());
    for word in words {
        out.extend_from_slice(&word.raw().to_le_bytes());
    }
    out
}

fn read_u32(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap())
}

/// Parses the envelope. Word-level validation is left to the caller; the
/// returned max is the header value.
pub(crate) fn decode(format: Format, bytes: &[u8]) -> Result<(Vec<EncodedWord>, u32), DecodeError> {
    if bytes.len() < HEADER_LEN {
        return Err(DecodeError::TruncatedInput { expected: HEADER_LEN, found: bytes.len() });
    }
    if bytes[..4] != magic_for(format) {
        return Err(DecodeError::MalformedHeader("bad magic"));
    }
    if bytes[4] != VERSION {
        return Err(DecodeError::MalformedHeader("unsupported version"));
    }
    if bytes[5] != 0 {
        return Err(DecodeError::MalformedHeader("reserved byte must be zero"));
    }
    let count = read_u32(bytes, 6) as usize;
    let max = read_u32(bytes, 10);
    let expected = HEADER_LEN + 4 * count;
    if bytes.len() < expected {
        return Err(DecodeError::TruncatedInput { expected, found: bytes.len() });
    }
    if bytes.len() > expected {
        return Err(DecodeError::MalformedHeader("trailing bytes after the last word"));
    }
    let words = bytes[HEADER_LEN..]
        .chunks_exact(4)
        .map(|c| EncodedWord::from_raw(u32::from_le_bytes(c.try_into().unwrap())))
        .collect();
    Ok((words, max))
}

pub(crate) const fn empty_max() -> u32 {
    EMPTY_MAX
}

#[cfg(test)]
pub(crate) mod tests_support {
    /// Hand-assembled envelope, bypassing the encoder.
    pub fn envelope(magic: [u8; 4], words: &[u32], max: u32) -> Vec<u8> {
        let mut out = magic.to_vec();
        out.extend_from_slice(&[1, 0]);
        out.extend_from_slice(&(words.len() as u32).to_le_bytes());
        out.extend_from_slice(&max.to_le_bytes());
        for w in words {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out
    }
}
