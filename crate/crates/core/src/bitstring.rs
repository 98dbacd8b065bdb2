use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported register width.
pub const MAX_WIDTH: u32 = 64;

/// A fixed-width measurement outcome.
///
/// Bits are stored in a single `u64` word; the leftmost character of the
/// textual form is the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    width: u32,
    bits: u64,
}

impl BitString {
    pub fn new(width: u32, bits: u64) -> Result<Self> {
        check_width(width)?;
        if width < 64 && bits >> width != 0 {
            return Err(Error::InvalidInput(format!(
                "value {bits} does not fit in {width} bits"
            )));
        }
        Ok(Self { width, bits })
    }

    /// All-zero string of the given width.
    pub fn zeros(width: u32) -> Result<Self> {
        Self::new(width, 0)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Parse an MSB-first string of exactly `width` binary characters.
    pub fn parse(text: &str, width: u32) -> Result<Self> {
        check_width(width)?;
        if text.len() != width as usize {
            return Err(Error::Format(format!(
                "bit-string {text:?} has length {}, expected {width}",
                text.chars().count()
            )));
        }
        let mut bits = 0u64;
        for c in text.chars() {
            let bit = match c {
                '0' => 0,
                '1' => 1,
                _ => {
                    return Err(Error::Format(format!(
                        "bit-string {text:?} contains non-binary character {c:?}"
                    )))
                }
            };
            bits = (bits << 1) | bit;
        }
        Ok(Self { width, bits })
    }

    /// Bit `index`, counted from the least significant end.
    pub fn bit(&self, index: u32) -> bool {
        index < self.width && (self.bits >> index) & 1 == 1
    }

    /// Flip the bits set in `mask`.
    pub fn flipped(&self, mask: u64) -> Self {
        Self {
            width: self.width,
            bits: (self.bits ^ mask) & width_mask(self.width),
        }
    }

    pub(crate) fn ensure_same_width(&self, other: &Self) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        Ok(())
    }
}

/// Parse `text` as a bit-string whose width is its length.
impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let width = u32::try_from(s.len())
            .map_err(|_| Error::Format(format!("bit-string {s:?} is too long")))?;
        Self::parse(s, width)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.width).rev() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub(crate) fn check_width(width: u32) -> Result<()> {
    if width == 0 || width > MAX_WIDTH {
        return Err(Error::InvalidInput(format!(
            "width {width} outside supported range 1..={MAX_WIDTH}"
        )));
    }
    Ok(())
}

pub(crate) fn width_mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}
