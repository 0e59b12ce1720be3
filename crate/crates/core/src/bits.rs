//! Fixed-width bit strings, written most-significant bit first.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Longest bit string representable in a `usize` value.
pub const MAX_BITS: usize = usize::BITS as usize - 1;

/// An `len`-bit string. The leftmost character is the most significant bit of
/// `value`, which makes `value` the big-endian basis index of the string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    value: usize,
    len: usize,
}

impl BitString {
    pub fn new(value: usize, len: usize) -> Result<Self> {
        if len > MAX_BITS {
            return Err(Error::invalid(format!("bit string length {len} exceeds {MAX_BITS}")));
        }
        if value >> len != 0 {
            return Err(Error::invalid(format!("value {value} does not fit in {len} bits")));
        }
        Ok(BitString { value, len })
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(0, len)
    }

    pub fn value(&self) -> usize {
        self.value
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at string position `i` (0 = leftmost).
    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.len, "bit position {i} out of range");
        (self.value >> (self.len - 1 - i)) & 1 == 1
    }

    /// Copy with the bit at string position `i` flipped.
    pub fn flipped(&self, i: usize) -> Self {
        assert!(i < self.len, "bit position {i} out of range");
        BitString {
            value: self.value ^ (1 << (self.len - 1 - i)),
            len: self.len,
        }
    }

    pub fn hamming(&self, other: &BitString) -> usize {
        (self.value ^ other.value).count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bit(i))
    }

    /// Concatenation, `self` on the left.
    pub fn concat(&self, other: &BitString) -> Result<Self> {
        Self::new((self.value << other.len) | other.value, self.len + other.len)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > MAX_BITS {
            return Err(Error::invalid(format!("bit string too long: {}", s.len())));
        }
        let mut value = 0usize;
        for c in s.chars() {
            value = (value << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    other => return Err(Error::invalid(format!("invalid character {other:?} in bit string"))),
                };
        }
        Ok(BitString { value, len: s.len() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn msb_first() {
        let b: BitString = "010".parse().unwrap();
        assert_eq!(b.value(), 2);
        assert!(!b.bit(0) && b.bit(1) && !b.bit(2));
        assert_eq!(b.to_string(), "010");
        assert_eq!(b.flipped(0).to_string(), "110");
    }

    #[test]
    fn empty_and_errors() {
        let e: BitString = "".parse().unwrap();
        assert!(e.is_empty());
        assert!("01a".parse::<BitString>().is_err());
        assert!(BitString::new(4, 2).is_err());
    }

    #[test]
    fn concat_and_hamming() {
        let a: BitString = "10".parse().unwrap();
        let b: BitString = "011".parse().unwrap();
        assert_eq!(a.concat(&b).unwrap().to_string(), "10011");
        assert_eq!(a.hamming(&"01".parse().unwrap()), 2);
    }
}
