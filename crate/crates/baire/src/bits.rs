//! Finite binary strings over the alphabet `{0, 1}`.
//!
//! Oracles are total functions on these strings and machines read and write
//! them on tapes. The textual form used in files and on the command line is
//! the obvious one: `"0101"`. The empty string serializes as `""`.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A finite binary string.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        BitString(Vec::new())
    }

    /// The string `0^n`.
    pub fn zeros(n: usize) -> Self {
        BitString(vec![false; n])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    /// Initial segment of length at most `n`.
    pub fn truncate_to(&self, n: usize) -> BitString {
        BitString(self.0.iter().copied().take(n).collect())
    }

    /// Pad with zeros on the right up to length `n` (no-op if already longer).
    pub fn zero_pad_to(&self, n: usize) -> BitString {
        let mut v = self.0.clone();
        while v.len() < n {
            v.push(false);
        }
        BitString(v)
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BitString(v)
    }

    /// All strings of the given exact length, ordered by binary value with the
    /// first position least significant. Only usable for small lengths.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = BitString> {
        assert!(len < 63, "string enumeration limited to length < 63");
        (0u64..(1u64 << len)).map(move |v| {
            BitString((0..len).map(|i| (v >> i) & 1 == 1).collect())
        })
    }

    /// All strings of length at most `len`, shortest first.
    pub fn all_up_to_length(len: usize) -> impl Iterator<Item = BitString> {
        (0..=len).flat_map(BitString::all_of_length)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

/// Error for a malformed textual bit string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid bit character {0:?}; expected '0' or '1'")]
pub struct ParseBitsError(pub char);

impl FromStr for BitString {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut v = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => v.push(false),
                '1' => v.push(true),
                other => return Err(ParseBitsError(other)),
            }
        }
        Ok(BitString(v))
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_text() {
        let s: BitString = "0101".parse().unwrap();
        assert_eq!(s.to_string(), "0101");
        assert_eq!(s.len(), 4);
        assert!("01x1".parse::<BitString>().is_err());
        assert_eq!("".parse::<BitString>().unwrap(), BitString::new());
    }

    #[test]
    fn enumeration_counts_and_order() {
        let all: Vec<_> = BitString::all_up_to_length(3).collect();
        assert_eq!(all.len(), 15);
        assert_eq!(all[0], BitString::new());
        assert_eq!(all[1].to_string(), "0");
        assert_eq!(all[2].to_string(), "1");
        assert_eq!(all[3].to_string(), "00");
        assert_eq!(all[4].to_string(), "10");
    }

    #[test]
    fn truncate_and_pad() {
        let s: BitString = "110".parse().unwrap();
        assert_eq!(s.truncate_to(2).to_string(), "11");
        assert_eq!(s.zero_pad_to(5).to_string(), "11000");
        assert_eq!(s.zero_pad_to(2).to_string(), "110");
    }
}
