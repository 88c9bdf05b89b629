//! Fixed-length bit strings packed into machine words.
//!
//! Bit `j` corresponds to qubit `j` (0-based). Text form lists qubit 1 first,
//! so `"100"` has only qubit 1 set. The computational-basis index of a bit
//! string treats qubit 1 as the most significant bit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits { len, words: vec![0; word_count(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Bits::zeros(len);
        for j in 0..len {
            b.set(j, true);
        }
        b
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut b = Bits::zeros(bits.len());
        for (j, &v) in bits.iter().enumerate() {
            b.set(j, v);
        }
        b
    }

    /// Bit string whose computational-basis index is `index`.
    pub fn from_index(len: usize, index: usize) -> Self {
        let mut b = Bits::zeros(len);
        for j in 0..len {
            b.set(j, (index >> (len - 1 - j)) & 1 == 1);
        }
        b
    }

    /// Computational-basis index (qubit 1 most significant). Requires `len < 64`.
    pub fn to_index(&self) -> usize {
        debug_assert!(self.len < 64);
        (0..self.len).fold(0usize, |acc, j| (acc << 1) | self.get(j) as usize)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, j: usize) -> bool {
        debug_assert!(j < self.len);
        (self.words[j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, j: usize, value: bool) {
        debug_assert!(j < self.len);
        let mask = 1u64 << (j % 64);
        if value {
            self.words[j / 64] |= mask;
        } else {
            self.words[j / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, j: usize) {
        self.words[j / 64] ^= 1u64 << (j % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn or(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.len, other.len);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        Bits { len: self.len, words }
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones()) & 1 == 1
    }

    /// True if every bit set in `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|j| self.get(j)).collect()
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len {
            f.write_str(if self.get(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({self})")
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut b = Bits::zeros(s.len());
        for (j, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => b.set(j, true),
                _ => return Err(Error::validation("bits", format!("unexpected character {c:?} in {s:?}"))),
            }
        }
        Ok(b)
    }
}

impl Serialize for Bits {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bits {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_puts_qubit_one_first() {
        let b = Bits::from_index(3, 0b100);
        assert_eq!(b.to_string(), "100");
        assert!(b.get(0));
        assert_eq!(b.to_index(), 4);
        for i in 0..8 {
            assert_eq!(Bits::from_index(3, i).to_index(), i);
        }
    }

    #[test]
    fn ones_iterates_across_words() {
        let mut b = Bits::zeros(130);
        b.set(3, true);
        b.set(64, true);
        b.set(129, true);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![3, 64, 129]);
        assert_eq!(b.count_ones(), 3);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("01x".parse::<Bits>().is_err());
        assert_eq!("0110".parse::<Bits>().unwrap().count_ones(), 2);
    }
}
