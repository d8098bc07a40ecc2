//! Qubit bit-strings. Digit `i` refers to lattice site (and mode) `i`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest register supported by the 64-bit mask representation.
pub const MAX_BITS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BitString {
    mask: u64,
    len: usize,
}

impl BitString {
    /// `mask` bit `i` is digit `i`.
    pub fn new(mask: u64, len: usize) -> Result<Self> {
        if len > MAX_BITS {
            return Err(Error::InvalidDimension(len));
        }
        if len < MAX_BITS && mask >> len != 0 {
            return Err(Error::Config(format!(
                "mask {mask:#b} has digits beyond length {len}"
            )));
        }
        Ok(Self { mask, len })
    }

    pub fn zeros(len: usize) -> Self {
        Self { mask: 0, len }
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let mask = bits
            .iter()
            .enumerate()
            .fold(0u64, |m, (i, &b)| m | (u64::from(b) << i));
        Self::new(mask, bits.len())
    }

    /// Bit-string with ones exactly at `positions`.
    pub fn from_positions(len: usize, positions: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &p in positions {
            if p >= len {
                return Err(Error::PositionOutOfRange { pos: p, n: len });
            }
            if mask & (1 << p) != 0 {
                return Err(Error::DuplicatePosition(p));
            }
            mask |= 1 << p;
        }
        Self::new(mask, len)
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn weight(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.mask >> i & 1 == 1
    }

    /// Positions of the ones, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// All `2^len` bit-strings ordered by mask.
    pub fn all(len: usize) -> impl Iterator<Item = BitString> {
        assert!(len < MAX_BITS, "cannot enumerate 2^{len} bit-strings");
        (0..1u64 << len).map(move |mask| BitString { mask, len })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Config(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(&bits)
    }
}
