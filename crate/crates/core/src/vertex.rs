//! Geometry of the binary Hamming graph `H(m, 2)`.
//!
//! A vertex is a length-`m` binary word packed into a `u32`: coordinate `i`
//! (1-based) lives in bit `i - 1`. Distances are XOR + popcount.

use std::fmt;
use std::str::FromStr;

use crate::bits::{self, full_mask};
use crate::error::{Error, Result};

/// Largest supported word length.
pub const MAX_LEN: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    bits: u32,
    len: u8,
}

impl Vertex {
    pub fn new(bits: u32, len: usize) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::param(format!(
                "word length {len} outside 1..={MAX_LEN}"
            )));
        }
        if bits & !full_mask(len) != 0 {
            return Err(Error::param(format!(
                "bitmask {bits:#x} has bits at or above position {len}"
            )));
        }
        Ok(Vertex {
            bits,
            len: len as u8,
        })
    }

    /// Builds a vertex without validation; callers guarantee the invariants.
    #[inline]
    pub(crate) fn from_raw(bits: u32, len: usize) -> Self {
        debug_assert!(len >= 1 && len <= MAX_LEN && bits & !full_mask(len) == 0);
        Vertex {
            bits,
            len: len as u8,
        }
    }

    pub fn zero(len: usize) -> Result<Self> {
        Self::new(0, len)
    }

    pub fn ones(len: usize) -> Result<Self> {
        Self::new(full_mask(len), len)
    }

    /// Builds a vertex from 1-based coordinates.
    pub fn from_support(len: usize, coords: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &c in coords {
            if c == 0 || c > len {
                return Err(Error::param(format!("coordinate {c} outside 1..={len}")));
            }
            bits |= 1 << (c - 1);
        }
        Self::new(bits, len)
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// 1-based coordinates of the nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        bits::bit_indices(self.bits).map(|i| i + 1).collect()
    }

    pub fn complement(&self) -> Vertex {
        Vertex {
            bits: self.bits ^ full_mask(self.len()),
            len: self.len,
        }
    }

    /// Entry at 1-based coordinate `i`.
    pub fn entry(&self, i: usize) -> bool {
        (self.bits >> (i - 1)) & 1 == 1
    }
}

/// Hamming distance between two words of equal length.
pub fn dist(a: Vertex, b: Vertex) -> Result<usize> {
    if a.len != b.len {
        return Err(Error::param(format!(
            "length mismatch: {} vs {}",
            a.len, b.len
        )));
    }
    Ok((a.bits ^ b.bits).count_ones() as usize)
}

#[inline]
pub(crate) fn raw_dist(a: u32, b: u32) -> usize {
    (a ^ b).count_ones() as usize
}

/// The vertices at distance exactly `radius` from a center, in ascending
/// order of the XOR offset.
#[derive(Debug, Clone)]
pub struct SphereIter {
    center: Vertex,
    offsets: bits::KSubsets,
}

impl Iterator for SphereIter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        let off = self.offsets.next()?;
        Some(Vertex {
            bits: self.center.bits ^ off,
            len: self.center.len,
        })
    }
}

pub fn sphere(center: Vertex, radius: usize) -> Result<SphereIter> {
    if radius > center.len() {
        return Err(Error::param(format!(
            "radius {radius} exceeds word length {}",
            center.len()
        )));
    }
    Ok(SphereIter {
        center,
        offsets: bits::ksubsets(center.len(), radius),
    })
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            let c = if (self.bits >> i) & 1 == 1 { '1' } else { '0' };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Vertex {
    type Err = Error;

    /// Text form: exactly `m` characters over `{0,1}`, coordinate 1 leftmost.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => {
                    if i >= MAX_LEN {
                        break;
                    }
                    bits |= 1 << i;
                }
                other => return Err(Error::param(format!("invalid character {other:?} in word"))),
            }
        }
        Vertex::new(bits, s.chars().count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn distance_basics() {
        let a = v("010110100101");
        assert_eq!(dist(a, a).unwrap(), 0);
        assert_eq!(dist(Vertex::zero(12).unwrap(), Vertex::ones(12).unwrap()).unwrap(), 12);
        assert!(dist(v("01"), v("011")).is_err());
    }

    #[test]
    fn support_convention() {
        assert!(Vertex::zero(7).unwrap().support().is_empty());
        assert_eq!(Vertex::ones(11).unwrap().support(), (1..=11).collect::<Vec<_>>());
        assert_eq!(v("001011").support(), vec![3, 5, 6]);
        assert_eq!(Vertex::from_support(6, &[3, 5, 6]).unwrap(), v("001011"));
    }

    #[test]
    fn complement_is_involution() {
        let z = Vertex::zero(9).unwrap();
        assert_eq!(z.complement(), Vertex::ones(9).unwrap());
        let a = v("110100111");
        assert_eq!(a.complement().complement(), a);
        assert_eq!(dist(a, a.complement()).unwrap(), 9);
    }

    #[test]
    fn spheres() {
        let a = v("101100101011");
        assert_eq!(sphere(a, 0).unwrap().collect::<Vec<_>>(), vec![a]);
        let s4: Vec<_> = sphere(a, 4).unwrap().collect();
        assert_eq!(s4.len(), 495);
        assert!(s4.iter().all(|&b| dist(a, b).unwrap() == 4));
        let total: usize = (0..=11)
            .map(|k| sphere(Vertex::zero(11).unwrap(), k).unwrap().count())
            .sum();
        assert_eq!(total, 2048);
        assert!(sphere(a, 13).is_err());
    }

    #[test]
    fn text_form() {
        assert_eq!(v("0010").to_string(), "0010");
        assert_eq!(v("0010").bits(), 0b0100);
        assert!("012".parse::<Vertex>().is_err());
        assert!("".parse::<Vertex>().is_err());
        assert!(Vertex::new(0b1000, 3).is_err());
    }
}
