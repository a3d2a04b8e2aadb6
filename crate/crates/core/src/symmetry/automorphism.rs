use std::fmt;
use std::str::FromStr;

use crate::bits::{full_mask, permute_mask};
use crate::error::{Error, Result};
use crate::vertex::{Vertex, MAX_LEN};

/// An element `gσ` of `Aut(H(m,2)) = B ⋊ L`: flip the coordinates in the
/// translation mask, then move coordinate `i` to coordinate `σ(i)`.
///
/// Products read left to right: `x.compose(&y)` applies `x` first, then `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphAutomorphism {
    len: u8,
    translation: u32,
    perm: [u8; MAX_LEN],
}

impl GraphAutomorphism {
    pub fn identity(len: usize) -> Self {
        let mut perm = [0u8; MAX_LEN];
        for (i, p) in perm.iter_mut().enumerate().take(len) {
            *p = i as u8;
        }
        GraphAutomorphism {
            len: len as u8,
            translation: 0,
            perm,
        }
    }

    /// `perm` is 0-based: coordinate `i` moves to `perm[i]`.
    pub fn new(len: usize, translation: u32, perm: &[usize]) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::param(format!("degree {len} outside 1..={MAX_LEN}")));
        }
        if perm.len() != len {
            return Err(Error::param(format!(
                "permutation has {} images, expected {len}",
                perm.len()
            )));
        }
        if translation & !full_mask(len) != 0 {
            return Err(Error::param("translation mask exceeds the word length"));
        }
        let mut seen = 0u32;
        let mut arr = [0u8; MAX_LEN];
        for (i, &p) in perm.iter().enumerate() {
            if p >= len || seen & (1 << p) != 0 {
                return Err(Error::param(format!("not a permutation of 0..{len}: {perm:?}")));
            }
            seen |= 1 << p;
            arr[i] = p as u8;
        }
        Ok(GraphAutomorphism {
            len: len as u8,
            translation,
            perm: arr,
        })
    }

    pub fn from_perm(perm: &[usize]) -> Result<Self> {
        Self::new(perm.len(), 0, perm)
    }

    pub(crate) fn from_perm_u8(perm: &[u8]) -> Self {
        let mut arr = [0u8; MAX_LEN];
        arr[..perm.len()].copy_from_slice(perm);
        GraphAutomorphism {
            len: perm.len() as u8,
            translation: 0,
            perm: arr,
        }
    }

    /// Pure translation `a ↦ a XOR t`.
    pub fn translation_by(len: usize, t: u32) -> Self {
        let mut x = Self::identity(len);
        x.translation = t & full_mask(len);
        x
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn translation(&self) -> u32 {
        self.translation
    }

    #[inline]
    pub fn perm(&self) -> &[u8] {
        &self.perm[..self.len as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.translation == 0 && self.perm().iter().enumerate().all(|(i, &p)| p as usize == i)
    }

    pub fn is_pure_permutation(&self) -> bool {
        self.translation == 0
    }

    #[inline]
    pub fn apply_mask(&self, a: u32) -> u32 {
        permute_mask(a ^ self.translation, self.perm())
    }

    pub fn apply(&self, a: Vertex) -> Result<Vertex> {
        if a.len() != self.degree() {
            return Err(Error::param(format!(
                "vertex length {} does not match degree {}",
                a.len(),
                self.degree()
            )));
        }
        Ok(Vertex::from_raw(self.apply_mask(a.bits()), a.len()))
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        let n = self.degree();
        let mut perm = [0u8; MAX_LEN];
        let mut pulled = 0u32;
        for i in 0..n {
            let mid = self.perm[i] as usize;
            perm[i] = other.perm[mid];
            pulled |= ((other.translation >> mid) & 1) << i;
        }
        GraphAutomorphism {
            len: self.len,
            translation: self.translation ^ pulled,
            perm,
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.degree();
        let mut perm = [0u8; MAX_LEN];
        for i in 0..n {
            perm[self.perm[i] as usize] = i as u8;
        }
        GraphAutomorphism {
            len: self.len,
            translation: permute_mask(self.translation, self.perm()),
            perm,
        }
    }

    /// `x⁻¹ · self · x`, the element acting on `C^x` as `self` acts on `C`.
    pub fn conjugate_by(&self, x: &Self) -> Self {
        x.inverse().compose(self).compose(x)
    }

    /// Image of the 0-based coordinate `i`.
    #[inline]
    pub fn image_of(&self, i: usize) -> usize {
        self.perm[i] as usize
    }
}

impl fmt::Display for GraphAutomorphism {
    /// `<flip mask>|<images of 1..m>`, both 1-based in the usual text form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = Vertex::from_raw(self.translation, self.degree());
        write!(f, "{t}|")?;
        for (i, p) in self.perm().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", *p as usize + 1)?;
        }
        Ok(())
    }
}

impl serde::Serialize for GraphAutomorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for GraphAutomorphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (mask, images) = s
            .trim()
            .split_once('|')
            .ok_or_else(|| Error::param("generator line needs `<mask>|<images>`"))?;
        let t: Vertex = mask.trim().parse()?;
        let perm = images
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .ok()
                    .filter(|&p| p >= 1)
                    .map(|p| p - 1)
                    .ok_or_else(|| Error::param(format!("bad image {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        GraphAutomorphism::new(t.len(), t.bits(), &perm)
    }
}

/// Parses a generator file: one automorphism per line, `#` comments.
pub fn parse_generators(text: &str) -> Result<Vec<GraphAutomorphism>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let g: GraphAutomorphism = line
            .parse()
            .map_err(|e: Error| Error::parse(idx + 1, e.to_string()))?;
        if let Some(first) = out.first() {
            let first: &GraphAutomorphism = first;
            if first.degree() != g.degree() {
                return Err(Error::parse(idx + 1, "generators of different degrees"));
            }
        }
        out.push(g);
    }
    Ok(out)
}

pub fn generators_to_string(gens: &[GraphAutomorphism]) -> String {
    let mut s = String::new();
    for g in gens {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}
