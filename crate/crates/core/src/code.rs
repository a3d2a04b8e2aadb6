//! Binary codes as vertex sets of `H(m, 2)` and their basic invariants.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bits::full_mask;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::vertex::{raw_dist, Vertex, MAX_LEN};

/// A nonempty, sorted, duplicate-free set of words of a common length.
///
/// Minimum distance and covering radius are computed at most once.
#[derive(Debug, Clone)]
pub struct Code {
    len: usize,
    words: Vec<u32>,
    min_distance: OnceLock<Option<usize>>,
    covering_radius: OnceLock<usize>,
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.words == other.words
    }
}

impl Eq for Code {}

/// Where [`Code::extend_parity`] puts the parity bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParityPosition {
    Front,
    #[default]
    Back,
}

impl Code {
    pub fn new(len: usize, words: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut masks = Vec::new();
        for w in words {
            if w.len() != len {
                return Err(Error::param(format!(
                    "word {w} has length {}, expected {len}",
                    w.len()
                )));
            }
            masks.push(w.bits());
        }
        Self::from_masks(len, masks)
    }

    pub fn from_masks(len: usize, masks: impl IntoIterator<Item = u32>) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::param(format!("word length {len} outside 1..={MAX_LEN}")));
        }
        let mut words: Vec<u32> = masks.into_iter().collect();
        if let Some(bad) = words.iter().find(|&&w| w & !full_mask(len) != 0) {
            return Err(Error::param(format!(
                "mask {bad:#x} does not fit in {len} coordinates"
            )));
        }
        words.sort_unstable();
        words.dedup();
        if words.is_empty() {
            return Err(Error::param("a code needs at least one word"));
        }
        Ok(Code {
            len,
            words,
            min_distance: OnceLock::new(),
            covering_radius: OnceLock::new(),
        })
    }

    /// The whole vertex set of `H(m, 2)`.
    pub fn universe(len: usize) -> Result<Self> {
        if len > 16 {
            return Err(Error::param("universe code only built for m <= 16"));
        }
        Self::from_masks(len, 0..=full_mask(len))
    }

    pub fn repetition(len: usize) -> Result<Self> {
        Self::from_masks(len, [0, full_mask(len)])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Number of codewords `N`.
    #[inline]
    pub fn size(&self) -> usize {
        self.words.len()
    }

    /// Sorted codeword masks.
    #[inline]
    pub fn masks(&self) -> &[u32] {
        &self.words
    }

    pub fn words(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().map(|&w| Vertex::from_raw(w, self.len))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.len() == self.len && self.contains_mask(v.bits())
    }

    #[inline]
    pub fn contains_mask(&self, mask: u32) -> bool {
        self.words.binary_search(&mask).is_ok()
    }

    /// Smallest distance between distinct codewords; undefined when `N < 2`.
    pub fn min_distance(&self) -> Result<usize> {
        let d = *self.min_distance.get_or_init(|| {
            let mut best: Option<usize> = None;
            for (i, &a) in self.words.iter().enumerate() {
                for &b in &self.words[i + 1..] {
                    let d = raw_dist(a, b);
                    best = Some(best.map_or(d, |x| x.min(d)));
                }
            }
            best
        });
        d.ok_or_else(|| {
            Error::Undefined(format!(
                "minimum distance of a code with {} word(s)",
                self.size()
            ))
        })
    }

    /// `d(v, C)`.
    pub fn distance_to(&self, v: u32) -> usize {
        self.words.iter().map(|&w| raw_dist(v, w)).min().unwrap_or(0)
    }

    /// `d(v, C)` for every vertex, indexed by bitmask. Multi-source
    /// breadth-first search over the hypercube, so every one of the `2^m`
    /// vertices is labelled.
    pub fn distance_labels(&self) -> Vec<u8> {
        let n = 1usize << self.len;
        let mut label = vec![u8::MAX; n];
        let mut queue = VecDeque::with_capacity(n);
        for &w in &self.words {
            label[w as usize] = 0;
            queue.push_back(w);
        }
        while let Some(v) = queue.pop_front() {
            let next = label[v as usize] + 1;
            for i in 0..self.len {
                let u = (v ^ (1 << i)) as usize;
                if label[u] == u8::MAX {
                    label[u] = next;
                    queue.push_back(u as u32);
                }
            }
        }
        label
    }

    pub fn covering_radius(&self) -> usize {
        *self
            .covering_radius
            .get_or_init(|| self.distance_labels().into_iter().max().unwrap_or(0) as usize)
    }

    pub fn distance_partition(&self) -> DistancePartition {
        let labels = self.distance_labels();
        let rho = labels.iter().copied().max().unwrap_or(0) as usize;
        let _ = self.covering_radius.set(rho);
        let mut cells = vec![Vec::new(); rho + 1];
        for (v, &d) in labels.iter().enumerate() {
            cells[d as usize].push(v as u32);
        }
        DistancePartition {
            len: self.len,
            cells,
        }
    }

    pub fn distance_distribution(&self) -> DistanceDistribution {
        let mut counts = vec![0u64; self.len + 1];
        for &a in &self.words {
            for &b in &self.words {
                counts[raw_dist(a, b)] += 1;
            }
        }
        let n = BigInt::from(self.size());
        DistanceDistribution {
            a: counts
                .into_iter()
                .map(|c| Rational::new(BigInt::from(c), n.clone()))
                .collect(),
        }
    }

    /// Codewords of weight exactly `k`.
    pub fn weight_class(&self, k: usize) -> Result<Vec<Vertex>> {
        if k > self.len {
            return Err(Error::param(format!("weight {k} exceeds length {}", self.len)));
        }
        Ok(self
            .words()
            .filter(|w| w.weight() == k)
            .collect())
    }

    pub fn is_antipodal(&self) -> bool {
        let all = full_mask(self.len);
        self.words.iter().all(|&w| self.contains_mask(w ^ all))
    }

    /// Image under `π_J`: keeps the listed 1-based coordinates, in
    /// ascending coordinate order.
    pub fn project(&self, coords: &[usize]) -> Result<Code> {
        Ok(self.project_counted(coords)?.0)
    }

    /// Like [`Code::project`], also returning how many words were lost to
    /// collisions.
    pub fn project_counted(&self, coords: &[usize]) -> Result<(Code, usize)> {
        let mut keep: Vec<usize> = coords.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(Error::param("projection onto an empty coordinate set"));
        }
        if let Some(&bad) = keep.iter().find(|&&c| c == 0 || c > self.len) {
            return Err(Error::param(format!(
                "coordinate {bad} outside 1..={}",
                self.len
            )));
        }
        let projected = self.words.iter().map(|&w| {
            keep.iter()
                .enumerate()
                .fold(0u32, |acc, (j, &c)| acc | (((w >> (c - 1)) & 1) << j))
        });
        let code = Code::from_masks(keep.len(), projected)?;
        let lost = self.size() - code.size();
        Ok((code, lost))
    }

    /// Deletes 1-based coordinate `p` from every word.
    pub fn puncture(&self, p: usize) -> Result<Code> {
        Ok(self.puncture_counted(p)?.0)
    }

    pub fn puncture_counted(&self, p: usize) -> Result<(Code, usize)> {
        if p == 0 || p > self.len {
            return Err(Error::param(format!(
                "puncture coordinate {p} outside 1..={}",
                self.len
            )));
        }
        if self.len == 1 {
            return Err(Error::param("cannot puncture a length-1 code"));
        }
        let keep: Vec<usize> = (1..=self.len).filter(|&c| c != p).collect();
        self.project_counted(&keep)
    }

    /// Appends (or prepends) an even-parity bit to every word.
    pub fn extend_parity(&self, position: ParityPosition) -> Result<Code> {
        let m = self.len + 1;
        if m > MAX_LEN {
            return Err(Error::param(format!("extended length {m} exceeds {MAX_LEN}")));
        }
        let ext = self.words.iter().map(|&w| {
            let parity = w.count_ones() & 1;
            match position {
                ParityPosition::Front => (w << 1) | parity,
                ParityPosition::Back => w | (parity << self.len),
            }
        });
        Code::from_masks(m, ext)
    }

    /// XOR every word with `t`.
    pub fn translate(&self, t: u32) -> Code {
        Code::from_masks(self.len, self.words.iter().map(|&w| w ^ t))
            .expect("translation preserves length and size")
    }

    pub fn contains_zero(&self) -> bool {
        self.words.first() == Some(&0)
    }

    /// Parses the code file format: `m=<int>` header, one word per line,
    /// `#` comments.
    pub fn parse(text: &str) -> Result<Code> {
        let mut len: Option<usize> = None;
        let mut words = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match len {
                None => {
                    let value = line
                        .strip_prefix("m=")
                        .ok_or_else(|| Error::parse(line_no, "expected header `m=<int>`"))?;
                    let m: usize = value
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad length {value:?}")))?;
                    if m == 0 || m > MAX_LEN {
                        return Err(Error::parse(line_no, format!("length {m} unsupported")));
                    }
                    len = Some(m);
                }
                Some(m) => {
                    let w: Vertex = line
                        .parse()
                        .map_err(|e| Error::parse(line_no, format!("{e}")))?;
                    if w.len() != m {
                        return Err(Error::parse(
                            line_no,
                            format!("word has length {}, header says {m}", w.len()),
                        ));
                    }
                    words.push(w);
                }
            }
        }
        let m = len.ok_or_else(|| Error::parse(1, "missing header `m=<int>`"))?;
        if words.is_empty() {
            return Err(Error::parse(1, "code file lists no words"));
        }
        Code::new(m, words)
    }

    /// Serializes in sorted order, optionally with leading comment lines.
    pub fn to_file_string(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "m={}", self.len);
        for w in self.words() {
            let _ = writeln!(out, "{w}");
        }
        out
    }
}

/// The cells `C_0, .., C_ρ` of vertices by distance from the code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistancePartition {
    pub len: usize,
    pub cells: Vec<Vec<u32>>,
}

impl DistancePartition {
    pub fn covering_radius(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Cell index for every vertex, indexed by bitmask.
    pub fn labels(&self) -> Vec<u8> {
        let mut out = vec![0u8; 1 << self.len];
        for (i, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                out[v as usize] = i as u8;
            }
        }
        out
    }
}

/// `a_i = |{(α, β) ∈ C² : d(α, β) = i}| / |C|`, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceDistribution {
    pub a: Vec<Rational>,
}

impl DistanceDistribution {
    pub fn from_values(a: Vec<Rational>) -> Self {
        DistanceDistribution { a }
    }

    pub fn from_integers(a: &[i64]) -> Self {
        DistanceDistribution {
            a: a.iter().map(|&x| crate::rational::int(x)).collect(),
        }
    }

    /// Word length `m` (the vector has `m + 1` entries).
    pub fn len(&self) -> usize {
        self.a.len().saturating_sub(1)
    }

    pub fn total(&self) -> Rational {
        self.a.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Checks the identities every genuine distribution satisfies.
    pub fn is_well_formed(&self) -> bool {
        !self.a.is_empty()
            && self.a[0].is_one()
            && self.a.iter().all(|x| *x >= Rational::zero())
    }
}

/// All words of even weight, in ascending order, truncated to `count`.
pub fn even_weight_prefix(len: usize, count: usize) -> Result<Code> {
    Code::from_masks(
        len,
        (0..=full_mask(len))
            .filter(|w| w.count_ones() % 2 == 0)
            .take(count),
    )
}

/// Sizes `|C_i|` without materialising the partition.
pub fn cell_sizes(labels: &[u8]) -> Vec<usize> {
    let rho = labels.iter().copied().max().unwrap_or(0) as usize;
    let mut sizes = vec![0; rho + 1];
    for &l in labels {
        sizes[l as usize] += 1;
    }
    sizes
}
