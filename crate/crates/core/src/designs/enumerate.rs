//! Isomorph-free generation of simple `t`-designs.
//!
//! Blocks are ordered lexicographically as sorted point lists (`A ≺ B` iff
//! the least point of `A △ B` lies in `A`), and a family is compared with
//! another of the same size through its ≺-sorted block list. A family is
//! canonical when no point permutation produces a smaller list. Removing
//! the ≺-largest block of a canonical family leaves a canonical family, so
//! adding blocks in ≺ order and keeping only canonical families visits each
//! isomorphism class exactly once.

use crate::bits::{bit_indices, ksubsets, lowest_bits};
use crate::error::{Error, Result};

use super::Design;

/// Bitmask families above this size are not supported by the search state.
pub const MAX_BLOCKS: usize = 64;
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// `true` iff `a ≺ b`.
pub fn lex_precedes(a: u32, b: u32) -> bool {
    let d = a ^ b;
    d != 0 && a & (d & d.wrapping_neg()) != 0
}

fn lex_cmp(a: u32, b: u32) -> std::cmp::Ordering {
    if a == b {
        std::cmp::Ordering::Equal
    } else if lex_precedes(a, b) {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Greater
    }
}

/// Compares two ≺-sorted families of equal size.
pub fn family_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| lex_cmp(x, y))
        .find(|o| o.is_ne())
        .unwrap_or(a.len().cmp(&b.len()))
}

pub fn lex_sorted(blocks: &[u32]) -> Vec<u32> {
    let mut v = blocks.to_vec();
    v.sort_by(|&a, &b| lex_cmp(a, b));
    v
}

/// Atoms `(L, R)`: the permutation maps `L` onto `R`, otherwise free.
type Atoms = Vec<(u32, u32)>;

fn min_image(b: u32, atoms: &Atoms) -> u32 {
    atoms
        .iter()
        .map(|&(l, r)| lowest_bits(r, (l & b).count_ones()))
        .fold(0, |acc, x| acc | x)
}

fn impose(b: u32, c: u32, atoms: &Atoms) -> Atoms {
    let mut out = Vec::with_capacity(atoms.len() + 1);
    for &(l, r) in atoms {
        let (li, ri) = (l & b, r & c);
        debug_assert_eq!(li.count_ones(), ri.count_ones());
        if li != 0 {
            out.push((li, ri));
        }
        if l & !b != 0 {
            out.push((l & !b, r & !c));
        }
    }
    out
}

fn atoms_to_perm(m: usize, atoms: &Atoms) -> Vec<u8> {
    let mut perm = vec![0u8; m];
    for &(l, r) in atoms {
        for (p, q) in bit_indices(l).zip(bit_indices(r)) {
            perm[p] = q as u8;
        }
    }
    perm
}

enum Mode<'a> {
    /// Stop at the first image smaller than the given sorted list.
    Beat(&'a [u32]),
    Minimize,
}

struct Canon<'a> {
    m: usize,
    blocks: &'a [u32],
    mode: Mode<'a>,
    best: Vec<u32>,
    best_perm: Option<Vec<u8>>,
    smaller: Option<Vec<u8>>,
}

impl Canon<'_> {
    fn run(&mut self, j: usize, used: u64, atoms: Atoms) {
        let n = self.blocks.len();
        if j == n {
            if self.best_perm.is_none() {
                self.best_perm = Some(atoms_to_perm(self.m, &atoms));
            }
            return;
        }
        let mut mu: Option<u32> = None;
        let mut images = Vec::with_capacity(n);
        for (i, &b) in self.blocks.iter().enumerate() {
            if used >> i & 1 == 1 {
                continue;
            }
            let img = min_image(b, &atoms);
            images.push((i, img));
            if mu.map_or(true, |x| lex_precedes(img, x)) {
                mu = Some(img);
            }
        }
        let mu = mu.expect("j < n leaves an unused block");
        match self.mode {
            Mode::Beat(target) => {
                if lex_precedes(mu, target[j]) {
                    let (i, _) = *images.iter().find(|&&(_, img)| img == mu).expect("present");
                    self.smaller = Some(atoms_to_perm(self.m, &impose(self.blocks[i], mu, &atoms)));
                    return;
                }
                if mu != target[j] {
                    return;
                }
            }
            Mode::Minimize => {
                if j < self.best.len() {
                    if lex_precedes(self.best[j], mu) {
                        return;
                    }
                    if mu != self.best[j] {
                        self.best.truncate(j);
                        self.best_perm = None;
                    }
                }
                if j == self.best.len() {
                    self.best.push(mu);
                }
            }
        }
        for &(i, img) in &images {
            if img != mu {
                continue;
            }
            self.run(j + 1, used | 1 << i, impose(self.blocks[i], mu, &atoms));
            if self.smaller.is_some() {
                return;
            }
        }
    }
}

fn root_atoms(m: usize) -> Atoms {
    let all = crate::bits::full_mask(m);
    vec![(all, all)]
}

/// `None` if `blocks` is the least member of its orbit under `S_m`,
/// otherwise a permutation producing a smaller family.
pub fn is_canonical(m: usize, blocks: &[u32]) -> Option<Vec<u8>> {
    let sorted = lex_sorted(blocks);
    let mut c = Canon {
        m,
        blocks: &sorted,
        mode: Mode::Beat(&sorted),
        best: Vec::new(),
        best_perm: None,
        smaller: None,
    };
    c.run(0, 0, root_atoms(m));
    c.smaller
}

/// The least image of a family together with a permutation reaching it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// ≺-sorted.
    pub blocks: Vec<u32>,
    pub perm: Vec<u8>,
}

pub fn canonical_form(m: usize, blocks: &[u32]) -> CanonicalForm {
    let sorted = lex_sorted(blocks);
    let mut c = Canon {
        m,
        blocks: &sorted,
        mode: Mode::Minimize,
        best: Vec::new(),
        best_perm: None,
        smaller: None,
    };
    c.run(0, 0, root_atoms(m));
    CanonicalForm {
        blocks: c.best,
        perm: c.best_perm.expect("some leaf attains the minimum"),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub nodes: u64,
    pub canonical_nodes: u64,
}

struct Orderly<'a> {
    m: usize,
    t: usize,
    b: usize,
    candidates: &'a [u32],
    /// `limit[i]` is `λ_i`, the cap on blocks through an `i`-subset.
    limit: Vec<u64>,
    /// Blocks through each subset, indexed by mask; only sizes `1..=t` used.
    count: Vec<u8>,
    tsubsets: Vec<u32>,
    family: Vec<u32>,
    found: Vec<Vec<u32>>,
    stats: EnumerationStats,
    budget: u64,
}

impl Orderly<'_> {
    fn subsets_upto_t(&self, block: u32) -> Vec<u32> {
        let pts: Vec<usize> = bit_indices(block).collect();
        let k = pts.len();
        (1..=self.t)
            .flat_map(|i| ksubsets(k, i))
            .map(|sel| bit_indices(sel).map(|j| 1u32 << pts[j]).sum())
            .collect()
    }

    fn fits(&self, subs: &[u32]) -> bool {
        subs.iter()
            .all(|&s| (self.count[s as usize] as u64) < self.limit[s.count_ones() as usize])
    }

    /// All `t`-subsets meeting `{0, .., q-1}` are already at `λ`.
    fn complete_below(&self, q: usize) -> bool {
        let low = (1u32 << q) - 1;
        self.tsubsets
            .iter()
            .filter(|&&s| s & low != 0)
            .all(|&s| self.count[s as usize] as u64 == self.limit[self.t])
    }

    fn search(&mut self, start: usize) -> Result<()> {
        let mut checked_q = usize::MAX;
        for idx in start..self.candidates.len() {
            if self.family.len() + (self.candidates.len() - idx) < self.b {
                break;
            }
            let block = self.candidates[idx];
            let q = block.trailing_zeros() as usize;
            if q != checked_q {
                if !self.complete_below(q) {
                    break;
                }
                checked_q = q;
            }
            let subs = self.subsets_upto_t(block);
            if !self.fits(&subs) {
                continue;
            }
            self.stats.nodes += 1;
            if self.stats.nodes > self.budget {
                return Err(Error::Budget {
                    budget: self.budget as usize,
                    what: "design enumeration nodes".into(),
                });
            }
            self.family.push(block);
            if is_canonical(self.m, &self.family).is_none() {
                self.stats.canonical_nodes += 1;
                for &s in &subs {
                    self.count[s as usize] += 1;
                }
                if self.family.len() == self.b {
                    self.found.push(self.family.clone());
                } else {
                    self.search(idx + 1)?;
                }
                for &s in &subs {
                    self.count[s as usize] -= 1;
                }
            }
            self.family.pop();
        }
        Ok(())
    }
}

/// Representatives of every isomorphism class of simple `t-(m,k,λ)`
/// designs, each in canonical form, sorted by their block lists.
pub fn enumerate_designs(t: usize, m: usize, k: usize, lambda: u64) -> Result<Vec<Design>> {
    Ok(enumerate_designs_with(t, m, k, lambda, DEFAULT_NODE_BUDGET)?.0)
}

pub fn enumerate_designs_with(
    t: usize,
    m: usize,
    k: usize,
    lambda: u64,
    node_budget: u64,
) -> Result<(Vec<Design>, EnumerationStats)> {
    if !(1..=k).contains(&t) || k > m || m > crate::vertex::MAX_LEN || lambda == 0 {
        return Err(Error::param(format!(
            "need 1 <= t <= k <= m <= {} and λ >= 1, got t={t} m={m} k={k} λ={lambda}",
            crate::vertex::MAX_LEN
        )));
    }
    let lam = crate::rational::int(lambda as i64);
    let mut limit = Vec::with_capacity(t + 1);
    for i in 0..=t {
        let li = super::lambda_i(t, m, k, &lam, i)?;
        if !crate::rational::is_integral(&li) {
            return Ok((Vec::new(), EnumerationStats::default()));
        }
        limit.push(li.to_integer().try_into().map_err(|_| Error::param("λ_i too large"))?);
    }
    let b = limit[0] as usize;
    if b > MAX_BLOCKS {
        return Err(Error::Budget {
            budget: MAX_BLOCKS,
            what: "blocks per design".into(),
        });
    }
    if limit.iter().any(|&l| l > u8::MAX as u64) {
        return Err(Error::param("subset counts exceed the counter width"));
    }
    let candidates = lex_sorted(&ksubsets(m, k).collect::<Vec<_>>());
    let mut o = Orderly {
        m,
        t,
        b,
        candidates: &candidates,
        limit,
        count: vec![0u8; 1usize << m],
        tsubsets: ksubsets(m, t).collect(),
        family: Vec::new(),
        found: Vec::new(),
        stats: EnumerationStats::default(),
        budget: node_budget,
    };
    o.search(0)?;
    let mut designs = o
        .found
        .iter()
        .map(|blocks| Design::new(m, blocks.iter().copied(), t))
        .collect::<Result<Vec<_>>>()?;
    designs.sort_by(|a, b| family_cmp(&lex_sorted(a.blocks()), &lex_sorted(b.blocks())));
    Ok((designs, o.stats))
}
