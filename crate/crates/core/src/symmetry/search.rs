//! Individualization-refinement backtracking on set systems over `m`
//! points: isomorphisms between two families of subsets and generators of
//! the setwise stabilizer of one family.
//!
//! Both sides are refined jointly, so a label means the same thing on the
//! left and on the right and any mismatch in class sizes prunes the branch.

use std::collections::BTreeMap;

use crate::bits::{bit_indices, permute_mask};

const FRESH: u32 = u32::MAX;

struct Side<'a> {
    blocks: &'a [u32],
    incidence: Vec<Vec<usize>>,
}

impl<'a> Side<'a> {
    fn new(m: usize, blocks: &'a [u32]) -> Self {
        let mut incidence = vec![Vec::new(); m];
        for (b, &mask) in blocks.iter().enumerate() {
            for p in bit_indices(mask) {
                incidence[p].push(b);
            }
        }
        Side { blocks, incidence }
    }

    fn block_signatures(&self, labels: &[u32]) -> Vec<Vec<u32>> {
        self.blocks
            .iter()
            .map(|&b| {
                let mut v: Vec<u32> = bit_indices(b).map(|p| labels[p]).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }
}

pub(crate) struct Matcher<'a> {
    m: usize,
    left: Side<'a>,
    right: Side<'a>,
    right_sorted: Vec<u32>,
}

fn distinct(labels: &[u32]) -> usize {
    let mut v = labels.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn same_multiset(a: &[u32], b: &[u32]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_unstable();
    y.sort_unstable();
    x == y
}

impl<'a> Matcher<'a> {
    pub(crate) fn new(m: usize, left: &'a [u32], right: &'a [u32]) -> Self {
        let mut right_sorted = right.to_vec();
        right_sorted.sort_unstable();
        Matcher {
            m,
            left: Side::new(m, left),
            right: Side::new(m, right),
            right_sorted,
        }
    }

    /// Refines both colourings to a common fixpoint. Returns `false` as soon
    /// as the two sides stop looking alike.
    fn refine(&self, ll: &mut Vec<u32>, rl: &mut Vec<u32>) -> bool {
        if !same_multiset(ll, rl) {
            return false;
        }
        loop {
            let before = distinct(ll);
            let lsig = self.left.block_signatures(ll);
            let rsig = self.right.block_signatures(rl);
            let mut dict: BTreeMap<&Vec<u32>, u32> = BTreeMap::new();
            for s in lsig.iter().chain(rsig.iter()) {
                dict.insert(s, 0);
            }
            for (i, v) in dict.values_mut().enumerate() {
                *v = i as u32;
            }
            let lb: Vec<u32> = lsig.iter().map(|s| dict[s]).collect();
            let rb: Vec<u32> = rsig.iter().map(|s| dict[s]).collect();
            if !same_multiset(&lb, &rb) {
                return false;
            }
            let point_sig = |side: &Side, labels: &[u32], ids: &[u32], p: usize| {
                let mut v: Vec<u32> = side.incidence[p].iter().map(|&b| ids[b]).collect();
                v.sort_unstable();
                (labels[p], v)
            };
            let lp: Vec<(u32, Vec<u32>)> =
                (0..self.m).map(|p| point_sig(&self.left, ll, &lb, p)).collect();
            let rp: Vec<(u32, Vec<u32>)> =
                (0..self.m).map(|p| point_sig(&self.right, rl, &rb, p)).collect();
            let mut pdict: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
            for s in lp.iter().chain(rp.iter()) {
                pdict.insert(s, 0);
            }
            for (i, v) in pdict.values_mut().enumerate() {
                *v = i as u32;
            }
            let nl: Vec<u32> = lp.iter().map(|s| pdict[s]).collect();
            let nr: Vec<u32> = rp.iter().map(|s| pdict[s]).collect();
            if !same_multiset(&nl, &nr) {
                return false;
            }
            *ll = nl;
            *rl = nr;
            if distinct(ll) == before {
                return true;
            }
        }
    }

    fn maps_blocks(&self, perm: &[u8]) -> bool {
        self.left
            .blocks
            .iter()
            .all(|&b| self.right_sorted.binary_search(&permute_mask(b, perm)).is_ok())
    }

    /// Some bijection `perm` (left point `p` goes to `perm[p]`) carrying the
    /// left family onto the right one and honouring `prefix`, or `None` once
    /// the search tree is exhausted.
    pub(crate) fn find(&self, prefix: &[(usize, usize)]) -> Option<Vec<u8>> {
        if self.left.blocks.len() != self.right.blocks.len() {
            return None;
        }
        let mut ll = vec![0u32; self.m];
        let mut rl = vec![0u32; self.m];
        if !self.refine(&mut ll, &mut rl) {
            return None;
        }
        for &(p, q) in prefix {
            if ll[p] != rl[q] {
                return None;
            }
            ll[p] = FRESH;
            rl[q] = FRESH;
            if !self.refine(&mut ll, &mut rl) {
                return None;
            }
        }
        self.descend(ll, rl)
    }

    fn descend(&self, ll: Vec<u32>, rl: Vec<u32>) -> Option<Vec<u8>> {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for &l in &ll {
            *counts.entry(l).or_default() += 1;
        }
        let Some(p) = (0..self.m).find(|&p| counts[&ll[p]] > 1) else {
            let mut perm = vec![0u8; self.m];
            for p in 0..self.m {
                perm[p] = rl.iter().position(|&l| l == ll[p])? as u8;
            }
            return self.maps_blocks(&perm).then_some(perm);
        };
        for q in (0..self.m).filter(|&q| rl[q] == ll[p]) {
            let mut l2 = ll.clone();
            let mut r2 = rl.clone();
            l2[p] = FRESH;
            r2[q] = FRESH;
            if self.refine(&mut l2, &mut r2) {
                if let Some(perm) = self.descend(l2, r2) {
                    return Some(perm);
                }
            }
        }
        None
    }
}

/// A permutation of the `m` points carrying `left` onto `right`, if any.
pub fn set_system_isomorphism(m: usize, left: &[u32], right: &[u32]) -> Option<Vec<u8>> {
    Matcher::new(m, left, right).find(&[])
}

/// Generators of `{σ : S^σ = S}` along the base `0, 1, .., m-1`, with the
/// basic orbit lengths whose product is the group order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerSearch {
    pub generators: Vec<Vec<u8>>,
    pub orbit_lengths: Vec<usize>,
}

impl StabilizerSearch {
    pub fn order(&self) -> u128 {
        self.orbit_lengths.iter().map(|&l| l as u128).product()
    }
}

fn orbit_under(start: usize, gens: &[Vec<u8>], m: usize) -> Vec<bool> {
    let mut seen = vec![false; m];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g[p] as usize;
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen
}

/// Walks the base from the deepest point up: at level `i` every generator
/// found so far fixes `0..i`, and each point `γ` outside the current orbit
/// of `i` is either reached by a new generator or marked unreachable
/// together with its whole orbit.
pub fn setwise_stabilizer_search(m: usize, family: &[u32]) -> StabilizerSearch {
    let matcher = Matcher::new(m, family, family);
    let mut gens: Vec<Vec<u8>> = Vec::new();
    let mut orbit_lengths = vec![1usize; m];
    for i in (0..m).rev() {
        let prefix: Vec<(usize, usize)> = (0..i).map(|j| (j, j)).collect();
        let mut ll = vec![0u32; m];
        let mut rl = vec![0u32; m];
        matcher.refine(&mut ll, &mut rl);
        for &(p, q) in &prefix {
            ll[p] = FRESH;
            rl[q] = FRESH;
            matcher.refine(&mut ll, &mut rl);
        }
        let mut orbit = orbit_under(i, &gens, m);
        let mut failed = vec![false; m];
        for gamma in (i + 1)..m {
            if ll[gamma] != ll[i] || orbit[gamma] || failed[gamma] {
                continue;
            }
            let mut pre = prefix.clone();
            pre.push((i, gamma));
            match matcher.find(&pre) {
                Some(perm) => {
                    gens.push(perm);
                    orbit = orbit_under(i, &gens, m);
                }
                None => {
                    for (q, hit) in orbit_under(gamma, &gens, m).into_iter().enumerate() {
                        failed[q] |= hit;
                    }
                }
            }
        }
        orbit_lengths[i] = orbit.iter().filter(|&&b| b).count();
    }
    StabilizerSearch {
        generators: gens,
        orbit_lengths,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::ksubsets;

    fn fano() -> Vec<u32> {
        let lines: [[usize; 3]; 7] = [
            [0, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ];
        let mut v: Vec<u32> = lines.iter().map(|l| l.iter().map(|&p| 1u32 << p).sum()).collect();
        v.sort();
        v
    }

    #[test]
    fn singletons_give_symmetric_group() {
        let fam: Vec<u32> = (0..6).map(|i| 1 << i).collect();
        assert_eq!(setwise_stabilizer_search(6, &fam).order(), 720);
    }

    #[test]
    fn fano_plane_has_168_automorphisms() {
        // brute force over S_7
        let fam = fano();
        let mut count = 0;
        let mut perm: Vec<u8> = (0..7).collect();
        permutohedron_count(&mut perm, 0, &fam, &mut count);
        assert_eq!(count, 168);
        assert_eq!(setwise_stabilizer_search(7, &fam).order(), 168);
    }

    fn permutohedron_count(perm: &mut Vec<u8>, k: usize, fam: &[u32], count: &mut usize) {
        if k == perm.len() {
            let mut img: Vec<u32> = fam.iter().map(|&b| permute_mask(b, perm)).collect();
            img.sort();
            if img == fam {
                *count += 1;
            }
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permutohedron_count(perm, k + 1, fam, count);
            perm.swap(k, i);
        }
    }

    #[test]
    fn isomorphism_found_and_verified() {
        let fam = fano();
        let sigma = [3u8, 6, 0, 2, 5, 1, 4];
        let mut img: Vec<u32> = fam.iter().map(|&b| permute_mask(b, &sigma)).collect();
        img.sort();
        let found = set_system_isomorphism(7, &fam, &img).unwrap();
        let mut check: Vec<u32> = fam.iter().map(|&b| permute_mask(b, &found)).collect();
        check.sort();
        assert_eq!(check, img);
    }

    #[test]
    fn non_isomorphic_systems_rejected() {
        // seven triples through a common point are not a Fano plane
        let star: Vec<u32> = ksubsets(7, 3).filter(|s| s & 1 == 1).take(7).collect();
        assert!(set_system_isomorphism(7, &fano(), &star).is_none());
        assert!(set_system_isomorphism(7, &fano(), &fano()[..6]).is_none());
    }
}
