use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::bits::{ksubsets, permute_mask};
use crate::code::Code;
use crate::error::{Error, Result};

use super::automorphism::GraphAutomorphism;

pub const DEFAULT_ELEMENT_BUDGET: usize = 1_000_000;

/// A subgroup of `Aut(H(m,2))` given by generators, optionally with its full
/// element list once [`GroupHandle::closure`] has run.
#[derive(Debug, Clone)]
pub struct GroupHandle {
    degree: usize,
    generators: Vec<GraphAutomorphism>,
    elements: Option<Arc<Vec<GraphAutomorphism>>>,
}

/// Orbits listed by least element, each orbit sorted ascending.
pub type Orbits = Vec<Vec<u32>>;

impl GroupHandle {
    pub fn new(degree: usize, generators: Vec<GraphAutomorphism>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::param(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        Ok(GroupHandle {
            degree,
            generators,
            elements: None,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        GroupHandle {
            degree,
            generators: Vec::new(),
            elements: None,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[GraphAutomorphism] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&[GraphAutomorphism]> {
        self.elements.as_deref().map(|v| v.as_slice())
    }

    pub fn order(&self) -> Option<u128> {
        self.elements.as_ref().map(|e| e.len() as u128)
    }

    pub fn is_closed(&self) -> bool {
        self.elements.is_some()
    }

    /// Enumerates the generated group with Dimino's coset algorithm.
    /// Generators already in the group when reached are dropped, so the
    /// returned handle carries an irredundant generating list.
    pub fn closure(&self, budget: usize) -> Result<GroupHandle> {
        let id = GraphAutomorphism::identity(self.degree);
        let mut elements = vec![id];
        let mut set: HashSet<GraphAutomorphism> = HashSet::from([id]);
        let mut kept: Vec<GraphAutomorphism> = Vec::new();
        for s in &self.generators {
            if set.contains(s) {
                continue;
            }
            kept.push(*s);
            let prev = elements.len();
            let mut reps = vec![*s];
            let mut r = 0;
            while r < reps.len() {
                let rep = reps[r];
                if !set.contains(&rep) {
                    for h in 0..prev {
                        let e = elements[h].compose(&rep);
                        set.insert(e);
                        elements.push(e);
                    }
                    if elements.len() > budget {
                        return Err(Error::Budget {
                            budget,
                            what: "group closure elements".into(),
                        });
                    }
                }
                for g in &kept {
                    let e = rep.compose(g);
                    if !set.contains(&e) {
                        reps.push(e);
                    }
                }
                r += 1;
            }
        }
        Ok(GroupHandle {
            degree: self.degree,
            generators: kept,
            elements: Some(Arc::new(elements)),
        })
    }

    /// Membership test against the enumerated closure.
    pub fn contains(&self, x: &GraphAutomorphism) -> Option<bool> {
        self.elements.as_ref().map(|e| e.contains(x))
    }

    fn bfs(&self, start: u32, seen: &mut impl FnMut(u32) -> bool) -> Vec<u32> {
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for g in &self.generators {
                let w = g.apply_mask(v);
                if seen(w) {
                    orbit.push(w);
                    queue.push_back(w);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn orbit_of(&self, v: u32) -> Vec<u32> {
        let mut seen = HashSet::from([v]);
        self.bfs(v, &mut |w| seen.insert(w))
    }

    /// Orbits on all `2^m` vertices.
    pub fn vertex_orbits(&self) -> Orbits {
        let n = 1usize << self.degree;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n as u32 {
            if seen[v as usize] {
                continue;
            }
            seen[v as usize] = true;
            out.push(self.bfs(v, &mut |w| !std::mem::replace(&mut seen[w as usize], true)));
        }
        out
    }

    /// Orbits on a vertex set that every generator maps into itself.
    pub fn orbits_on(&self, domain: &[u32]) -> Result<Orbits> {
        let inside: HashSet<u32> = domain.iter().copied().collect();
        let mut seen: HashSet<u32> = HashSet::new();
        let mut sorted = domain.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut out = Vec::new();
        for &v in &sorted {
            if !seen.insert(v) {
                continue;
            }
            let orbit = self.bfs(v, &mut |w| seen.insert(w));
            if let Some(&w) = orbit.iter().find(|w| !inside.contains(w)) {
                return Err(Error::Precondition(format!(
                    "domain is not invariant: {v:#x} reaches {w:#x}"
                )));
            }
            out.push(orbit);
        }
        Ok(out)
    }

    /// The image group under `gσ ↦ σ`.
    pub fn permutation_parts(&self) -> GroupHandle {
        let gens = self
            .generators
            .iter()
            .map(|g| GraphAutomorphism::from_perm_u8(g.perm()))
            .filter(|g| !g.is_identity())
            .collect();
        GroupHandle {
            degree: self.degree,
            generators: gens,
            elements: None,
        }
    }

    /// Orbits of the induced action on `k`-subsets of the coordinates, as
    /// bitmasks. Needs pure permutation generators.
    pub fn orbits_on_ksubsets(&self, k: usize) -> Result<Orbits> {
        if k > self.degree {
            return Err(Error::param(format!("k = {k} exceeds degree {}", self.degree)));
        }
        if let Some(g) = self.generators.iter().find(|g| !g.is_pure_permutation()) {
            return Err(Error::param(format!(
                "generator {g} has a nonzero translation"
            )));
        }
        let domain: Vec<u32> = ksubsets(self.degree, k).collect();
        self.orbits_on(&domain)
    }

    /// Largest `k` such that the coordinate action is transitive on ordered
    /// `k`-tuples of distinct coordinates.
    pub fn coordinate_transitivity_degree(&self) -> usize {
        let m = self.degree;
        let perms: Vec<&[u8]> = self.generators.iter().map(|g| g.perm()).collect();
        let mut k = 0;
        while k < m {
            let want: u128 = (0..=k).map(|j| (m - j) as u128).product();
            let start: Vec<u8> = (0..=k as u8).collect();
            let mut seen: HashSet<Vec<u8>> = HashSet::from([start.clone()]);
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for p in &perms {
                    let img: Vec<u8> = t.iter().map(|&i| p[i as usize]).collect();
                    if seen.insert(img.clone()) {
                        stack.push(img);
                    }
                }
            }
            if seen.len() as u128 != want {
                break;
            }
            k += 1;
        }
        k
    }

    fn schreier(&self, start: u32, image: impl Fn(&GraphAutomorphism, u32) -> u32) -> Vec<GraphAutomorphism> {
        let id = GraphAutomorphism::identity(self.degree);
        let mut transversal: HashMap<u32, GraphAutomorphism> = HashMap::from([(start, id)]);
        let mut order = vec![start];
        let mut i = 0;
        while i < order.len() {
            let b = order[i];
            let u = transversal[&b];
            for g in &self.generators {
                let c = image(g, b);
                if let std::collections::hash_map::Entry::Vacant(e) = transversal.entry(c) {
                    e.insert(u.compose(g));
                    order.push(c);
                }
            }
            i += 1;
        }
        let mut gens = Vec::new();
        let mut seen = HashSet::new();
        for &b in &order {
            let u = transversal[&b];
            for g in &self.generators {
                let c = image(g, b);
                let s = u.compose(g).compose(&transversal[&c].inverse());
                if !s.is_identity() && seen.insert(s) {
                    gens.push(s);
                }
            }
        }
        gens
    }

    /// Schreier generators of the stabilizer of vertex `v`.
    pub fn vertex_stabilizer(&self, v: u32) -> GroupHandle {
        GroupHandle {
            degree: self.degree,
            generators: self.schreier(v, |g, b| g.apply_mask(b)),
            elements: None,
        }
    }

    /// Schreier generators of the stabilizer of the 0-based coordinate `c`.
    pub fn coordinate_stabilizer(&self, c: usize) -> GroupHandle {
        GroupHandle {
            degree: self.degree,
            generators: self.schreier(c as u32, |g, b| g.image_of(b as usize) as u32),
            elements: None,
        }
    }

    /// Restricts every generator to the 0-based coordinates `coords`
    /// (reindexed in ascending order), keeping the flips on those
    /// coordinates. Elements acting trivially on `coords` become the identity.
    pub fn project(&self, coords: &[usize]) -> Result<GroupHandle> {
        let mut j = coords.to_vec();
        j.sort_unstable();
        j.dedup();
        if j.iter().any(|&c| c >= self.degree) || j.is_empty() {
            return Err(Error::param("projection coordinates out of range"));
        }
        let mask: u32 = j.iter().map(|&c| 1u32 << c).sum();
        let mut pos = vec![usize::MAX; self.degree];
        for (i, &c) in j.iter().enumerate() {
            pos[c] = i;
        }
        let mut gens = Vec::new();
        for g in &self.generators {
            if let Some(&c) = j.iter().find(|&&c| mask & (1 << g.image_of(c)) == 0) {
                return Err(Error::param(format!(
                    "generator {g} moves coordinate {} outside the projection set",
                    c + 1
                )));
            }
            let perm: Vec<usize> = j.iter().map(|&c| pos[g.image_of(c)]).collect();
            let t: u32 = j
                .iter()
                .enumerate()
                .map(|(i, &c)| ((g.translation() >> c) & 1) << i)
                .sum();
            let x = GraphAutomorphism::new(j.len(), t, &perm)?;
            if !x.is_identity() {
                gens.push(x);
            }
        }
        Ok(GroupHandle {
            degree: j.len(),
            generators: gens,
            elements: None,
        })
    }

    /// Generators conjugated by `x`, so the result acts on `C^x` as `self`
    /// acts on `C`.
    pub fn conjugate(&self, x: &GraphAutomorphism) -> GroupHandle {
        GroupHandle {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.conjugate_by(x)).collect(),
            elements: self
                .elements
                .as_ref()
                .map(|e| Arc::new(e.iter().map(|g| g.conjugate_by(x)).collect())),
        }
    }

    /// First generator and codeword it moves off the code, if any.
    pub fn moves_code(&self, code: &Code) -> Option<(usize, u32, u32)> {
        for (i, g) in self.generators.iter().enumerate() {
            for &w in code.masks() {
                let img = g.apply_mask(w);
                if !code.contains_mask(img) {
                    return Some((i, w, img));
                }
            }
        }
        None
    }

    /// Whether the enumerated closure maps injectively under the projection
    /// to `coords`. `None` if the closure is not available.
    pub fn projection_is_injective(&self, coords: &[usize]) -> Result<Option<bool>> {
        let Some(elements) = self.elements() else {
            return Ok(None);
        };
        let single = |g: &GraphAutomorphism| {
            GroupHandle::new(self.degree, vec![*g]).and_then(|h| h.project(coords))
        };
        let mut images = HashSet::new();
        for g in elements {
            let p = single(g)?;
            images.insert(p.generators.first().copied());
        }
        Ok(Some(images.len() == elements.len()))
    }
}

/// Checks orbit–stabilizer divisibility for a set of orbits.
pub fn orbit_sizes_divide(order: u128, orbits: &Orbits) -> bool {
    orbits.iter().all(|o| order % o.len() as u128 == 0)
}

/// Image of a subset mask under a pure coordinate permutation.
pub fn permute_subset(g: &GraphAutomorphism, mask: u32) -> u32 {
    permute_mask(mask, g.perm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transposition(m: usize, a: usize, b: usize) -> GraphAutomorphism {
        let mut p: Vec<usize> = (0..m).collect();
        p.swap(a, b);
        GraphAutomorphism::from_perm(&p).unwrap()
    }

    #[test]
    fn closure_of_nothing_is_trivial() {
        let g = GroupHandle::trivial(5).closure(10).unwrap();
        assert_eq!(g.order(), Some(1));
    }

    #[test]
    fn closure_of_transposition_has_order_two() {
        let g = GroupHandle::new(4, vec![transposition(4, 0, 1)]).unwrap();
        assert_eq!(g.closure(10).unwrap().order(), Some(2));
    }

    #[test]
    fn closure_of_full_hyperoctahedral_group() {
        // transposition, long cycle and one flip generate 2^4 * 4! = 384
        let cycle = GraphAutomorphism::from_perm(&[1, 2, 3, 0]).unwrap();
        let flip = GraphAutomorphism::translation_by(4, 1);
        let g = GroupHandle::new(4, vec![transposition(4, 0, 1), cycle, flip, cycle])
            .unwrap()
            .closure(1000)
            .unwrap();
        assert_eq!(g.order(), Some(384));
        assert_eq!(g.generators().len(), 3);
        let els = g.elements().unwrap();
        let set: HashSet<_> = els.iter().collect();
        for a in els.iter().take(40) {
            assert!(set.contains(&a.inverse()));
            for b in els.iter().take(40) {
                assert!(set.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn closure_budget_is_reported() {
        let cycle = GraphAutomorphism::from_perm(&[1, 2, 3, 4, 0]).unwrap();
        let g = GroupHandle::new(5, vec![transposition(5, 0, 1), cycle]).unwrap();
        assert!(matches!(g.closure(50), Err(Error::Budget { budget: 50, .. })));
    }

    #[test]
    fn trivial_group_orbits_are_singletons() {
        let orbits = GroupHandle::trivial(4).vertex_orbits();
        assert_eq!(orbits.len(), 16);
        assert!(orbits.iter().all(|o| o.len() == 1));
    }

    #[test]
    fn symmetric_group_on_ksubsets() {
        let cycle = GraphAutomorphism::from_perm(&[1, 2, 3, 4, 5, 0]).unwrap();
        let g = GroupHandle::new(6, vec![transposition(6, 0, 1), cycle]).unwrap();
        for k in 0..=6 {
            assert_eq!(g.orbits_on_ksubsets(k).unwrap().len(), 1);
        }
        assert_eq!(g.coordinate_transitivity_degree(), 6);
        let flip = GroupHandle::new(6, vec![GraphAutomorphism::translation_by(6, 3)]).unwrap();
        assert!(flip.orbits_on_ksubsets(2).is_err());
    }

    #[test]
    fn stabilizers_via_schreier() {
        let cycle = GraphAutomorphism::from_perm(&[1, 2, 3, 4, 0]).unwrap();
        let g = GroupHandle::new(5, vec![transposition(5, 0, 1), cycle]).unwrap();
        let s = g.coordinate_stabilizer(2).closure(1000).unwrap();
        assert_eq!(s.order(), Some(24));
        assert!(s.elements().unwrap().iter().all(|x| x.image_of(2) == 2));
        let v = g.vertex_stabilizer(0b00011).closure(1000).unwrap();
        assert_eq!(v.order(), Some(12));
    }

    #[test]
    fn projection_restricts_and_rejects() {
        let g = GroupHandle::new(4, vec![transposition(4, 1, 2)]).unwrap();
        let p = g.project(&[1, 2, 3]).unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.generators()[0].perm(), &[1, 0, 2]);
        assert!(g.project(&[0, 1]).is_err());
        let id = GroupHandle::trivial(4).project(&[1, 2, 3]).unwrap();
        assert!(id.generators().is_empty());
        // a flip of coordinate 0 is in the kernel of the projection
        let k = GroupHandle::new(4, vec![GraphAutomorphism::translation_by(4, 1)]).unwrap();
        assert!(k.project(&[1, 2, 3]).unwrap().generators().is_empty());
        let kc = k.closure(10).unwrap();
        assert_eq!(kc.projection_is_injective(&[1, 2, 3]).unwrap(), Some(false));
    }

    #[test]
    fn orbits_on_rejects_open_domain() {
        let g = GroupHandle::new(3, vec![GraphAutomorphism::translation_by(3, 1)]).unwrap();
        assert!(g.orbits_on(&[0]).is_err());
        assert_eq!(g.orbits_on(&[0, 1]).unwrap(), vec![vec![0, 1]]);
    }
}
