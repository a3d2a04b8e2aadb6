use crate::code::Code;
use crate::error::{Error, Result};

use super::automorphism::GraphAutomorphism;
use super::group::GroupHandle;
use super::search::{set_system_isomorphism, setwise_stabilizer_search};

/// `{σ ∈ S_m : S^σ = S}` for a family of subsets given as bitmasks.
/// The order comes from the basic orbit lengths of the backtrack; closure
/// recomputes it independently.
pub fn setwise_stabilizer_perms(m: usize, family: &[u32]) -> Result<(GroupHandle, u128)> {
    if family.is_empty() {
        return Err(Error::param("setwise stabilizer of an empty family"));
    }
    let mut fam = family.to_vec();
    fam.sort_unstable();
    fam.dedup();
    let search = setwise_stabilizer_search(m, &fam);
    let gens = search
        .generators
        .iter()
        .map(|p| GraphAutomorphism::from_perm_u8(p))
        .collect();
    Ok((GroupHandle::new(m, gens)?, search.order()))
}

/// `Aut(C)` together with the pieces it was assembled from.
#[derive(Debug, Clone)]
pub struct CodeAutomorphisms {
    pub group: GroupHandle,
    /// Stabilizer of the base word, all pure permutations when the base is 0.
    pub base_stabilizer: GroupHandle,
    pub base_stabilizer_order: u128,
    /// The least codeword; the code is translated so that it becomes 0.
    pub base: u32,
    /// Orbit of the base word on the code.
    pub base_orbit: Vec<u32>,
    pub order: u128,
}

fn translate_family(code: &Code, t: u32) -> Vec<u32> {
    let mut v: Vec<u32> = code.masks().iter().map(|&w| w ^ t).collect();
    v.sort_unstable();
    v
}

/// Setwise stabilizer of `C` in `Aut(H(m,2))`.
///
/// With `C` translated to contain 0, the zero stabilizer is the permutation
/// group preserving the support family. Codewords are then tried in
/// ascending order for an element `σ · t_β` sending 0 to `β`; a failure
/// marks the whole orbit of `β` under the generators found so far.
pub fn code_automorphisms(code: &Code) -> Result<CodeAutomorphisms> {
    let m = code.len();
    let base = code.masks()[0];
    let shifted = code.translate(base);
    let family = shifted.masks();
    let (stab, stab_order) = setwise_stabilizer_perms(m, family)?;
    let mut gens: Vec<GraphAutomorphism> = stab.generators().to_vec();
    let mut failed: Vec<u32> = Vec::new();
    let orbit_of_zero = |gens: &[GraphAutomorphism]| {
        GroupHandle::new(m, gens.to_vec())
            .expect("degrees agree")
            .orbit_of(0)
    };
    let mut orbit = orbit_of_zero(&gens);
    for &beta in family {
        if orbit.binary_search(&beta).is_ok() || failed.binary_search(&beta).is_ok() {
            continue;
        }
        let target = translate_family(&shifted, beta);
        match set_system_isomorphism(m, family, &target) {
            Some(sigma) => {
                let x = GraphAutomorphism::from_perm_u8(&sigma)
                    .compose(&GraphAutomorphism::translation_by(m, beta));
                gens.push(x);
                orbit = orbit_of_zero(&gens);
            }
            None => {
                failed.extend(GroupHandle::new(m, gens.clone())?.orbit_of(beta));
                failed.sort_unstable();
                failed.dedup();
            }
        }
    }
    let tr = GraphAutomorphism::translation_by(m, base);
    let group = GroupHandle::new(m, gens)?.conjugate(&tr);
    let base_stabilizer = stab.conjugate(&tr);
    let base_orbit: Vec<u32> = {
        let mut v: Vec<u32> = orbit.iter().map(|&w| w ^ base).collect();
        v.sort_unstable();
        v
    };
    let order = stab_order * orbit.len() as u128;
    Ok(CodeAutomorphisms {
        group,
        base_stabilizer,
        base_stabilizer_order: stab_order,
        base,
        base_orbit,
        order,
    })
}

pub fn code_automorphism_group(code: &Code) -> Result<GroupHandle> {
    Ok(code_automorphisms(code)?.group)
}

/// Some `x ∈ Aut(H(m,2))` with `C1^x = C2`, or `None` when the exhaustive
/// search finds none. Distance distributions are compared first.
pub fn find_equivalence(c1: &Code, c2: &Code) -> Result<Option<GraphAutomorphism>> {
    if c1.len() != c2.len() {
        return Err(Error::param(format!(
            "codes of lengths {} and {} cannot be equivalent",
            c1.len(),
            c2.len()
        )));
    }
    if c1.size() != c2.size() || c1.distance_distribution() != c2.distance_distribution() {
        return Ok(None);
    }
    let m = c1.len();
    let gamma = c1.masks()[0];
    let left = translate_family(c1, gamma);
    for &beta in c2.masks() {
        let right = translate_family(c2, beta);
        if let Some(sigma) = set_system_isomorphism(m, &left, &right) {
            let x = GraphAutomorphism::translation_by(m, gamma)
                .compose(&GraphAutomorphism::from_perm_u8(&sigma))
                .compose(&GraphAutomorphism::translation_by(m, beta));
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// A coordinate permutation `σ` with `C1^σ = C2`, if any.
pub fn find_permutation_equivalence(c1: &Code, c2: &Code) -> Result<Option<GraphAutomorphism>> {
    if c1.len() != c2.len() {
        return Err(Error::param("codes of different lengths"));
    }
    Ok(set_system_isomorphism(c1.len(), c1.masks(), c2.masks())
        .map(|s| GraphAutomorphism::from_perm_u8(&s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts elements of `Aut(H(m,2))` preserving `code` by enumerating
    /// all `2^m · m!` of them.
    fn brute_force_order(code: &Code) -> usize {
        let m = code.len();
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..m {
            perms = perms
                .into_iter()
                .flat_map(|p| {
                    let free: Vec<usize> = (0..m).filter(|i| !p.contains(i)).collect();
                    free.into_iter().map(move |i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
        let mut count = 0;
        for p in &perms {
            for t in 0..(1u32 << m) {
                let x = GraphAutomorphism::new(m, t, p).unwrap();
                if code.masks().iter().all(|&w| code.contains_mask(x.apply_mask(w))) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn repetition_code_against_brute_force() {
        let code = Code::repetition(3).unwrap();
        let expected = brute_force_order(&code);
        let aut = code_automorphisms(&code).unwrap();
        assert_eq!(aut.order, expected as u128);
        let closed = aut.group.closure(10_000).unwrap();
        assert_eq!(closed.order(), Some(expected as u128));
    }

    #[test]
    fn irregular_code_against_brute_force() {
        let code = Code::from_masks(4, [0b0000, 0b0011, 0b0111, 0b1110]).unwrap();
        let expected = brute_force_order(&code) as u128;
        let aut = code_automorphisms(&code).unwrap();
        assert_eq!(aut.order, expected);
        assert_eq!(aut.group.closure(10_000).unwrap().order(), Some(expected));
        assert!(aut.group.moves_code(&code).is_none());
    }

    #[test]
    fn code_without_zero_is_handled() {
        let code = Code::from_masks(4, [0b0001, 0b1110, 0b0111]).unwrap();
        let expected = brute_force_order(&code) as u128;
        let aut = code_automorphisms(&code).unwrap();
        assert_eq!(aut.base, 0b0001);
        assert_eq!(aut.order, expected);
        assert!(aut.group.moves_code(&code).is_none());
        assert_eq!(aut.group.closure(10_000).unwrap().order(), Some(expected));
    }

    #[test]
    fn equivalence_witness_and_absence() {
        let c1 = Code::from_masks(4, [0b0000, 0b0011, 0b0111]).unwrap();
        let x = GraphAutomorphism::new(4, 0b1010, &[2, 0, 3, 1]).unwrap();
        let c2 = Code::from_masks(4, c1.masks().iter().map(|&w| x.apply_mask(w))).unwrap();
        let found = find_equivalence(&c1, &c2).unwrap().unwrap();
        let img = Code::from_masks(4, c1.masks().iter().map(|&w| found.apply_mask(w))).unwrap();
        assert_eq!(img, c2);
        let c3 = Code::from_masks(4, [0b0000, 0b0011, 0b1100]).unwrap();
        assert_eq!(find_equivalence(&c1, &c3).unwrap(), None);
        assert!(find_equivalence(&c1, &Code::repetition(5).unwrap()).is_err());
    }
}
