//! Complete regularity from the outer distribution, and complete
//! transitivity from group orbits.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::certificate::{word_strings, Certificate};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::symmetry::{orbit_sizes_divide, GraphAutomorphism, GroupHandle};
use crate::vertex::raw_dist;

/// `f_k(ν) = |Γ_k(ν) ∩ C|` for every vertex `ν` (indexed by bitmask) and
/// every `0 <= k <= m`.
pub fn outer_rows(code: &Code) -> Vec<Vec<u16>> {
    let m = code.len();
    (0..1u32 << m)
        .into_par_iter()
        .map(|v| {
            let mut row = vec![0u16; m + 1];
            for &w in code.masks() {
                row[raw_dist(v, w)] += 1;
            }
            row
        })
        .collect()
}

/// Two vertices of one cell whose rows differ at radius `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub cell: usize,
    pub first: u32,
    pub second: u32,
    pub radius: usize,
    pub first_count: u16,
    pub second_count: u16,
}

/// Outer distribution rows grouped by distance-partition cell.
#[derive(Debug, Clone)]
pub struct OuterDistribution {
    pub len: usize,
    pub rows: Vec<Vec<u16>>,
    pub labels: Vec<u8>,
    /// `cell_rows[i]` is the row shared by all of `C_i`, or `None` when the
    /// rows differ somewhere in that cell.
    pub cell_rows: Vec<Option<Vec<u16>>>,
    /// First vertex, in ascending bitmask order, whose row differs from the
    /// row of the least vertex in its cell.
    pub counterexample: Option<Counterexample>,
}

pub fn outer_distribution(code: &Code) -> OuterDistribution {
    let rows = outer_rows(code);
    let labels = code.distance_labels();
    let rho = code.covering_radius();
    let mut reference: Vec<Option<u32>> = vec![None; rho + 1];
    let mut cell_ok = vec![true; rho + 1];
    let mut counterexample = None;
    for v in 0..rows.len() as u32 {
        let i = labels[v as usize] as usize;
        match reference[i] {
            None => reference[i] = Some(v),
            Some(r) => {
                let (a, b) = (&rows[r as usize], &rows[v as usize]);
                if a != b {
                    cell_ok[i] = false;
                    if counterexample.is_none() {
                        let k = (0..a.len()).find(|&k| a[k] != b[k]).expect("rows differ");
                        counterexample = Some(Counterexample {
                            cell: i,
                            first: r,
                            second: v,
                            radius: k,
                            first_count: a[k],
                            second_count: b[k],
                        });
                    }
                }
            }
        }
    }
    let cell_rows = (0..=rho)
        .map(|i| {
            let r = reference[i].expect("every cell up to ρ is nonempty");
            cell_ok[i].then(|| rows[r as usize].clone())
        })
        .collect();
    OuterDistribution {
        len: code.len(),
        rows,
        labels,
        cell_rows,
        counterexample,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityCertificate {
    pub completely_regular: bool,
    pub covering_radius: usize,
    pub cell_sizes: Vec<usize>,
    /// `(ρ+1) × (m+1)`: entry `[i][k]` is `|Γ_k(γ) ∩ C|` for any `γ ∈ C_i`.
    pub intersection_table: Option<Vec<Vec<u16>>>,
    pub counterexample: Option<Counterexample>,
}

impl RegularityCertificate {
    pub fn to_certificate(&self, code: &Code, anchor: &str) -> Certificate {
        let witness = json!({
            "length": code.len(),
            "size": code.size(),
            "words": word_strings(code.len(), code.masks()),
            "covering_radius": self.covering_radius,
            "cell_sizes": self.cell_sizes,
            "intersection_table": self.intersection_table,
            "counterexample": self.counterexample.as_ref().map(|c| json!({
                "cell": c.cell,
                "first": word_strings(code.len(), &[c.first])[0],
                "second": word_strings(code.len(), &[c.second])[0],
                "radius": c.radius,
                "counts": [c.first_count, c.second_count],
            })),
        });
        let claim = if self.completely_regular {
            format!(
                "the code is completely regular with covering radius {}",
                self.covering_radius
            )
        } else {
            "the code is not completely regular".to_string()
        };
        Certificate::new("completely-regular", anchor, claim, witness, self.completely_regular)
    }
}

/// Exhaustive check over all `2^m` vertices: the rows of the outer
/// distribution must be constant on every cell of the distance partition.
pub fn certify_completely_regular(code: &Code) -> RegularityCertificate {
    let od = outer_distribution(code);
    let regular = od.counterexample.is_none();
    RegularityCertificate {
        completely_regular: regular,
        covering_radius: od.cell_rows.len() - 1,
        cell_sizes: crate::code::cell_sizes(&od.labels),
        intersection_table: regular
            .then(|| od.cell_rows.iter().map(|r| r.clone().expect("regular")).collect()),
        counterexample: od.counterexample,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub completely_transitive: bool,
    pub covering_radius: usize,
    pub cell_sizes: Vec<usize>,
    /// `(least vertex, size, cell)` for each orbit on all vertices.
    pub orbits: Vec<(u32, usize, usize)>,
    pub group_order: Option<u128>,
    pub orbit_sizes_divide_order: Option<bool>,
}

/// Orbits of `G` on all vertices must coincide with the cells `C_i`.
pub fn completely_transitive_report(code: &Code, group: &GroupHandle) -> Result<TransitivityReport> {
    if group.degree() != code.len() {
        return Err(Error::param("group degree differs from code length"));
    }
    if let Some((g, w, img)) = group.moves_code(code) {
        return Err(Error::Precondition(format!(
            "generator {} = {} maps codeword {} to non-codeword {}",
            g,
            group.generators()[g],
            word_strings(code.len(), &[w])[0],
            word_strings(code.len(), &[img])[0]
        )));
    }
    let labels = code.distance_labels();
    let cell_sizes = crate::code::cell_sizes(&labels);
    let orbits = group.vertex_orbits();
    let mut summary = Vec::with_capacity(orbits.len());
    let mut mixed = false;
    for o in &orbits {
        let cell = labels[o[0] as usize] as usize;
        mixed |= o.iter().any(|&v| labels[v as usize] as usize != cell);
        summary.push((o[0], o.len(), cell));
    }
    let transitive = !mixed && orbits.len() == cell_sizes.len();
    let order = group.order();
    Ok(TransitivityReport {
        completely_transitive: transitive,
        covering_radius: cell_sizes.len() - 1,
        cell_sizes,
        orbits: summary,
        group_order: order,
        orbit_sizes_divide_order: order.map(|n| orbit_sizes_divide(n, &orbits)),
    })
}

pub fn certify_completely_transitive(code: &Code, group: &GroupHandle, anchor: &str) -> Result<Certificate> {
    let r = completely_transitive_report(code, group)?;
    let m = code.len();
    let witness = json!({
        "length": m,
        "words": word_strings(m, code.masks()),
        "generators": group.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "group_order": r.group_order.map(|n| n.to_string()),
        "cell_sizes": r.cell_sizes,
        "orbits": r.orbits.iter().map(|(rep, size, cell)| json!({
            "representative": word_strings(m, &[*rep])[0],
            "size": size,
            "cell": cell,
        })).collect::<Vec<_>>(),
        "orbit_sizes_divide_order": r.orbit_sizes_divide_order,
    });
    let ok = r.completely_transitive && r.orbit_sizes_divide_order != Some(false);
    let claim = if ok {
        format!(
            "each of the {} cells of the distance partition is a single orbit",
            r.cell_sizes.len()
        )
    } else {
        format!(
            "{} orbits on vertices versus {} cells: not completely transitive",
            r.orbits.len(),
            r.cell_sizes.len()
        )
    };
    Ok(Certificate::new("completely-transitive", anchor, claim, witness, ok))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerTransitivity {
    pub cell: usize,
    pub alpha: u32,
    /// `Γ_i(α) ∩ C_i`.
    pub target: Vec<u32>,
    /// Orbits of `G_α` on the target, as `(least vertex, size)`.
    pub stabilizer_orbits: Vec<(u32, usize)>,
    /// Generators of `G_α`.
    pub stabilizer_generators: Vec<GraphAutomorphism>,
    pub certified: bool,
}

/// `G` transitive on `C` and `G_α` transitive on `Γ_i(α) ∩ C_i` give `G`
/// transitive on `C_i`: every `γ ∈ C_i` has some codeword at distance `i`.
pub fn stabilizer_transitivity(code: &Code, group: &GroupHandle, cell: usize) -> Result<StabilizerTransitivity> {
    let code_orbits = group.orbits_on(code.masks())?;
    if code_orbits.len() != 1 {
        return Err(Error::Precondition(format!(
            "group is not transitive on the code: orbit sizes {:?}",
            code_orbits.iter().map(Vec::len).collect::<Vec<_>>()
        )));
    }
    let labels = code.distance_labels();
    if cell >= labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0) {
        return Err(Error::param(format!("cell {cell} exceeds the covering radius")));
    }
    let alpha = code.masks()[0];
    let target: Vec<u32> = crate::bits::ksubsets(code.len(), cell)
        .map(|off| alpha ^ off)
        .filter(|&v| labels[v as usize] as usize == cell)
        .collect();
    let stab = group.vertex_stabilizer(alpha);
    let orbits = stab.orbits_on(&target)?;
    Ok(StabilizerTransitivity {
        cell,
        alpha,
        stabilizer_orbits: orbits.iter().map(|o| (o[0], o.len())).collect(),
        certified: orbits.len() == 1,
        stabilizer_generators: stab.generators().to_vec(),
        target,
    })
}

pub fn transitivity_by_stabilizer(
    code: &Code,
    group: &GroupHandle,
    cell: usize,
    anchor: &str,
) -> Result<Certificate> {
    let s = stabilizer_transitivity(code, group, cell)?;
    let m = code.len();
    let witness = json!({
        "cell": cell,
        "words": word_strings(m, code.masks()),
        "generators": group.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "alpha": word_strings(m, &[s.alpha])[0],
        "stabilizer_generators": s.stabilizer_generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "target_size": s.target.len(),
        "stabilizer_orbits": s.stabilizer_orbits.iter().map(|(r, n)| json!({
            "representative": word_strings(m, &[*r])[0],
            "size": n,
        })).collect::<Vec<_>>(),
        "code_orbit_size": code.size(),
    });
    let claim = if s.certified {
        format!("the stabilizer of a codeword is transitive on its distance-{cell} neighbours in C_{cell}, so the group is transitive on C_{cell}")
    } else {
        format!("the codeword stabilizer has {} orbits on the distance-{cell} neighbours in C_{cell}", s.stabilizer_orbits.len())
    };
    Ok(Certificate::new("stabilizer-transitivity", anchor, claim, witness, s.certified))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::code_automorphism_group;

    #[test]
    fn rows_sum_to_code_size() {
        let code = Code::from_masks(5, [0b00000, 0b00111, 0b11001]).unwrap();
        let rows = outer_rows(&code);
        assert_eq!(rows.len(), 32);
        assert!(rows.iter().all(|r| r.iter().map(|&x| x as usize).sum::<usize>() == 3));
        for &w in code.masks() {
            assert_eq!(rows[w as usize][0], 1);
        }
    }

    #[test]
    fn repetition_code_is_completely_regular_and_transitive() {
        let code = Code::repetition(5).unwrap();
        let cert = certify_completely_regular(&code);
        assert!(cert.completely_regular);
        assert_eq!(cert.covering_radius, 2);
        let table = cert.intersection_table.unwrap();
        assert_eq!(table[0], vec![1, 0, 0, 0, 0, 1]);
        assert_eq!(table[1], vec![0, 1, 0, 0, 1, 0]);
        let g = code_automorphism_group(&code).unwrap();
        assert!(completely_transitive_report(&code, &g).unwrap().completely_transitive);
        let tr = completely_transitive_report(&code, &GroupHandle::trivial(5)).unwrap();
        assert!(!tr.completely_transitive);
        assert_eq!(tr.orbits.len(), 32);
    }

    #[test]
    fn first_failing_vertex_is_reported() {
        // {000, 011}: C_1 = {100, 010, 001, 111, 101, 110}; 100 (mask 0b001)
        // sees both words at distances 1 and 3, 010 (mask 0b010) at 1 and 1.
        let code = Code::from_masks(3, [0b000, 0b110]).unwrap();
        let cert = certify_completely_regular(&code);
        assert!(!cert.completely_regular);
        let c = cert.counterexample.unwrap();
        assert_eq!((c.cell, c.first, c.second, c.radius), (1, 0b001, 0b010, 1));
        assert_eq!((c.first_count, c.second_count), (1, 2));
    }

    #[test]
    fn moving_generator_is_a_precondition_violation() {
        let code = Code::from_masks(3, [0b000, 0b110]).unwrap();
        let g = GroupHandle::new(
            3,
            vec![crate::symmetry::GraphAutomorphism::translation_by(3, 1)],
        )
        .unwrap();
        assert!(matches!(
            completely_transitive_report(&code, &g),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cell_zero_is_trivially_certified() {
        let code = Code::repetition(4).unwrap();
        let g = code_automorphism_group(&code).unwrap();
        let s = stabilizer_transitivity(&code, &g, 0).unwrap();
        assert!(s.certified);
        assert_eq!(s.target, vec![0]);
        let lonely = Code::from_masks(3, [0b000, 0b011, 0b111]).unwrap();
        let h = code_automorphism_group(&lonely).unwrap();
        assert!(matches!(
            stabilizer_transitivity(&lonely, &h, 0),
            Err(Error::Precondition(_))
        ));
    }
}
