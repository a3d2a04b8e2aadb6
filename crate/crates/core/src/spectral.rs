//! Krawtchouk polynomials, the MacWilliams transform of a distance
//! distribution, external distance, and the uniformly-packed test.
//!
//! Everything here is exact: a single negative transform entry is enough to
//! rule out a putative code, so no floating point is allowed anywhere.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bits::binomial;
use crate::code::{Code, DistanceDistribution};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::regularity::outer_rows;
use crate::vertex::MAX_LEN;

/// `K_k(x)` for all `0 <= k, x <= m`, stored as `values[k][x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrawtchoukTable {
    pub m: usize,
    pub values: Vec<Vec<i64>>,
}

impl KrawtchoukTable {
    pub fn new(m: usize) -> Result<Self> {
        if m > MAX_LEN {
            return Err(Error::param(format!("length {m} exceeds {MAX_LEN}")));
        }
        let values = (0..=m)
            .map(|k| (0..=m).map(|x| alternating_sum(m, k, x)).collect())
            .collect();
        Ok(KrawtchoukTable { m, values })
    }

    #[inline]
    pub fn get(&self, k: usize, x: usize) -> i64 {
        self.values[k][x]
    }
}

fn alternating_sum(m: usize, k: usize, x: usize) -> i64 {
    (0..=k)
        .map(|j| {
            let term = binomial(x as u64, j as u64) as i64
                * binomial((m - x) as u64, (k - j) as u64) as i64;
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// `K_k(x) = Σ_j (-1)^j C(x, j) C(m - x, k - j)`.
pub fn krawtchouk(m: usize, k: usize, x: usize) -> Result<i64> {
    if m > MAX_LEN || k > m || x > m {
        return Err(Error::param(format!(
            "Krawtchouk index out of range: m={m} k={k} x={x}"
        )));
    }
    Ok(alternating_sum(m, k, x))
}

/// The transform `a'_k = Σ_i a_i K_k(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacWilliamsVector {
    pub a_prime: Vec<Rational>,
}

impl MacWilliamsVector {
    pub fn nonzero_count(&self) -> usize {
        self.a_prime.iter().filter(|x| !x.is_zero()).count()
    }

    /// Indices with a strictly negative entry; empty for every real code.
    pub fn negative_indices(&self) -> Vec<usize> {
        self.a_prime
            .iter()
            .enumerate()
            .filter(|(_, x)| **x < Rational::zero())
            .map(|(k, _)| k)
            .collect()
    }
}

pub fn macwilliams_transform(dist: &DistanceDistribution) -> Result<MacWilliamsVector> {
    if dist.a.is_empty() {
        return Err(Error::param("empty distance distribution"));
    }
    let m = dist.len();
    let table = KrawtchoukTable::new(m)?;
    let a_prime = (0..=m)
        .map(|k| {
            dist.a.iter().enumerate().fold(Rational::zero(), |acc, (i, a)| {
                acc + a * Rational::from_integer(BigInt::from(table.get(k, i)))
            })
        })
        .collect();
    Ok(MacWilliamsVector { a_prime })
}

/// Number of nonzero transform entries minus one.
pub fn external_distance(code: &Code) -> usize {
    let t = macwilliams_transform(&code.distance_distribution())
        .expect("a code always yields a nonempty distribution");
    t.nonzero_count() - 1
}

/// Result of looking for `λ_0..λ_ρ` with `Σ_k λ_k f_k(ν) = 1` for every
/// vertex `ν`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingSolution {
    pub covering_radius: usize,
    /// Distinct `(f_0(ν), .., f_ρ(ν))` vectors over all vertices.
    pub distinct_rows: Vec<Vec<u32>>,
    pub lambdas: Option<Vec<Rational>>,
    pub satisfied: bool,
}

/// Wide-sense uniformly-packed test. The distinct truncated outer
/// distribution rows form an exact linear system; any solution is then
/// re-checked against every one of the `2^m` vertices.
pub fn certify_uniformly_packed(code: &Code) -> PackingSolution {
    let rho = code.covering_radius();
    let rows = outer_rows(code);
    let distinct: BTreeSet<Vec<u32>> = rows
        .iter()
        .map(|r| r[..=rho].iter().map(|&x| x as u32).collect())
        .collect();
    let distinct: Vec<Vec<u32>> = distinct.into_iter().collect();
    let system: Vec<Vec<Rational>> = distinct
        .iter()
        .map(|r| r.iter().map(|&x| rational::int(x as i64)).collect())
        .collect();
    let lambdas = rational::solve_all_ones(&system, rho + 1);
    let satisfied = match &lambdas {
        None => false,
        Some(l) => rows.iter().all(|r| {
            let s = l
                .iter()
                .zip(r.iter())
                .fold(Rational::zero(), |acc, (lam, &f)| {
                    acc + lam * rational::int(f as i64)
                });
            s.is_one()
        }),
    };
    PackingSolution {
        covering_radius: rho,
        distinct_rows: distinct,
        lambdas,
        satisfied,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn krawtchouk_small_values() {
        for x in 0..=11 {
            assert_eq!(krawtchouk(11, 0, x).unwrap(), 1);
        }
        assert_eq!(krawtchouk(11, 2, 0).unwrap(), 55);
        assert_eq!(krawtchouk(11, 2, 5).unwrap(), -5);
        assert_eq!(krawtchouk(11, 2, 6).unwrap(), -5);
        assert!(krawtchouk(11, 12, 0).is_err());
        assert!(krawtchouk(11, 2, 12).is_err());
    }

    #[test]
    fn hypothetical_23_word_distribution() {
        let mut a = vec![0i64; 12];
        a[0] = 1;
        a[5] = 11;
        a[6] = 11;
        let t = macwilliams_transform(&DistanceDistribution::from_integers(&a)).unwrap();
        assert_eq!(t.a_prime[2], int(-55));
        assert_eq!(t.a_prime[0], int(23));
        assert_eq!(t.negative_indices(), vec![2, 10]);
    }

    #[test]
    fn single_word_transform_is_binomial_row() {
        let mut a = vec![0i64; 10];
        a[0] = 1;
        let t = macwilliams_transform(&DistanceDistribution::from_integers(&a)).unwrap();
        for k in 0..=9 {
            assert_eq!(t.a_prime[k], int(binomial(9, k as u64) as i64));
        }
    }

    #[test]
    fn universe_has_external_distance_zero() {
        assert_eq!(external_distance(&Code::universe(5).unwrap()), 0);
    }

    /// Brute force over the 16 vertices of `H(4,2)` for the code `{0000}`:
    /// `f_k(ν) = [wt(ν) = k]`, so the only candidate is `λ = (1,1,1,1,1)`.
    #[test]
    fn zero_word_in_h4_against_brute_force() {
        let code = Code::from_masks(4, [0]).unwrap();
        let sol = certify_uniformly_packed(&code);
        assert_eq!(sol.covering_radius, 4);
        let mut oracle_ok = true;
        for v in 0u32..16 {
            let w = v.count_ones() as usize;
            let s: i64 = (0..=4).map(|k| if k == w { 1 } else { 0 }).sum();
            oracle_ok &= s == 1;
        }
        assert!(oracle_ok);
        assert!(sol.satisfied);
        assert_eq!(sol.lambdas.unwrap(), vec![int(1); 5]);
    }

    #[test]
    fn non_packed_code_is_reported_unsatisfied() {
        // {000, 011}: ρ = 2, and 100 and 010 give rows (0,1,0) and (0,2,0).
        let code = Code::from_masks(3, [0b000, 0b110]).unwrap();
        let sol = certify_uniformly_packed(&code);
        assert_eq!(sol.covering_radius, 2);
        assert!(sol.distinct_rows.contains(&vec![0, 1, 0]));
        assert!(sol.distinct_rows.contains(&vec![0, 2, 0]));
        assert!(!sol.satisfied);
        assert!(sol.lambdas.is_none());
    }
}
