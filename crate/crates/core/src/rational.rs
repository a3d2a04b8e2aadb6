//! Exact rational arithmetic used wherever a sign or integrality decision is
//! part of a certificate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// `p` or `p/q` in lowest terms.
pub fn to_text(r: &Rational) -> String {
    r.to_string()
}

pub fn from_text(s: &str) -> Option<Rational> {
    s.trim().parse().ok()
}

pub fn texts(values: &[Rational]) -> Vec<String> {
    values.iter().map(to_text).collect()
}

/// Solves `rows · x = 1` exactly by Gauss-Jordan elimination. Returns one
/// solution (free variables set to zero) or `None` if the system is
/// inconsistent.
pub fn solve_all_ones(rows: &[Vec<Rational>], unknowns: usize) -> Option<Vec<Rational>> {
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.resize(unknowns, Rational::zero());
            row.push(Rational::one());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(p) = (rank..aug.len()).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(rank, p);
        let lead = aug[rank][col].clone();
        for v in aug[rank].iter_mut() {
            *v = &*v / &lead;
        }
        for r in 0..aug.len() {
            if r != rank && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in 0..=unknowns {
                    let delta = &factor * &aug[rank][c];
                    aug[r][c] = &aug[r][c] - delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if aug[rank..].iter().any(|r| !r[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = aug[r][unknowns].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        assert_eq!(to_text(&ratio(-110, 2)), "-55");
        assert_eq!(to_text(&ratio(11, 2)), "11/2");
        assert_eq!(from_text("11/2"), Some(ratio(22, 4)));
        assert_eq!(from_text("x"), None);
    }

    #[test]
    fn solver_consistent_and_inconsistent() {
        let rows = vec![vec![int(1), int(0)], vec![int(2), int(4)], vec![int(0), int(-4)]];
        let x = solve_all_ones(&rows, 2).unwrap();
        assert_eq!(x, vec![int(1), ratio(-1, 4)]);
        // proportional rows that would need 1 = 1/2
        let bad = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve_all_ones(&bad, 2).is_none());
        // underdetermined: free variable zeroed
        let under = vec![vec![int(0), int(3)]];
        assert_eq!(solve_all_ones(&under, 2).unwrap(), vec![int(0), ratio(1, 3)]);
    }
}
