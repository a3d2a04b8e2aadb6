//! `t`-designs on at most 24 points, blocks stored as bitmasks.

mod enumerate;

use serde_json::json;

use crate::bits::{binomial, full_mask, ksubsets};
use crate::certificate::{point_lists, Certificate};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::symmetry::{setwise_stabilizer_perms, GroupHandle};
use crate::vertex::{Vertex, MAX_LEN};

pub use enumerate::{
    canonical_form, enumerate_designs, enumerate_designs_with, family_cmp, is_canonical, lex_precedes,
    lex_sorted,
    CanonicalForm, EnumerationStats, DEFAULT_NODE_BUDGET, MAX_BLOCKS,
};

/// A verified `t-(m,k,λ)` design with distinct blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Design {
    points: usize,
    k: usize,
    t: usize,
    lambda: u64,
    blocks: Vec<u32>,
}

/// Outcome of counting blocks through every `t`-subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TDesignCheck {
    Design { lambda: u64 },
    /// The least `t`-subset and the first one whose count differs from it.
    Counterexample {
        first: u32,
        first_count: u64,
        second: u32,
        second_count: u64,
    },
}

impl TDesignCheck {
    pub fn lambda(&self) -> Option<u64> {
        match self {
            TDesignCheck::Design { lambda } => Some(*lambda),
            TDesignCheck::Counterexample { .. } => None,
        }
    }
}

fn block_size(m: usize, blocks: &[u32]) -> Result<usize> {
    if m == 0 || m > MAX_LEN {
        return Err(Error::param(format!("{m} points outside 1..={MAX_LEN}")));
    }
    let Some(&first) = blocks.first() else {
        return Err(Error::param("a design needs at least one block"));
    };
    if let Some(&b) = blocks.iter().find(|&&b| b & !full_mask(m) != 0) {
        return Err(Error::param(format!("block {b:#x} uses points beyond {m}")));
    }
    let k = first.count_ones() as usize;
    if blocks.iter().any(|b| b.count_ones() as usize != k) {
        return Err(Error::param("blocks of unequal size"));
    }
    Ok(k)
}

/// Counts the blocks through each `t`-subset of the `m` points.
pub fn is_t_design(m: usize, blocks: &[u32], t: usize) -> Result<TDesignCheck> {
    let k = block_size(m, blocks)?;
    if t > k {
        return Err(Error::param(format!("strength {t} exceeds block size {k}")));
    }
    let count = |s: u32| blocks.iter().filter(|&&b| b & s == s).count() as u64;
    let mut subsets = ksubsets(m, t);
    let first = subsets.next().expect("t <= m");
    let want = count(first);
    for s in subsets {
        let c = count(s);
        if c != want {
            return Ok(TDesignCheck::Counterexample {
                first,
                first_count: want,
                second: s,
                second_count: c,
            });
        }
    }
    Ok(TDesignCheck::Design { lambda: want })
}

/// `λ_i = λ · C(m-i, t-i) / C(k-i, t-i)`.
pub fn lambda_i(t: usize, m: usize, k: usize, lambda: &Rational, i: usize) -> Result<Rational> {
    if i > t || t > k || k > m {
        return Err(Error::param(format!(
            "need i <= t <= k <= m, got i={i} t={t} k={k} m={m}"
        )));
    }
    let num = binomial((m - i) as u64, (t - i) as u64) as i64;
    let den = binomial((k - i) as u64, (t - i) as u64) as i64;
    Ok(lambda * rational::ratio(num, den))
}

/// `b = λ_0 = λ · C(m, t) / C(k, t)`.
pub fn block_count(t: usize, m: usize, k: usize, lambda: &Rational) -> Result<Rational> {
    lambda_i(t, m, k, lambda, 0)
}

impl Design {
    /// Checks the blocks and returns the design with its `λ`.
    pub fn new(m: usize, blocks: impl IntoIterator<Item = u32>, t: usize) -> Result<Design> {
        let mut blocks: Vec<u32> = blocks.into_iter().collect();
        blocks.sort_unstable();
        let before = blocks.len();
        blocks.dedup();
        if blocks.len() != before {
            return Err(Error::param("repeated blocks"));
        }
        let k = block_size(m, &blocks)?;
        match is_t_design(m, &blocks, t)? {
            TDesignCheck::Design { lambda } => Ok(Design {
                points: m,
                k,
                t,
                lambda,
                blocks,
            }),
            TDesignCheck::Counterexample {
                first,
                first_count,
                second,
                second_count,
            } => Err(Error::param(format!(
                "not a {t}-design: {:?} lies in {first_count} blocks, {:?} in {second_count}",
                point_lists(&[first])[0],
                point_lists(&[second])[0]
            ))),
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn block_size(&self) -> usize {
        self.k
    }

    pub fn strength(&self) -> usize {
        self.t
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    /// Blocks in ascending bitmask order.
    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn block_total(&self) -> usize {
        self.blocks.len()
    }

    /// Recomputes `λ_i` for each `0 <= i <= t` and checks
    /// `C(m,i) λ_i = b C(k,i)`.
    pub fn parameter_identities_hold(&self) -> bool {
        let lam = rational::int(self.lambda as i64);
        (0..=self.t).all(|i| {
            let li = lambda_i(self.t, self.points, self.k, &lam, i).expect("valid parameters");
            li * rational::int(binomial(self.points as u64, i as u64) as i64)
                == rational::int(self.blocks.len() as i64 * binomial(self.k as u64, i as u64) as i64)
        })
    }

    /// Blocks through `p` with `p` removed, as a design on the other points
    /// (reindexed). Strength drops by one.
    pub fn derived_at(&self, p: usize) -> Result<Design> {
        if p >= self.points || self.t == 0 {
            return Err(Error::param("derived design needs a valid point and t >= 1"));
        }
        let low = (1u32 << p) - 1;
        let squeeze = |b: u32| (b & low) | ((b >> (p + 1)) << p);
        Design::new(
            self.points - 1,
            self.blocks.iter().filter(|&&b| b >> p & 1 == 1).map(|&b| squeeze(b)),
            self.t - 1,
        )
    }

    /// Text form: `points=<m> k=<k> t=<t> lambda=<λ>`, then one block per
    /// line as 1-based points.
    pub fn to_file_string(&self) -> String {
        let mut s = format!(
            "points={} k={} t={} lambda={}\n",
            self.points, self.k, self.t, self.lambda
        );
        for pts in point_lists(&self.blocks) {
            let line: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Design> {
        let mut header: Option<(usize, usize, usize, u64)> = None;
        let mut blocks = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if header.is_none() {
                let mut fields = std::collections::HashMap::new();
                for tok in line.split_whitespace() {
                    let (key, val) = tok
                        .split_once('=')
                        .ok_or_else(|| Error::parse(idx + 1, format!("bad header field {tok:?}")))?;
                    let v: u64 = val
                        .parse()
                        .map_err(|_| Error::parse(idx + 1, format!("bad value in {tok:?}")))?;
                    fields.insert(key.to_string(), v);
                }
                let get = |k: &str| {
                    fields
                        .get(k)
                        .copied()
                        .ok_or_else(|| Error::parse(idx + 1, format!("header lacks {k}")))
                };
                header = Some((
                    get("points")? as usize,
                    get("k")? as usize,
                    get("t")? as usize,
                    get("lambda")?,
                ));
                continue;
            }
            let (m, _, _, _) = header.expect("set above");
            let mut mask = 0u32;
            for tok in line.split_whitespace() {
                let p: usize = tok
                    .parse()
                    .ok()
                    .filter(|&p| p >= 1 && p <= m)
                    .ok_or_else(|| Error::parse(idx + 1, format!("bad point {tok:?}")))?;
                mask |= 1 << (p - 1);
            }
            blocks.push(mask);
        }
        let (m, k, t, lambda) = header.ok_or_else(|| Error::parse(1, "missing header"))?;
        let d = Design::new(m, blocks, t)?;
        if d.k != k || d.lambda != lambda {
            return Err(Error::param(format!(
                "header says k={k} lambda={lambda}, blocks give k={} lambda={}",
                d.k, d.lambda
            )));
        }
        Ok(d)
    }
}

/// Certifies `b >= v` for a 2-design with `k < v` on `v` points.
pub fn fisher_check(d: &Design, anchor: &str) -> Result<Certificate> {
    if d.t < 2 || d.k >= d.points {
        return Err(Error::param("Fisher's inequality needs a 2-design with k < v"));
    }
    Ok(fisher_certificate(d.points, d.blocks.len() as u64, anchor))
}

/// `b >= v` from the counts alone.
pub fn fisher_certificate(points: usize, blocks: u64, anchor: &str) -> Certificate {
    let ok = blocks >= points as u64;
    Certificate::new(
        "fisher",
        anchor,
        format!("a 2-design on {points} points has {blocks} blocks; Fisher's inequality requires at least {points}"),
        json!({"points": points, "blocks": blocks}),
        ok,
    )
}

/// Adds a new last point to every block and appends the complements of the
/// blocks in the original point set.
pub fn extend_design(d: &Design) -> Result<Design> {
    let m = d.points;
    if m + 1 > MAX_LEN {
        return Err(Error::param("extension exceeds the point limit"));
    }
    let full = full_mask(m);
    let new_point = 1u32 << m;
    let blocks = d
        .blocks
        .iter()
        .map(|&b| b | new_point)
        .chain(d.blocks.iter().map(|&b| full & !b));
    let ext = Design::new(m + 1, blocks, d.t + 1).map_err(|e| {
        Error::Contradiction(format!("extension is not a {}-design: {e}", d.t + 1))
    })?;
    Ok(ext)
}

pub fn design_automorphisms(d: &Design) -> Result<(GroupHandle, u128)> {
    setwise_stabilizer_perms(d.points, &d.blocks)
}

/// `a` is covered by `b` when `supp(a) ⊆ supp(b)`.
pub fn covered_by(a: Vertex, b: Vertex) -> bool {
    a.len() == b.len() && a.bits() & !b.bits() == 0
}

/// 2-ary reading: every weight-`t` vertex is covered by the same number of
/// the given words. Agrees with [`is_t_design`] on the supports.
pub fn covering_count(words: &[Vertex], t: usize) -> Result<Option<u64>> {
    let Some(first) = words.first() else {
        return Err(Error::param("no words"));
    };
    let m = first.len();
    let mut want = None;
    for s in ksubsets(m, t) {
        let v = Vertex::new(s, m)?;
        let c = words.iter().filter(|&&w| covered_by(v, w)).count() as u64;
        match want {
            None => want = Some(c),
            Some(w) if w != c => return Ok(None),
            _ => {}
        }
    }
    Ok(want)
}
