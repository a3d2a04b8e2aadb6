//! Independent re-verification of certificates from their witness payloads.
//!
//! Nothing here calls back into the searches, certifiers or transforms that
//! produced a certificate: distances, designs, orbits, group closures and
//! Krawtchouk values are recomputed with separate straightforward code. A
//! certificate replays when the recomputed verdict equals the recorded one
//! and every derived number in the witness agrees.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::certificate::{Certificate, Verdict};
use crate::classify::SCHEMA;
use crate::error::{Error, Result};
use crate::symmetry::GraphAutomorphism;

type Check = std::result::Result<bool, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Outcome of replaying one certificate.
#[derive(Debug, Clone, Serialize)]
pub struct Replayed {
    pub anchor: String,
    pub kind: String,
    pub verdict: Verdict,
    /// `None` when the witness confirms the verdict, otherwise the reason.
    pub problem: Option<String>,
}

impl Replayed {
    pub fn confirmed(&self) -> bool {
        self.problem.is_none()
    }
}

pub fn replay_certificate(cert: &Certificate) -> Replayed {
    let problem = match recompute(&cert.kind, &cert.witness) {
        Ok(ok) if ok == cert.verdict.is_pass() => None,
        Ok(ok) => Some(format!(
            "recorded verdict {} but the witness gives {}",
            cert.verdict,
            Verdict::from_bool(ok)
        )),
        Err(e) => Some(e),
    };
    Replayed {
        anchor: cert.anchor.clone(),
        kind: cert.kind.clone(),
        verdict: cert.verdict,
        problem,
    }
}

/// Replays every step of a `creg-cert/1` report and checks the overall
/// verdict and final permutation against the steps.
pub fn replay_report(report: &Value) -> Result<Vec<Replayed>> {
    if report["schema"] != SCHEMA {
        return Err(Error::param(format!("unsupported report schema {}", report["schema"])));
    }
    let steps: Vec<Certificate> = serde_json::from_value(report["steps"].clone())
        .map_err(|e| Error::param(format!("malformed steps: {e}")))?;
    let mut out: Vec<Replayed> = steps.iter().map(replay_certificate).collect();
    let all_pass = steps.iter().all(Certificate::passed);
    let recorded: Verdict = serde_json::from_value(report["verdict"].clone())
        .map_err(|e| Error::param(format!("malformed verdict: {e}")))?;
    let mut problem = None;
    if recorded.is_pass() != all_pass {
        problem = Some(format!("report verdict {recorded} disagrees with its steps"));
    } else if all_pass {
        let last = steps.iter().rev().find(|s| s.kind == "permutation-equivalence");
        match last {
            Some(s) if s.witness["sigma"] == report["final_sigma"] => {}
            _ => problem = Some("final permutation does not match the equivalence step".into()),
        }
    }
    out.push(Replayed {
        anchor: "report".into(),
        kind: "report".into(),
        verdict: recorded,
        problem,
    });
    Ok(out)
}

fn recompute(kind: &str, w: &Value) -> Check {
    match kind {
        "lambda-bounds" => lambda_bounds(w),
        "block-count" => block_count(w),
        "mu-deduction" => mu_deduction(w),
        "macwilliams-rejection" => macwilliams_rejection(w),
        "size-forcing" => size_forcing(w),
        "fisher" => fisher(w),
        "fisher-rejection" => fisher_rejection(w),
        "antipodality" => antipodality(w),
        "complement-closure" => complement_closure(w),
        "design-uniqueness" => design_uniqueness(w),
        "permutation-equivalence" => permutation_equivalence(w),
        "completely-regular" => completely_regular(w),
        "completely-transitive" => completely_transitive(w),
        "stabilizer-transitivity" => stabilizer_transitivity(w),
        "theorem" => theorem(w),
        other => Err(format!("unknown certificate kind {other:?}")),
    }
}

// ---- witness access -------------------------------------------------------

fn field<'a>(w: &'a Value, key: &str) -> std::result::Result<&'a Value, String> {
    w.get(key).ok_or_else(|| format!("witness lacks `{key}`"))
}

fn uint(w: &Value, key: &str) -> std::result::Result<usize, String> {
    field(w, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| format!("`{key}` is not a nonnegative integer"))
}

fn text<'a>(w: &'a Value, key: &str) -> std::result::Result<&'a str, String> {
    field(w, key)?.as_str().ok_or_else(|| format!("`{key}` is not a string"))
}

fn uints(w: &Value, key: &str) -> std::result::Result<Vec<usize>, String> {
    field(w, key)?
        .as_array()
        .ok_or_else(|| format!("`{key}` is not an array"))?
        .iter()
        .map(|v| v.as_u64().map(|n| n as usize).ok_or_else(|| format!("`{key}` has a non-integer entry")))
        .collect()
}

fn array<'a>(w: &'a Value, key: &str) -> std::result::Result<&'a Vec<Value>, String> {
    field(w, key)?.as_array().ok_or_else(|| format!("`{key}` is not an array"))
}

fn word(s: &str, m: usize) -> std::result::Result<u32, String> {
    ensure!(s.len() == m, "word {s:?} does not have length {m}");
    let mut x = 0u32;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => x |= 1 << i,
            _ => return Err(format!("bad character in word {s:?}")),
        }
    }
    Ok(x)
}

fn words(w: &Value, key: &str, m: usize) -> std::result::Result<Vec<u32>, String> {
    let mut out = array(w, key)?
        .iter()
        .map(|v| word(v.as_str().ok_or("word is not a string")?, m))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    out.sort_unstable();
    let n = out.len();
    out.dedup();
    ensure!(out.len() == n, "`{key}` repeats a word");
    Ok(out)
}

/// Blocks given as 1-based point lists.
fn blocks(v: &Value, m: usize) -> std::result::Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for b in v.as_array().ok_or("design is not an array")? {
        let mut mask = 0u32;
        for p in b.as_array().ok_or("block is not an array")? {
            let p = p.as_u64().ok_or("point is not an integer")? as usize;
            ensure!((1..=m).contains(&p), "point {p} out of range");
            mask |= 1 << (p - 1);
        }
        out.push(mask);
    }
    out.sort_unstable();
    Ok(out)
}

fn rational(s: &str) -> std::result::Result<BigRational, String> {
    s.parse().map_err(|_| format!("bad rational {s:?}"))
}

/// A generator as its action: `v ↦ π(v + t)`.
struct Action {
    t: u32,
    perm: Vec<u8>,
}

impl Action {
    fn apply(&self, v: u32) -> u32 {
        let x = v ^ self.t;
        let mut out = 0u32;
        for (i, &p) in self.perm.iter().enumerate() {
            if (x >> i) & 1 == 1 {
                out |= 1 << p;
            }
        }
        out
    }
}

fn actions(w: &Value, key: &str, m: usize) -> std::result::Result<Vec<Action>, String> {
    array(w, key)?
        .iter()
        .map(|v| {
            let s = v.as_str().ok_or("generator is not a string")?;
            let g: GraphAutomorphism = s.parse().map_err(|e| format!("generator {s:?}: {e}"))?;
            ensure!(g.perm().len() == m, "generator {s:?} acts on length {}", g.perm().len());
            Ok(Action { t: g.translation(), perm: g.perm().to_vec() })
        })
        .collect()
}

// ---- arithmetic -----------------------------------------------------------

fn choose(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn lcm_of_denominators(t: usize, m: usize, k: usize) -> BigInt {
    (0..=t).fold(BigInt::one(), |acc, i| {
        let r = BigRational::new(choose(m - i, t - i), choose(k - i, t - i));
        acc.lcm(r.denom())
    })
}

fn lambda_bounds(w: &Value) -> Check {
    let (m, delta, t) = (uint(w, "m")?, uint(w, "delta")?, uint(w, "t")?);
    ensure!(t == delta / 2 && delta > t && m > t, "bad parameters");
    let d = lcm_of_denominators(t, m, delta).to_usize().ok_or("divisor overflow")?;
    let bound = (m - t) / (delta - t);
    let candidates: Vec<usize> = (1..=bound).filter(|l| l % d == 0).collect();
    ensure!(uint(w, "divisor")? == d, "divisor should be {d}");
    ensure!(uint(w, "bound")? == bound, "bound should be {bound}");
    ensure!(uints(w, "candidates")? == candidates, "candidates should be {candidates:?}");
    Ok(candidates == [2])
}

fn block_count(w: &Value) -> Check {
    let (t, m, k, lambda) = (uint(w, "t")?, uint(w, "m")?, uint(w, "k")?, uint(w, "lambda")?);
    let b = BigRational::new(BigInt::from(lambda) * choose(m, t), choose(k, t));
    ensure!(rational(text(w, "blocks")?)? == b, "block count should be {b}");
    Ok(b.is_integer())
}

fn mu_deduction(w: &Value) -> Check {
    let size_bound = uint(w, "size_bound")?;
    ensure!(uint(w, "block_distance")? == 2 * 5 - 2 * 2, "two blocks through a pair are at distance 6");
    let d = lcm_of_denominators(2, 11, 6).to_usize().ok_or("divisor overflow")?;
    let per_mu = BigRational::new(choose(11, 2), choose(6, 2));
    ensure!(rational(text(w, "blocks_per_unit_mu")?)? == per_mu, "blocks per unit μ should be {per_mu}");
    let fixed = uint(w, "fixed_words")?;
    ensure!(fixed == 1 + 11, "the zero word and 11 weight-5 words are fixed");
    let cap = if size_bound < fixed {
        0
    } else {
        (BigRational::from_integer(BigInt::from(size_bound - fixed)) / &per_mu)
            .floor()
            .to_integer()
            .to_usize()
            .ok_or("cap overflow")?
    };
    let candidates: Vec<usize> = (1..=cap).filter(|mu| mu % d == 0).collect();
    ensure!(uint(w, "divisor")? == d, "divisor should be {d}");
    ensure!(uint(w, "mu_max")? == cap, "μ cap should be {cap}");
    ensure!(uints(w, "candidates")? == candidates, "candidates should be {candidates:?}");
    let ok = candidates == [3];
    if ok {
        let count = BigRational::from_integer(BigInt::from(3)) * per_mu;
        ensure!(BigRational::from_integer(BigInt::from(uint(w, "weight6_count")?)) == count, "weight-6 count");
    }
    Ok(ok)
}

/// `K_k(i)` as the coefficient of `z^k` in `(1 - z)^i (1 + z)^(m - i)`.
fn krawtchouk_row(m: usize, i: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for step in 0..m {
        let sign = if step < i { -1 } else { 1 };
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j] += c;
            next[j + 1] += c * sign;
        }
        poly = next;
    }
    poly
}

fn macwilliams_rejection(w: &Value) -> Check {
    let m = uint(w, "m")?;
    let a: Vec<i64> = array(w, "distribution")?
        .iter()
        .map(|v| v.as_i64().ok_or("distribution entry is not an integer"))
        .collect::<std::result::Result<_, _>>()?;
    ensure!(a.len() == m + 1, "distribution has the wrong length");
    let mut transform = vec![BigInt::zero(); m + 1];
    for (i, &ai) in a.iter().enumerate() {
        for (k, kv) in krawtchouk_row(m, i).into_iter().enumerate() {
            transform[k] += kv * ai;
        }
    }
    let recorded = array(w, "transform")?;
    ensure!(recorded.len() == m + 1, "transform has the wrong length");
    for (k, v) in recorded.iter().enumerate() {
        let r = rational(v.as_str().ok_or("transform entry is not a string")?)?;
        ensure!(r == BigRational::from_integer(transform[k].clone()), "a'_{k} should be {}", transform[k]);
    }
    let index = uint(w, "index")?;
    ensure!(index <= m, "index out of range");
    let value = rational(text(w, "value")?)?;
    ensure!(value == BigRational::from_integer(transform[index].clone()), "recorded value is not a'_{index}");
    Ok(value.is_negative())
}

fn size_forcing(w: &Value) -> Check {
    let lower = uint(w, "lower")?;
    let parts = field(w, "parts")?.as_object().ok_or("`parts` is not an object")?;
    let sum: u64 = parts.values().map(|v| v.as_u64().unwrap_or(0)).sum();
    ensure!(sum as usize == lower, "parts sum to {sum}, not {lower}");
    Ok(lower == uint(w, "size_bound")?)
}

fn fisher(w: &Value) -> Check {
    Ok(uint(w, "blocks")? >= uint(w, "points")?)
}

fn fisher_rejection(w: &Value) -> Check {
    let points = uint(w, "points")?;
    Ok(uint(w, "weight")? < points && uint(w, "blocks")? < points)
}

fn antipodality(w: &Value) -> Check {
    let m = uint(w, "m")?;
    let excluded = uints(w, "excluded")?;
    let remaining: Vec<usize> = (1..=m).filter(|x| !excluded.contains(x)).collect();
    ensure!(uints(w, "remaining")? == remaining, "remaining weights should be {remaining:?}");
    Ok(remaining == [m])
}

fn design_lambda(m: usize, blocks: &[u32], t: usize) -> Option<usize> {
    let mut lambda = None;
    for s in 0u32..(1 << m) {
        if s.count_ones() as usize != t {
            continue;
        }
        let n = blocks.iter().filter(|&&b| b & s == s).count();
        match lambda {
            None => lambda = Some(n),
            Some(l) if l != n => return None,
            _ => {}
        }
    }
    lambda
}

fn is_design(m: usize, blocks: &[u32], t: usize, k: usize, lambda: usize) -> bool {
    !blocks.is_empty()
        && blocks.windows(2).all(|p| p[0] != p[1])
        && blocks.iter().all(|b| b.count_ones() as usize == k)
        && design_lambda(m, blocks, t) == Some(lambda)
}

fn complement_closure(w: &Value) -> Check {
    let m = uint(w, "m")?;
    let full = (1u32 << m) - 1;
    let designs = array(w, "designs")?;
    let mut closed = Vec::new();
    for d in designs {
        let b = blocks(d, m)?;
        ensure!(is_design(m, &b, 3, 6, 2), "a listed block set is not a 3-({m},6,2) design");
        closed.push(b.iter().all(|x| b.binary_search(&(full & !x)).is_ok()));
    }
    let recorded: Vec<bool> = array(w, "closed")?.iter().map(|v| v.as_bool().unwrap_or(false)).collect();
    ensure!(recorded == closed, "closure flags should be {closed:?}");
    Ok(!closed.is_empty() && closed.iter().all(|&c| c))
}

fn design_uniqueness(w: &Value) -> Check {
    let (t, m, k, lambda) = (uint(w, "t")?, uint(w, "m")?, uint(w, "k")?, uint(w, "lambda")?);
    let reps = array(w, "representatives")?;
    ensure!(uint(w, "classes")? == reps.len(), "class count differs from the representatives");
    for r in reps {
        ensure!(is_design(m, &blocks(r, m)?, t, k, lambda), "a representative is not a {t}-({m},{k},{lambda}) design");
    }
    Ok(reps.len() == 1)
}

fn permutation_equivalence(w: &Value) -> Check {
    let m = uint(w, "m")?;
    let candidate = words(w, "candidate", m)?;
    let reference = words(w, "reference", m)?;
    let sigma = field(w, "sigma")?;
    if sigma.is_null() {
        return Ok(false);
    }
    let images = uints(w, "sigma")?;
    ensure!(images.len() == m, "σ has the wrong degree");
    let mut seen = vec![false; m];
    for &p in &images {
        ensure!((1..=m).contains(&p) && !seen[p - 1], "σ is not a permutation");
        seen[p - 1] = true;
    }
    let act = Action { t: 0, perm: images.iter().map(|&p| (p - 1) as u8).collect() };
    let mut moved: Vec<u32> = candidate.iter().map(|&x| act.apply(x)).collect();
    moved.sort_unstable();
    Ok(moved == reference)
}

// ---- codes and groups -----------------------------------------------------

fn labels(m: usize, code: &[u32]) -> Vec<usize> {
    (0u32..(1 << m))
        .map(|v| code.iter().map(|&c| (v ^ c).count_ones() as usize).min().unwrap_or(usize::MAX))
        .collect()
}

fn completely_regular(w: &Value) -> Check {
    let m = uint(w, "length")?;
    let code = words(w, "words", m)?;
    ensure!(!code.is_empty(), "empty code");
    let lab = labels(m, &code);
    let rho = *lab.iter().max().expect("nonempty");
    ensure!(uint(w, "covering_radius")? == rho, "covering radius should be {rho}");
    let mut sizes = vec![0usize; rho + 1];
    for &l in &lab {
        sizes[l] += 1;
    }
    ensure!(uints(w, "cell_sizes")? == sizes, "cell sizes should be {sizes:?}");
    let row = |v: u32| {
        let mut r = vec![0usize; m + 1];
        for &c in &code {
            r[(v ^ c).count_ones() as usize] += 1;
        }
        r
    };
    let mut table: Vec<Option<Vec<usize>>> = vec![None; rho + 1];
    let mut regular = true;
    for v in 0u32..(1 << m) {
        let r = row(v);
        match &table[lab[v as usize]] {
            None => table[lab[v as usize]] = Some(r),
            Some(prev) if *prev != r => {
                regular = false;
                break;
            }
            _ => {}
        }
    }
    if regular {
        let recorded = array(w, "intersection_table")?;
        ensure!(recorded.len() == rho + 1, "intersection table has the wrong number of rows");
        for (i, r) in recorded.iter().enumerate() {
            let got: Vec<usize> = r
                .as_array()
                .ok_or("table row is not an array")?
                .iter()
                .map(|x| x.as_u64().unwrap_or(u64::MAX) as usize)
                .collect();
            ensure!(Some(&got) == table[i].as_ref(), "intersection table row {i} differs");
        }
    } else {
        let cx = field(w, "counterexample")?;
        let a = word(text(cx, "first")?, m)?;
        let b = word(text(cx, "second")?, m)?;
        ensure!(lab[a as usize] == lab[b as usize], "counterexample vertices lie in different cells");
        ensure!(row(a) != row(b), "counterexample vertices have equal outer distributions");
    }
    Ok(regular)
}

/// Orbits of the group generated by `gens` on `domain`, each sorted.
fn orbits(gens: &[Action], domain: &[u32]) -> std::result::Result<Vec<Vec<u32>>, String> {
    let inside: HashSet<u32> = domain.iter().copied().collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &start in domain {
        if !seen.insert(start) {
            continue;
        }
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for g in gens {
                let u = g.apply(v);
                ensure!(inside.contains(&u), "a generator leaves the domain");
                if seen.insert(u) {
                    orbit.push(u);
                    queue.push_back(u);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

fn preserves(gens: &[Action], code: &[u32]) -> bool {
    gens.iter().all(|g| code.iter().all(|&c| code.binary_search(&g.apply(c)).is_ok()))
}

/// Order of the group generated by `gens`, enumerating elements by the
/// images of `0` and the unit vectors, which determine an automorphism of
/// the cube.
fn group_order(m: usize, gens: &[Action], budget: usize) -> std::result::Result<usize, String> {
    let identity: Vec<u32> = std::iter::once(0).chain((0..m).map(|i| 1u32 << i)).collect();
    let mut seen = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(key) = queue.pop_front() {
        for g in gens {
            let next: Vec<u32> = key.iter().map(|&v| g.apply(v)).collect();
            if seen.insert(next.clone()) {
                ensure!(seen.len() <= budget, "group exceeds {budget} elements");
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len())
}

fn completely_transitive(w: &Value) -> Check {
    let m = uint(w, "length")?;
    let code = words(w, "words", m)?;
    let gens = actions(w, "generators", m)?;
    ensure!(preserves(&gens, &code), "a generator does not preserve the code");
    let lab = labels(m, &code);
    let all: Vec<u32> = (0u32..(1 << m)).collect();
    let orbs = orbits(&gens, &all)?;
    let cells = lab.iter().max().map_or(0, |r| r + 1);
    let mut sizes = vec![0usize; cells];
    for &l in &lab {
        sizes[l] += 1;
    }
    ensure!(uints(w, "cell_sizes")? == sizes, "cell sizes should be {sizes:?}");
    let mut got: Vec<(usize, Option<usize>)> = orbs
        .iter()
        .map(|o| {
            let c = lab[o[0] as usize];
            (o.len(), o.iter().all(|&v| lab[v as usize] == c).then_some(c))
        })
        .collect();
    got.sort_unstable();
    let mut recorded: Vec<(usize, Option<usize>)> = array(w, "orbits")?
        .iter()
        .map(|o| (uint(o, "size").unwrap_or(0), uint(o, "cell").ok()))
        .collect();
    recorded.sort_unstable();
    ensure!(got == recorded, "orbit sizes and cells differ from the witness");
    Ok(orbs.len() == cells && got.iter().all(|(_, c)| c.is_some()))
}

fn stabilizer_transitivity(w: &Value) -> Check {
    let m = uint(w, "length").or_else(|_| Ok::<_, String>(text(w, "alpha")?.len()))?;
    let code = words(w, "words", m)?;
    let gens = actions(w, "generators", m)?;
    let stab = actions(w, "stabilizer_generators", m)?;
    let alpha = word(text(w, "alpha")?, m)?;
    let cell = uint(w, "cell")?;
    ensure!(code.binary_search(&alpha).is_ok(), "α is not a codeword");
    ensure!(preserves(&gens, &code), "a generator does not preserve the code");
    ensure!(preserves(&stab, &code), "a stabilizer generator does not preserve the code");
    ensure!(stab.iter().all(|g| g.apply(alpha) == alpha), "a stabilizer generator moves α");
    let code_orbits = orbits(&gens, &code)?;
    ensure!(code_orbits.len() == 1, "the group is not transitive on the code");
    ensure!(uint(w, "code_orbit_size")? == code.len(), "code orbit size");
    let lab = labels(m, &code);
    let target: Vec<u32> = (0u32..(1 << m))
        .filter(|&v| (v ^ alpha).count_ones() as usize == cell && lab[v as usize] == cell)
        .collect();
    ensure!(uint(w, "target_size")? == target.len(), "target size should be {}", target.len());
    let orbs = orbits(&stab, &target)?;
    let mut got: Vec<usize> = orbs.iter().map(Vec::len).collect();
    got.sort_unstable();
    let mut recorded: Vec<usize> = array(w, "stabilizer_orbits")?.iter().map(|o| uint(o, "size").unwrap_or(0)).collect();
    recorded.sort_unstable();
    ensure!(got == recorded, "stabilizer orbit sizes should be {got:?}");
    Ok(orbs.len() == 1)
}

fn nested(v: &Value) -> std::result::Result<Certificate, String> {
    serde_json::from_value(v.clone()).map_err(|e| format!("malformed nested certificate: {e}"))
}

fn nested_passes(v: &Value) -> Check {
    let c = nested(v)?;
    let r = replay_certificate(&c);
    if let Some(p) = r.problem {
        return Err(format!("{}: {p}", c.anchor));
    }
    Ok(c.passed())
}

fn theorem(w: &Value) -> Check {
    let m = uint(w, "m")?;
    let code = words(w, "words", m)?;
    let group = field(w, "group")?;
    let gens = actions(group, "generators", m)?;
    ensure!(preserves(&gens, &code), "a generator does not preserve the code");
    let order: usize = text(group, "order")?.parse().map_err(|_| "bad group order")?;
    let counted = group_order(m, &gens, order.max(1))?;
    ensure!(counted == order, "the generators give a group of order {counted}");
    let same_code = |c: &Value| -> std::result::Result<bool, String> {
        Ok(words(c, "words", m)? == code)
    };
    let regular = field(w, "regular")?;
    ensure!(same_code(field(regular, "witness")?)?, "regularity certificate is about another code");
    let mut ok = nested_passes(regular)?;
    let transitive = field(w, "transitive")?;
    ensure!(same_code(field(transitive, "witness")?)?, "transitivity certificate is about another code");
    ok &= nested_passes(transitive)?;
    for c in array(w, "stabilizer_checks")? {
        ensure!(same_code(field(c, "witness")?)?, "stabilizer certificate is about another code");
        ok &= nested_passes(c)?;
    }
    let conj = field(w, "conjugation")?;
    let x: GraphAutomorphism = text(conj, "x")?.parse().map_err(|e| format!("bad x: {e}"))?;
    let x = Action { t: x.translation(), perm: x.perm().to_vec() };
    let cert = field(conj, "certificate")?;
    let mut moved: Vec<u32> = code.iter().map(|&c| x.apply(c)).collect();
    moved.sort_unstable();
    ensure!(words(field(cert, "witness")?, "words", m)? == moved, "conjugated certificate is not about C^x");
    ok &= nested_passes(cert)?;
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, reject_size_23};

    #[test]
    fn krawtchouk_rows_match_closed_values() {
        assert_eq!(krawtchouk_row(3, 0), [1, 3, 3, 1].map(BigInt::from));
        assert_eq!(krawtchouk_row(3, 3), [1, -3, 3, -1].map(BigInt::from));
        assert_eq!(krawtchouk_row(11, 5)[2], BigInt::from(-5));
    }

    #[test]
    fn tampered_witness_is_caught() {
        let mut c = reject_size_23();
        assert!(replay_certificate(&c).confirmed());
        c.witness["value"] = "-54".into();
        assert!(!replay_certificate(&c).confirmed());
        let mut c = reject_size_23();
        c.verdict = Verdict::Fail;
        assert!(!replay_certificate(&c).confirmed());
    }

    #[test]
    fn failing_run_replays_as_failing() {
        let run = classify(12, 6, 22).unwrap();
        let report = run.to_report(None);
        let out = replay_report(&report).unwrap();
        assert!(out.iter().all(Replayed::confirmed), "{out:?}");
        let mut bad = report.clone();
        bad["verdict"] = "PASS".into();
        assert!(!replay_report(&bad).unwrap().last().unwrap().confirmed());
    }
}
