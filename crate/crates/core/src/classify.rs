//! The uniqueness argument for completely regular codes with
//! `(m, δ) ∈ {(12, 6), (11, 5)}`, replayed as a chain of certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bits::{binomial, full_mask};
use crate::certificate::{point_lists, word_strings, Certificate, Verdict};
use crate::code::{Code, DistanceDistribution};
use crate::designs::{self, enumerate_designs_with, lex_sorted, Design, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::hadamard::{code_of, paley_hadamard_12};
use crate::rational::{self, Rational};
use crate::regularity::{certify_completely_regular, certify_completely_transitive, transitivity_by_stabilizer};
use crate::spectral::macwilliams_transform;
use crate::symmetry::{code_automorphisms, find_permutation_equivalence, GraphAutomorphism};

pub const SCHEMA: &str = "creg-cert/1";

fn check_case(m: usize, delta: usize) -> Result<()> {
    match (m, delta) {
        (12, 6) | (11, 5) => Ok(()),
        _ => Err(Error::param(format!(
            "only (m, δ) = (12, 6) and (11, 5) are supported, got ({m}, {delta})"
        ))),
    }
}

fn case_label(m: usize, delta: usize) -> String {
    format!("case-{m}-{delta}")
}

/// Least common multiple of the reduced denominators of
/// `C(m-i, t-i) / C(k-i, t-i)`, `0 <= i <= t`: every admissible `λ` is a
/// multiple of it.
fn integrality_divisor(t: usize, m: usize, k: usize) -> (BigInt, Vec<Value>) {
    let mut d = BigInt::one();
    let mut rows = Vec::new();
    for i in 0..=t {
        let num = binomial((m - i) as u64, (t - i) as u64);
        let den = binomial((k - i) as u64, (t - i) as u64);
        let r = rational::ratio(num as i64, den as i64);
        d = d.lcm(r.denom());
        rows.push(json!({"i": i, "num": num, "den": den, "reduced_den": r.denom().to_string()}));
    }
    (d, rows)
}

/// `λ` must be a multiple of the integrality divisor, and the blocks
/// through a fixed `t`-set pairwise meet in exactly that set, so
/// `λ <= (m - t) / (δ - t)`. Together these leave `λ = 2`.
pub fn lambda_bounds(m: usize, delta: usize, t: usize) -> Result<Certificate> {
    check_case(m, delta)?;
    if t != delta / 2 {
        return Err(Error::param(format!("strength must be ⌊δ/2⌋ = {}", delta / 2)));
    }
    let (d, rows) = integrality_divisor(t, m, delta);
    let d = d.to_u64().expect("small");
    let bound = ((m - t) / (delta - t)) as u64;
    let candidates: Vec<u64> = (1..=bound).filter(|l| l % d == 0).collect();
    let ok = candidates == [2];
    let witness = json!({
        "m": m, "delta": delta, "t": t,
        "ratios": rows,
        "divisor": d,
        "bound_num": m - t, "bound_den": delta - t, "bound": bound,
        "candidates": candidates,
        "lambda": if ok { Some(2) } else { None },
    });
    Ok(Certificate::new(
        "lambda-bounds",
        format!("{}/lambda", case_label(m, delta)),
        format!(
            "the weight-{delta} codewords form a {t}-({m},{delta},λ) design with {d} | λ and λ <= {bound}, so λ = 2"
        ),
        witness,
        ok,
    ))
}

fn block_count_certificate(anchor: String, t: usize, m: usize, k: usize, lambda: u64) -> Result<(Certificate, u64)> {
    let b = designs::block_count(t, m, k, &rational::int(lambda as i64))?;
    let ok = rational::is_integral(&b);
    let count = b.to_integer().to_u64().unwrap_or(0);
    Ok((
        Certificate::new(
            "block-count",
            anchor,
            format!("a {t}-({m},{k},{lambda}) design has {} blocks", rational::to_text(&b)),
            json!({"t": t, "m": m, "k": k, "lambda": lambda, "blocks": rational::to_text(&b)}),
            ok,
        ),
        count,
    ))
}

/// A hypothetical code of length 11 with distance distribution
/// `a_0 = 1, a_5 = a_6 = 11` has a negative MacWilliams coefficient.
pub fn reject_size_23() -> Certificate {
    let mut a = vec![0i64; 12];
    a[0] = 1;
    a[5] = 11;
    a[6] = 11;
    let t = macwilliams_transform(&DistanceDistribution::from_integers(&a)).expect("nonempty");
    let value = t.a_prime[2].clone();
    Certificate::new(
        "macwilliams-rejection",
        "case-11-5/size-23",
        format!(
            "a code with distance distribution a_0 = 1, a_5 = a_6 = 11 would have a'_2 = {} < 0",
            rational::to_text(&value)
        ),
        json!({
            "m": 11,
            "distribution": a,
            "transform": rational::texts(&t.a_prime),
            "index": 2,
            "value": rational::to_text(&value),
        }),
        value < Rational::zero(),
    )
}

/// One certified step of a classification run.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationRun {
    pub m: usize,
    pub delta: usize,
    pub size_bound: usize,
    pub steps: Vec<Certificate>,
    /// 1-based images of `1..m` carrying the forced code onto the reference.
    pub sigma: Option<Vec<usize>>,
    pub verdict: Verdict,
}

impl ClassificationRun {
    fn push(&mut self, c: Certificate) -> bool {
        let ok = c.passed();
        self.steps.push(c);
        if !ok {
            self.verdict = Verdict::Fail;
        }
        ok
    }

    /// Appends the theorem certificate to a passing run.
    pub fn attach_theorem(&mut self, theorem: Certificate) {
        if self.verdict.is_pass() {
            self.push(theorem);
        }
    }

    /// The `creg-cert/1` report. `runtime_ms` is left out unless given, so
    /// repeated runs produce identical bytes.
    pub fn to_report(&self, runtime_ms: Option<u128>) -> Value {
        json!({
            "schema": SCHEMA,
            "parameters": {"m": self.m, "delta": self.delta},
            "size_bound": self.size_bound,
            "steps": self.steps,
            "final_sigma": self.sigma,
            "verdict": self.verdict,
            "total_runtime_ms": runtime_ms.map(|r| r as u64),
        })
    }
}

/// The code in its reference form: `C(H_12)` or its puncture at coordinate 1.
pub fn reference_code(m: usize) -> Result<Code> {
    let c = code_of(&paley_hadamard_12());
    match m {
        12 => Ok(c),
        11 => c.puncture(1),
        _ => Err(Error::param(format!("no reference code of length {m}"))),
    }
}

fn uniqueness(anchor: String, t: usize, m: usize, k: usize, lambda: u64) -> Result<(Certificate, Vec<Design>)> {
    let (reps, stats) = enumerate_designs_with(t, m, k, lambda, DEFAULT_NODE_BUDGET)?;
    let witness = json!({
        "t": t, "m": m, "k": k, "lambda": lambda,
        "classes": reps.len(),
        "representatives": reps.iter().map(|d| point_lists(&lex_sorted(d.blocks()))).collect::<Vec<_>>(),
        "search_nodes": stats.nodes,
        "canonical_nodes": stats.canonical_nodes,
    });
    Ok((
        Certificate::new(
            "design-uniqueness",
            anchor,
            format!(
                "orderly generation finds {} isomorphism class(es) of {t}-({m},{k},{lambda}) designs",
                reps.len()
            ),
            witness,
            reps.len() == 1,
        ),
        reps,
    ))
}

fn complement_closure(m: usize, reps: &[Design]) -> Certificate {
    let full = full_mask(m);
    let closed: Vec<bool> = reps
        .iter()
        .map(|d| d.blocks().iter().all(|&b| d.blocks().binary_search(&(full & !b)).is_ok()))
        .collect();
    let ok = !reps.is_empty() && closed.iter().all(|&c| c);
    Certificate::new(
        "complement-closure",
        format!("case-{m}-6/antipodality"),
        "every 3-(12,6,2) design is closed under complements, so the code is antipodal and contains the all-ones word",
        json!({
            "m": m,
            "designs": reps.iter().map(|d| point_lists(&lex_sorted(d.blocks()))).collect::<Vec<_>>(),
            "closed": closed,
        }),
        ok,
    )
}

fn size_forcing(anchor: String, lower: usize, size_bound: usize, parts: Value) -> Certificate {
    let ok = lower == size_bound;
    let claim = if lower > size_bound {
        format!("the code has at least {lower} words, contradicting the bound {size_bound}")
    } else if ok {
        format!("the code has at least {lower} words and at most {size_bound}, so exactly {lower}")
    } else {
        format!("the lower bound {lower} does not reach the bound {size_bound}; the size is not forced")
    };
    Certificate::new(
        "size-forcing",
        anchor,
        claim,
        json!({"lower": lower, "size_bound": size_bound, "parts": parts}),
        ok,
    )
}

/// The weight-6 codewords of a length-11 code with the weight-5 words a
/// 2-(11,5,2) design form a 2-(11,6,μ) design with `3 | μ`, and the size
/// bound caps `1 + 11 + 11μ/3`.
fn mu_deduction(size_bound: usize) -> Certificate {
    let (d, rows) = integrality_divisor(2, 11, 6);
    let d = d.to_u64().expect("small");
    let per_mu = designs::block_count(2, 11, 6, &Rational::one()).expect("valid");
    let room = rational::int(size_bound as i64 - 12);
    let cap = if room < Rational::zero() {
        0
    } else {
        (room / &per_mu).floor().to_integer().to_u64().unwrap_or(0)
    };
    let candidates: Vec<u64> = (1..=cap).filter(|mu| mu % d == 0).collect();
    let ok = candidates == [3];
    Certificate::new(
        "mu-deduction",
        "case-11-5/weight-6",
        if ok {
            "two weight-5 codewords through a common pair are at distance 6, so the weight-6 codewords form a 2-(11,6,μ) design; 3 | μ and the size bound give μ = 3 and 11 words of weight 6".to_string()
        } else {
            format!("no admissible μ: multiples of {d} up to {cap} are {candidates:?}")
        },
        json!({
            "m": 11, "delta": 5, "t": 2, "k": 6,
            "block_distance": 2 * 5 - 2 * 2,
            "ratios": rows,
            "divisor": d,
            "blocks_per_unit_mu": rational::to_text(&per_mu),
            "fixed_words": 12,
            "size_bound": size_bound,
            "mu_max": cap,
            "candidates": candidates,
            "mu": if ok { Some(3) } else { None },
            "weight6_count": if ok { Some(11) } else { None },
        }),
        ok,
    )
}

fn fisher_rejection(weight: usize) -> Certificate {
    let points = 11;
    let blocks = 1u64;
    let ok = weight < points && blocks < points as u64;
    Certificate::new(
        "fisher-rejection",
        format!("case-11-5/weight-{weight}"),
        format!(
            "a single codeword of weight {weight} would form a 2-(11,{weight},μ') design with 1 block, below Fisher's bound of 11 blocks"
        ),
        json!({"weight": weight, "points": points, "blocks": blocks}),
        ok,
    )
}

fn eleven_antipodal() -> Certificate {
    // weights 1..4 are below the minimum distance, 5 and 6 are exhausted by
    // the two designs, 7..10 fail Fisher's inequality
    let excluded: Vec<usize> = (1..=10).collect();
    let remaining: Vec<usize> = (1..=11).filter(|w| !excluded.contains(w)).collect();
    Certificate::new(
        "antipodality",
        "case-11-5/antipodality",
        "the one remaining codeword has weight 11, so the code is antipodal",
        json!({"m": 11, "excluded": excluded, "remaining": remaining}),
        remaining == [11],
    )
}

fn equivalence(anchor: String, candidate: &Code, reference: &Code) -> Result<(Certificate, Option<Vec<usize>>)> {
    let sigma = find_permutation_equivalence(candidate, reference)?;
    let images: Option<Vec<usize>> = sigma.map(|s| s.perm().iter().map(|&p| p as usize + 1).collect());
    let verified = sigma.is_some_and(|s| {
        Code::from_masks(candidate.len(), candidate.masks().iter().map(|&w| s.apply_mask(w)))
            .is_ok_and(|img| &img == reference)
    });
    let m = candidate.len();
    Ok((
        Certificate::new(
            "permutation-equivalence",
            anchor,
            "a coordinate permutation maps the forced code onto the reference code",
            json!({
                "m": m,
                "candidate": word_strings(m, candidate.masks()),
                "reference": word_strings(m, reference.masks()),
                "sigma": images,
            }),
            verified,
        ),
        images,
    ))
}

/// Runs the argument for `(m, δ)` with `A(m, δ) = size_bound`, halting at
/// the first failing step.
pub fn classify(m: usize, delta: usize, size_bound: usize) -> Result<ClassificationRun> {
    check_case(m, delta)?;
    let t = delta / 2;
    let case = case_label(m, delta);
    let mut run = ClassificationRun {
        m,
        delta,
        size_bound,
        steps: Vec::new(),
        sigma: None,
        verdict: Verdict::Pass,
    };
    if !run.push(lambda_bounds(m, delta, t)?) {
        return Ok(run);
    }
    let (cert, b) = block_count_certificate(format!("{case}/block-count"), t, m, delta, 2)?;
    if !run.push(cert) {
        return Ok(run);
    }
    let (unique_cert, reps) = uniqueness(format!("{case}/uniqueness"), t, m, delta, 2)?;
    let full = full_mask(m);
    if m == 12 {
        if !run.push(complement_closure(m, &reps)) {
            return Ok(run);
        }
        let parts = json!({"zero": 1, "weight6": b, "all_ones": 1});
        if !run.push(size_forcing(format!("{case}/size"), 1 + b as usize + 1, size_bound, parts)) {
            return Ok(run);
        }
    } else {
        if !run.push(mu_deduction(size_bound)) {
            return Ok(run);
        }
        if !run.push(reject_size_23()) {
            return Ok(run);
        }
        let parts = json!({"zero": 1, "weight5": 11, "weight6": 11, "other": 1});
        if !run.push(size_forcing(format!("{case}/size"), 24, size_bound, parts)) {
            return Ok(run);
        }
        for w in 7..=10 {
            if !run.push(fisher_rejection(w)) {
                return Ok(run);
            }
        }
        if !run.push(eleven_antipodal()) {
            return Ok(run);
        }
    }
    if !run.push(unique_cert) {
        return Ok(run);
    }
    let rep = &reps[0];
    let mut words = vec![0, full];
    words.extend_from_slice(rep.blocks());
    if m == 11 {
        words.extend(rep.blocks().iter().map(|&b| full & !b));
    }
    let candidate = Code::from_masks(m, words)?;
    let (cert, sigma) = equivalence(format!("{case}/equivalence"), &candidate, &reference_code(m)?)?;
    run.sigma = sigma;
    run.push(cert);
    Ok(run)
}

/// Complete regularity, the automorphism group and complete transitivity
/// of the reference code, plus a rerun on a conjugate `C^x` for a random
/// `x` drawn from `seed`.
pub fn certify_theorem(m: usize, delta: usize, seed: u64, budget: usize) -> Result<Certificate> {
    check_case(m, delta)?;
    let case = case_label(m, delta);
    let code = reference_code(m)?;
    let regular = certify_completely_regular(&code).to_certificate(&code, &format!("{case}/regular"));
    let aut = code_automorphisms(&code)?;
    let closed = aut.group.closure(budget)?;
    let order = closed.order().expect("closed");
    let transitive = certify_completely_transitive(&code, &closed, &format!("{case}/transitive"))?;
    let rho = code.covering_radius();
    let stabilizer_checks = (0..=rho)
        .map(|i| transitivity_by_stabilizer(&code, &closed, i, &format!("{case}/stabilizer-{i}")))
        .collect::<Result<Vec<_>>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let x = GraphAutomorphism::new(m, rng.gen::<u32>() & full_mask(m), &perm)?;
    let moved = Code::from_masks(m, code.masks().iter().map(|&w| x.apply_mask(w)))?;
    let conj = closed.conjugate(&x);
    let conj_cert = certify_completely_transitive(&moved, &conj, &format!("{case}/conjugate"))?;

    let ok = regular.passed()
        && transitive.passed()
        && stabilizer_checks.iter().all(Certificate::passed)
        && conj_cert.passed()
        && order == aut.order;
    let witness = json!({
        "m": m,
        "delta": delta,
        "words": word_strings(m, code.masks()),
        "regular": regular,
        "group": {
            "order": order.to_string(),
            "search_order": aut.order.to_string(),
            "base_stabilizer_order": aut.base_stabilizer_order.to_string(),
            "generators": closed.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        },
        "transitive": transitive,
        "stabilizer_checks": stabilizer_checks,
        "conjugation": {"seed": seed, "x": x.to_string(), "certificate": conj_cert},
    });
    Ok(Certificate::new(
        "theorem",
        format!("{case}/theorem"),
        format!(
            "the reference ({m}, {}, {delta}) code is completely regular and completely transitive under its automorphism group of order {order}; so is every equivalent code",
            code.size()
        ),
        witness,
        ok,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_is_two_in_both_cases() {
        for (m, d) in [(12, 6), (11, 5)] {
            let c = lambda_bounds(m, d, d / 2).unwrap();
            assert!(c.passed(), "{c}");
            assert_eq!(c.witness["divisor"], 2);
            assert_eq!(c.witness["bound"], 3);
        }
        assert!(lambda_bounds(10, 4, 2).is_err());
        assert!(lambda_bounds(12, 6, 2).is_err());
    }

    #[test]
    fn size_23_is_rejected() {
        let c = reject_size_23();
        assert!(c.passed());
        assert_eq!(c.witness["value"], "-55");
        assert_eq!(c.witness["transform"][0], "23");
    }

    #[test]
    fn mu_depends_on_the_size_bound() {
        assert!(mu_deduction(24).passed());
        assert_eq!(mu_deduction(24).witness["mu"], 3);
        assert!(!mu_deduction(22).passed());
        assert!(!mu_deduction(40).passed());
    }

    #[test]
    fn fisher_rejections_and_antipodality() {
        for w in 7..=10 {
            assert!(fisher_rejection(w).passed());
        }
        assert!(eleven_antipodal().passed());
    }
}
