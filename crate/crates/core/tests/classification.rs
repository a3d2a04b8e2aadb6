use creg_core::classify::{certify_theorem, classify, reference_code, SCHEMA};
use creg_core::symmetry::DEFAULT_ELEMENT_BUDGET;
use creg_core::{Code, Verdict};

fn apply(code: &Code, sigma: &[usize]) -> Code {
    let perm: Vec<u8> = sigma.iter().map(|&p| (p - 1) as u8).collect();
    Code::from_masks(
        code.len(),
        code.masks().iter().map(|&w| creg_core::bits::permute_mask(w, &perm)),
    )
    .unwrap()
}

#[test]
fn both_cases_classify_with_bound_24() {
    for (m, d, steps) in [(12, 6, 6), (11, 5, 12)] {
        let run = classify(m, d, 24).unwrap();
        for s in &run.steps {
            assert!(s.passed(), "{s}");
        }
        assert_eq!(run.verdict, Verdict::Pass);
        assert_eq!(run.steps.len(), steps);
        let sigma = run.sigma.clone().unwrap();
        let w = &run.steps.last().unwrap().witness;
        let words: Vec<&str> = w["candidate"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
        let candidate = Code::parse(&format!("m={m}\n{}", words.join("\n"))).unwrap();
        assert_eq!(apply(&candidate, &sigma), reference_code(m).unwrap());
        let report = run.to_report(None);
        assert_eq!(report["schema"], SCHEMA);
        assert!(report["total_runtime_ms"].is_null());
    }
}

#[test]
fn bound_22_fails_at_the_case_step() {
    for (m, d, anchor) in [(12, 6, "case-12-6/size"), (11, 5, "case-11-5/weight-6")] {
        let run = classify(m, d, 22).unwrap();
        assert_eq!(run.verdict, Verdict::Fail);
        let last = run.steps.last().unwrap();
        assert!(!last.passed());
        assert_eq!(last.anchor, anchor);
        assert!(run.steps[..run.steps.len() - 1].iter().all(|s| s.passed()));
        assert!(run.sigma.is_none());
    }
}

#[test]
fn reports_are_deterministic() {
    let a = serde_json::to_string(&classify(11, 5, 24).unwrap().to_report(None)).unwrap();
    let b = serde_json::to_string(&classify(11, 5, 24).unwrap().to_report(None)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn theorem_certificates() {
    let c = certify_theorem(12, 6, 1, DEFAULT_ELEMENT_BUDGET).unwrap();
    assert!(c.passed(), "{c}");
    assert_eq!(c.witness["group"]["order"], "190080");
    let c = certify_theorem(11, 5, 2, DEFAULT_ELEMENT_BUDGET).unwrap();
    assert!(c.passed(), "{c}");
    assert!(certify_theorem(10, 4, 0, DEFAULT_ELEMENT_BUDGET).is_err());
}

#[test]
fn pass_reports_replay_step_by_step() {
    use creg_core::replay::{replay_certificate, replay_report};
    for (m, d) in [(12, 6), (11, 5)] {
        let mut run = classify(m, d, 24).unwrap();
        run.attach_theorem(certify_theorem(m, d, 3, DEFAULT_ELEMENT_BUDGET).unwrap());
        assert_eq!(run.steps.last().unwrap().kind, "theorem");
        let report = run.to_report(None);
        let text = serde_json::to_string(&report).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        for r in replay_report(&parsed).unwrap() {
            assert!(r.confirmed(), "{}: {:?}", r.anchor, r.problem);
        }
        let mut theorem = run.steps.last().unwrap().clone();
        theorem.witness["group"]["order"] = "95040".into();
        assert!(!replay_certificate(&theorem).confirmed());
    }
}
