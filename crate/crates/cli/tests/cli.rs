use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use creg_core::designs::Design;
use creg_core::hadamard::HadamardMatrix;
use creg_core::Code;

fn creg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_creg")).args(args).output().unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn construct_writes_parseable_files() {
    let dir = tempfile::tempdir().unwrap();
    for (target, file) in [("hadamard12", "h"), ("code12", "c12"), ("code11", "c11")] {
        let out = creg(&["construct", target, "--out", &path(dir.path(), file)]);
        assert_eq!(out.status.code(), Some(0));
    }
    let h = HadamardMatrix::parse(&fs::read_to_string(dir.path().join("h")).unwrap()).unwrap();
    assert_eq!(h.order(), 12);
    let text = fs::read_to_string(dir.path().join("c12")).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 25);
    assert!(text.contains("(12,24,6)"));
    let c11 = Code::parse(&fs::read_to_string(dir.path().join("c11")).unwrap()).unwrap();
    assert_eq!((c11.len(), c11.size()), (11, 24));
}

#[test]
fn analyze_reports_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let code = path(dir.path(), "c11");
    creg(&["construct", "code11", "--out", &code]);
    let report = path(dir.path(), "a.json");
    let out = creg(&["analyze", &code, "--report", &report]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["min_distance"], 5);
    assert_eq!(v["covering_radius"], 3);
    assert_eq!(v["external_distance"], 3);
    assert_eq!(v["antipodal"], true);

    let one = path(dir.path(), "one");
    fs::write(&one, "m=4\n0110\n").unwrap();
    let report = path(dir.path(), "b.json");
    assert_eq!(creg(&["analyze", &one, "--report", &report]).status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(v["min_distance"].is_null());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = path(dir.path(), "c12");
    creg(&["construct", "code12", "--out", &code]);
    assert_eq!(creg(&["certify", &code, "creg"]).status.code(), Some(0));
    assert_eq!(creg(&["certify", &code, "ct"]).status.code(), Some(0));

    let text = fs::read_to_string(&code).unwrap();
    let six = text.lines().find(|l| l.chars().filter(|&c| c == '1').count() == 6).unwrap();
    let minus = path(dir.path(), "minus");
    fs::write(&minus, text.replacen(&format!("{six}\n"), "", 1)).unwrap();
    assert_eq!(creg(&["certify", &minus, "creg"]).status.code(), Some(1));

    let bad = path(dir.path(), "bad");
    fs::write(&bad, "m=3\n010\n01x\n").unwrap();
    let out = creg(&["analyze", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":3:"));

    assert_eq!(creg(&["classify", "10", "4"]).status.code(), Some(2));
    assert_eq!(creg(&["analyze", &path(dir.path(), "missing")]).status.code(), Some(2));
    assert_eq!(creg(&["construct", "code12", "--out", "/nonexistent/dir/x"]).status.code(), Some(2));
    assert_eq!(creg(&["--threads", "0", "construct", "code12"]).status.code(), Some(2));
}

#[test]
fn generators_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let code = path(dir.path(), "c11");
    let gens = path(dir.path(), "gens");
    creg(&["construct", "code11", "--out", &code]);
    let out = creg(&["aut", &code, "--out", &gens]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("|Aut(C)| = 15840"));
    let out = creg(&["certify", &code, "ct", "--generators", &gens]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(creg(&["certify", &code, "theorem"]).status.code(), Some(0));
}

#[test]
fn enumerate_designs_writes_one_file_per_class() {
    let dir = tempfile::tempdir().unwrap();
    let out = creg(&["enumerate-designs", "2", "11", "5", "2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let d = Design::parse(&fs::read_to_string(dir.path().join("design-1.txt")).unwrap()).unwrap();
    assert_eq!((d.points(), d.block_size(), d.strength(), d.lambda()), (11, 5, 2, 2));
    assert!(!dir.path().join("design-2.txt").exists());
}

#[test]
fn classify_reports_replay_and_timing_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let report = path(dir.path(), "r.json");
    assert_eq!(creg(&["classify", "12", "6", "--report", &report]).status.code(), Some(0));
    let out = creg(&["replay", &report]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(v["total_runtime_ms"].is_null());
    assert_eq!(v["final_sigma"].as_array().unwrap().len(), 12);

    let mut tampered = v.clone();
    tampered["steps"][0]["witness"]["bound"] = 4.into();
    fs::write(&report, serde_json::to_string(&tampered).unwrap()).unwrap();
    assert_eq!(creg(&["replay", &report]).status.code(), Some(1));

    let timed = path(dir.path(), "t.json");
    creg(&["classify", "11", "5", "--timing", "--report", &timed]);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&timed).unwrap()).unwrap();
    assert!(v["total_runtime_ms"].is_u64());
}
