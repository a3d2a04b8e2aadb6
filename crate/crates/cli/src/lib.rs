//! Subcommand implementations behind the `creg` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use creg_core::certificate::{point_lists, word_strings};
use creg_core::classify::{certify_theorem, classify, reference_code};
use creg_core::designs::{enumerate_designs_with, is_t_design, DEFAULT_NODE_BUDGET};
use creg_core::hadamard::{code_of, paley_hadamard_12};
use creg_core::rational;
use creg_core::regularity::{certify_completely_regular, certify_completely_transitive};
use creg_core::replay::replay_report;
use creg_core::spectral::{certify_uniformly_packed, external_distance, macwilliams_transform};
use creg_core::symmetry::{
    code_automorphisms, find_equivalence, generators_to_string, parse_generators, GroupHandle,
    DEFAULT_ELEMENT_BUDGET,
};
use creg_core::{Certificate, Code, Verdict};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] creg_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(creg_core::Error::Contradiction(_)) => EXIT_FAIL,
            _ => EXIT_USAGE,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "creg", version, about = "Verification workbench for completely regular binary codes")]
pub struct Cli {
    /// Worker threads for the exhaustive scans.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,

    /// Largest group the closure may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub element_budget: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Target {
    Hadamard12,
    Code12,
    Code11,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Which {
    Creg,
    Ct,
    Theorem,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the order-12 Hadamard matrix or one of its codes.
    Construct {
        target: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parameters, distributions and weight-class designs of a code file.
    Analyze {
        code: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run one certifier on a code file.
    Certify {
        code: PathBuf,
        which: Which,
        /// Generator file for `ct`; the full automorphism group otherwise.
        #[arg(long)]
        generators: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Replay the uniqueness argument for (12, 6) or (11, 5).
    Classify {
        m: usize,
        delta: usize,
        #[arg(long, default_value_t = 24)]
        size_bound: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Record wall-clock time in the report (breaks byte-identical reruns).
        #[arg(long)]
        timing: bool,
    },
    /// Isomorph-free list of t-(m,k,λ) designs.
    EnumerateDesigns {
        t: usize,
        m: usize,
        k: usize,
        lambda: u64,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
        /// Directory receiving one design file per class.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Automorphism group of a code file.
    Aut {
        code: PathBuf,
        /// Generator file to write.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a classification report from its witnesses.
    Replay { report: PathBuf },
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn check_parent(path: &Option<PathBuf>) -> CliResult<()> {
    if let Some(p) = path {
        let parent = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        if !parent.is_dir() {
            return Err(CliError::Usage(format!("{}: directory does not exist", parent.display())));
        }
    }
    Ok(())
}

fn read_code(path: &Path) -> CliResult<Code> {
    Code::parse(&read(path)?).map_err(|e| match e {
        creg_core::Error::Parse { line, msg } => CliError::Usage(format!("{}:{line}: {msg}", path.display())),
        other => other.into(),
    })
}

fn emit_json(path: &Option<PathBuf>, value: &Value) -> CliResult<()> {
    if let Some(p) = path {
        let mut text = serde_json::to_string_pretty(value).expect("serializable");
        text.push('\n');
        write(p, &text)?;
    }
    Ok(())
}

fn verdict_code(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> CliResult<i32> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads as usize)
        .build_global()
        .ok();
    let budget = cli.element_budget as usize;
    match cli.command {
        Command::Construct { target, out } => construct(target, out),
        Command::Analyze { code, report } => analyze(&code, report),
        Command::Certify { code, which, generators, report, seed } => {
            certify(&code, which, generators, report, seed, budget)
        }
        Command::Classify { m, delta, size_bound, seed, report, timing } => {
            classify_cmd(m, delta, size_bound, seed, report, timing, budget)
        }
        Command::EnumerateDesigns { t, m, k, lambda, node_budget, out } => {
            enumerate_cmd(t, m, k, lambda, node_budget, out)
        }
        Command::Aut { code, out } => aut(&code, out, budget),
        Command::Replay { report } => replay_cmd(&report),
    }
}

fn construct(target: Target, out: Option<PathBuf>) -> CliResult<i32> {
    check_parent(&out)?;
    let h = paley_hadamard_12();
    let text = match target {
        Target::Hadamard12 => h.to_file_string(),
        Target::Code12 => code_of(&h).to_file_string(&["(12,24,6) code of the normalized Hadamard matrix".into()]),
        Target::Code11 => code_of(&h)
            .puncture(1)?
            .to_file_string(&["(11,24,5) code punctured at coordinate 1".into()]),
    };
    match out {
        Some(p) => write(&p, &text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_PASS)
}

fn weight_classes(code: &Code) -> CliResult<Value> {
    let m = code.len();
    let shift = if code.contains_zero() { 0 } else { code.masks()[0] };
    let c = code.translate(shift);
    let mut classes = Vec::new();
    for k in 1..=m {
        let blocks: Vec<u32> = c.masks().iter().copied().filter(|w| w.count_ones() as usize == k).collect();
        if blocks.is_empty() {
            continue;
        }
        let mut strength = None;
        for t in 1..=k {
            match is_t_design(m, &blocks, t)?.lambda() {
                Some(l) => strength = Some((t, l)),
                None => break,
            }
        }
        classes.push(json!({
            "weight": k,
            "count": blocks.len(),
            "t": strength.map(|s| s.0),
            "lambda": strength.map(|s| s.1),
        }));
    }
    Ok(json!({"translated_by": word_strings(m, &[shift])[0], "classes": classes}))
}

fn analyze(path: &Path, report: Option<PathBuf>) -> CliResult<i32> {
    check_parent(&report)?;
    let code = read_code(path)?;
    let delta = code.min_distance().ok();
    let dist = code.distance_distribution();
    let transform = macwilliams_transform(&dist)?;
    let packing = certify_uniformly_packed(&code);
    let value = json!({
        "length": code.len(),
        "size": code.size(),
        "min_distance": delta,
        "covering_radius": code.covering_radius(),
        "distance_distribution": rational::texts(&dist.a),
        "macwilliams_transform": rational::texts(&transform.a_prime),
        "external_distance": external_distance(&code),
        "uniformly_packed": packing.satisfied,
        "packing_lambdas": packing.lambdas.as_ref().map(|l| rational::texts(l)),
        "antipodal": code.is_antipodal(),
        "weight_classes": weight_classes(&code)?,
    });
    println!("N = {}", code.size());
    println!("δ = {}", delta.map_or("undefined".into(), |d| d.to_string()));
    println!("ρ = {}", code.covering_radius());
    println!("s = {}", value["external_distance"]);
    println!("a  = {}", rational::texts(&dist.a).join(" "));
    println!("a' = {}", rational::texts(&transform.a_prime).join(" "));
    println!("uniformly packed: {}", packing.satisfied);
    println!("antipodal: {}", code.is_antipodal());
    for c in value["weight_classes"]["classes"].as_array().expect("array") {
        println!(
            "weight {}: {} words, t = {}, λ = {}",
            c["weight"], c["count"], c["t"], c["lambda"]
        );
    }
    emit_json(&report, &value)?;
    Ok(EXIT_PASS)
}

fn full_group(code: &Code, budget: usize) -> CliResult<GroupHandle> {
    Ok(code_automorphisms(code)?.group.closure(budget)?)
}

fn print_certificate(c: &Certificate) {
    println!("{c}");
}

fn certify(
    path: &Path,
    which: Which,
    generators: Option<PathBuf>,
    report: Option<PathBuf>,
    seed: u64,
    budget: usize,
) -> CliResult<i32> {
    check_parent(&report)?;
    let code = read_code(path)?;
    let anchor = path.file_name().map_or("code".into(), |n| n.to_string_lossy().into_owned());
    let certs = match which {
        Which::Creg => {
            let r = certify_completely_regular(&code);
            if let Some(table) = &r.intersection_table {
                for (i, row) in table.iter().enumerate() {
                    println!("C_{i} ({} vertices): {row:?}", r.cell_sizes[i]);
                }
            }
            vec![r.to_certificate(&code, &format!("{anchor}/regular"))]
        }
        Which::Ct => {
            let group = match generators {
                Some(g) => {
                    let gens = parse_generators(&read(&g)?)?;
                    let h = GroupHandle::new(code.len(), gens)?;
                    match h.closure(budget) {
                        Ok(closed) => closed,
                        Err(creg_core::Error::Budget { .. }) => h,
                        Err(e) => return Err(e.into()),
                    }
                }
                None => full_group(&code, budget)?,
            };
            let c = certify_completely_transitive(&code, &group, &format!("{anchor}/transitive"))?;
            if let Some(orbits) = c.witness["orbits"].as_array() {
                for o in orbits {
                    println!("orbit in C_{}: {} vertices", o["cell"], o["size"]);
                }
            }
            vec![c]
        }
        Which::Theorem => {
            let delta = code
                .min_distance()
                .map_err(|_| CliError::Usage("a one-word code has no minimum distance".into()))?;
            let theorem = certify_theorem(code.len(), delta, seed, budget)?;
            let reference = reference_code(code.len())?;
            let x = find_equivalence(&reference, &code)?;
            let equiv = Certificate::new(
                "equivalence",
                format!("{anchor}/equivalence"),
                "the code is the image of the reference code under a graph automorphism",
                json!({"x": x.map(|g| g.to_string())}),
                x.is_some(),
            );
            vec![theorem, equiv]
        }
    };
    for c in &certs {
        print_certificate(c);
    }
    emit_json(&report, &json!(certs))?;
    Ok(verdict_code(certs.iter().all(Certificate::passed)))
}

fn classify_cmd(
    m: usize,
    delta: usize,
    size_bound: usize,
    seed: u64,
    report: Option<PathBuf>,
    timing: bool,
    budget: usize,
) -> CliResult<i32> {
    check_parent(&report)?;
    if !matches!((m, delta), (12, 6) | (11, 5)) {
        return Err(CliError::Usage(format!(
            "unsupported parameters ({m}, {delta}); only (12, 6) and (11, 5) are classified"
        )));
    }
    let start = Instant::now();
    let mut run = classify(m, delta, size_bound)?;
    if run.verdict.is_pass() {
        run.attach_theorem(certify_theorem(m, delta, seed, budget)?);
    }
    for (i, c) in run.steps.iter().enumerate() {
        println!("{:>2}. {c}", i + 1);
    }
    if let Some(s) = &run.sigma {
        println!("σ = {s:?}");
    }
    println!("verdict: {}", run.verdict);
    let elapsed = timing.then(|| start.elapsed().as_millis());
    emit_json(&report, &run.to_report(elapsed))?;
    Ok(verdict_code(run.verdict == Verdict::Pass))
}

fn enumerate_cmd(t: usize, m: usize, k: usize, lambda: u64, node_budget: u64, out: Option<PathBuf>) -> CliResult<i32> {
    if let Some(dir) = &out {
        if !dir.is_dir() {
            return Err(CliError::Usage(format!("{}: not a directory", dir.display())));
        }
    }
    let (reps, stats) = enumerate_designs_with(t, m, k, lambda, node_budget)?;
    println!(
        "{} class(es) of {t}-({m},{k},{lambda}) designs; {} nodes, {} canonical",
        reps.len(),
        stats.nodes,
        stats.canonical_nodes
    );
    for (i, d) in reps.iter().enumerate() {
        println!("class {}: {:?}", i + 1, point_lists(d.blocks()));
        if let Some(dir) = &out {
            write(&dir.join(format!("design-{}.txt", i + 1)), &d.to_file_string())?;
        }
    }
    Ok(EXIT_PASS)
}

fn aut(path: &Path, out: Option<PathBuf>, budget: usize) -> CliResult<i32> {
    check_parent(&out)?;
    let code = read_code(path)?;
    let a = code_automorphisms(&code)?;
    println!("|Aut(C)| = {}", a.order);
    println!("stabilizer of the base codeword: {}", a.base_stabilizer_order);
    println!("codeword orbit of the base: {}", a.base_orbit.len());
    let gens = a.group.generators();
    match a.group.closure(budget) {
        Ok(g) => println!("closure: {} elements", g.order().expect("closed")),
        Err(creg_core::Error::Budget { budget, .. }) => println!("closure skipped: exceeds {budget} elements"),
        Err(e) => return Err(e.into()),
    }
    let text = generators_to_string(gens);
    match out {
        Some(p) => write(&p, &text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_PASS)
}

fn replay_cmd(path: &Path) -> CliResult<i32> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let out = replay_report(&value)?;
    let mut confirmed = true;
    for r in &out {
        match &r.problem {
            None => println!("confirmed {} [{}] {}", r.verdict, r.kind, r.anchor),
            Some(p) => {
                confirmed = false;
                println!("REJECTED [{}] {}: {p}", r.kind, r.anchor);
            }
        }
    }
    let pass = value["verdict"] == "PASS";
    Ok(verdict_code(confirmed && pass))
}
