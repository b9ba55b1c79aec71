//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::HashSet;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use frc_core::io::{parse_code, render_code, render_document};
use frc_core::oracle::{exhaustive_search, SearchBudget};
use frc_core::{
    check_feasibility, construct, orbit, shift, smallest_multiplier, tail_family, verify,
    FrCode, Parameters, Subset,
};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FRC: &str = env!("CARGO_BIN_EXE_frc");

type Check = Result<String, String>;

fn params(n: u64, d: u64, theta: u64, rho: u64) -> Parameters {
    Parameters::new(n, d, theta, rho).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |c, i| c * (n - i) / (i + 1))
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took < limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn golden(n: u64, d: u64, theta: u64, rho: u64, omega: u64, a: Option<u64>) -> Check {
    let start = Instant::now();
    let p = params(n, d, theta, rho);
    let report = check_feasibility(&p);
    if !report.feasible {
        return Err("reported infeasible".into());
    }
    let pair = smallest_multiplier(d, theta);
    if pair.omega != omega || report.omega_pair != pair {
        return Err(format!("omega={} expected {omega}", pair.omega));
    }
    if let Some(a) = a {
        if pair.a != a {
            return Err(format!("a={} expected {a}", pair.a));
        }
    }
    let code = construct(&p).map_err(|e| e.to_string())?;
    let v = verify(&code);
    let expected: Vec<(u64, u64)> = (1..=theta).map(|e| (e, rho)).collect();
    let actual: Vec<(u64, u64)> = v.coverage_histogram.iter().map(|(&e, &c)| (e, c)).collect();
    if !v.valid || actual != expected || code.sets().len() as u64 != n {
        return Err(format!("verification failed: {v:?}"));
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!("{n} sets, every element x{rho}, omega={} a={}", pair.omega, pair.a))
}

fn orbit_lemmas() -> Check {
    let start = Instant::now();
    let (mut subsets, mut violations) = (0u64, Vec::new());
    for theta in 1..=12u32 {
        for d in 1..=theta {
            let omega = smallest_multiplier(d as u64, theta as u64).omega as usize;
            for c in (1..=theta as u64).combinations(d as usize) {
                subsets += 1;
                let a = Subset::new(theta, c).unwrap();
                let o = orbit(&a);
                let size = o.size;
                if theta as usize % size != 0 {
                    violations.push(format!("{a} (theta={theta}): size {size} does not divide theta"));
                }
                if size % omega != 0 {
                    violations.push(format!("{a} (theta={theta}): omega={omega} does not divide {size}"));
                }
                let mut counts = vec![0usize; theta as usize];
                for m in &o.members {
                    for e in m.elements() {
                        counts[e as usize - 1] += 1;
                    }
                }
                if counts.iter().any(|&c| c * theta as usize != d as usize * size) {
                    violations.push(format!("{a} (theta={theta}): unbalanced counts {counts:?}"));
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(format!("{} violations, first: {}", violations.len(), violations[0]));
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!("{subsets} subsets, 0 violations"))
}

fn sufficiency() -> Check {
    let start = Instant::now();
    let (mut points, mut failures) = (0u64, Vec::new());
    for theta in 1..=10u64 {
        for d in 1..=theta {
            let cap = binomial(theta, d).min(200);
            for n in (1..=cap).filter(|n| (n * d) % theta == 0) {
                points += 1;
                let p = params(n, d, theta, n * d / theta);
                match construct(&p) {
                    Ok(code) if verify(&code).valid => {}
                    Ok(_) => failures.push(format!("{p:?}: invalid code")),
                    Err(e) => failures.push(format!("{p:?}: {e}")),
                }
            }
        }
    }
    if !failures.is_empty() {
        return Err(format!("{} failures, first: {}", failures.len(), failures[0]));
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{points} feasible points constructed and verified"))
}

/// Over theta <= 6, every d, n <= C(theta, d) + 1 and 1 <= rho <= n + 1.
fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let budget = SearchBudget::default();
    let (mut points, mut feasible_points, mut issues) = (0u64, 0u64, Vec::new());
    for theta in 1..=6u64 {
        for d in 1..=theta {
            for n in 1..=binomial(theta, d) + 1 {
                for rho in 1..=n + 1 {
                    points += 1;
                    let p = params(n, d, theta, rho);
                    let feasible = check_feasibility(&p).feasible;
                    feasible_points += feasible as u64;
                    let found = match exhaustive_search(&p, budget) {
                        Ok(found) => found,
                        Err(e) => {
                            issues.push(format!("{p:?}: {e}"));
                            continue;
                        }
                    };
                    if let Some(code) = &found {
                        if !verify(code).valid {
                            issues.push(format!("{p:?}: oracle returned an invalid code"));
                        }
                    }
                    if found.is_some() != feasible {
                        issues.push(format!("{p:?}: feasible={feasible} oracle={}", found.is_some()));
                    }
                    match construct(&p) {
                        Ok(code) if feasible && verify(&code).valid => {}
                        Err(_) if !feasible => {}
                        other => issues.push(format!("{p:?}: constructor disagrees: {other:?}")),
                    }
                }
            }
        }
    }
    if !issues.is_empty() {
        return Err(format!("{} discrepancies, first: {}", issues.len(), issues[0]));
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{points} points ({feasible_points} feasible), 0 discrepancies"))
}

fn tail_partition() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for theta in 2..=64u64 {
        for d in 1..theta {
            let tail = tail_family(d, theta).map_err(|e| format!("d={d} theta={theta}: {e}"))?;
            let pair = smallest_multiplier(d, theta);
            let s = Subset::initial(theta as u32, d as u32);
            let whole: HashSet<Subset> = (0..theta as i64).map(|j| shift(&s, j)).collect();
            let mut union = HashSet::new();
            for (j, family) in tail.families.iter().enumerate() {
                let mut counts = vec![0u64; theta as usize];
                for set in family {
                    if !union.insert(set.clone()) {
                        return Err(format!("d={d} theta={theta}: family {j} overlaps at {set}"));
                    }
                    for e in set.elements() {
                        counts[e as usize - 1] += 1;
                    }
                }
                if counts.iter().any(|&c| c != pair.a) {
                    return Err(format!("d={d} theta={theta}: family {j} counts {counts:?}"));
                }
            }
            if union != whole {
                return Err(format!("d={d} theta={theta}: union differs from orbit of S"));
            }
            checked += 1;
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("{checked} (d, theta) pairs partition the orbit of S"))
}

fn run_frc(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(FRC);
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("FRC_THREADS", t);
    }
    cmd.output().expect("spawn frc")
}

/// A constructed code with its ground set relabeled and its sets shuffled.
fn random_code(rng: &mut ChaCha8Rng) -> FrCode {
    loop {
        let theta = rng.gen_range(1..=12u64);
        let d = rng.gen_range(1..=theta);
        let cap = binomial(theta, d).min(300);
        let ns: Vec<u64> = (1..=cap).filter(|n| (n * d) % theta == 0).collect();
        let Some(&n) = ns.choose(rng) else { continue };
        let p = params(n, d, theta, n * d / theta).with_k(rng.gen_bool(0.3).then_some(d)).unwrap();
        let code = construct(&p).unwrap();
        let mut relabel: Vec<u64> = (1..=theta).collect();
        relabel.shuffle(rng);
        let mut sets: Vec<Subset> = code
            .sets()
            .iter()
            .map(|s| Subset::new(theta as u32, s.elements().map(|e| relabel[e as usize - 1])).unwrap())
            .collect();
        sets.shuffle(rng);
        return FrCode::new(p, sets).unwrap();
    }
}

fn round_trip(dir: &Path) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    for i in 0..1000 {
        let code = random_code(&mut rng);
        if !verify(&code).valid {
            return Err(format!("random code {i} is not valid"));
        }
        let text = render_code(&code);
        let doc = parse_code(&text).map_err(|e| format!("code {i}: {e}"))?;
        if render_document(&doc) != text || doc.clone().into_code() != code {
            return Err(format!("code {i} does not round-trip:\n{text}"));
        }
    }

    let mut cases = vec![(12, 6, 8, 9), (21, 3, 7, 9), (1, 4, 4, 1)];
    for _ in 0..25 {
        let c = random_code(&mut rng);
        let p = c.params();
        cases.push((p.n(), p.d(), p.theta(), p.rho()));
    }
    for (i, (n, d, t, r)) in cases.iter().enumerate() {
        let path = dir.join(format!("rt{i}.frc"));
        let path_str = path.to_str().unwrap();
        let (n, d, t, r) = (n.to_string(), d.to_string(), t.to_string(), r.to_string());
        let built = run_frc(&["construct", "-n", &n, "-d", &d, "-t", &t, "-r", &r, "--out", path_str], None);
        if built.status.code() != Some(0) {
            return Err(format!("construct {n} {d} {t} {r} exited {:?}", built.status.code()));
        }
        let checked = run_frc(&["verify", path_str], None);
        if checked.status.code() != Some(0) {
            return Err(format!("verify of {path_str} exited {:?}", checked.status.code()));
        }
    }
    Ok(format!("1000 codes byte-identical after render/parse/render; {} CLI files re-verify", cases.len()))
}

fn full_run(dir: &Path, threads: Option<&str>) -> Result<Vec<Vec<u8>>, String> {
    let mut outputs = Vec::new();
    for (name, args) in [("a", ["-n", "12", "-d", "6", "-t", "8", "-r", "9"]), ("b", ["-n", "21", "-d", "3", "-t", "7", "-r", "9"])] {
        let path = dir.join(format!("{name}.frc"));
        let mut full = vec!["construct"];
        full.extend(args);
        full.extend(["--out", path.to_str().unwrap()]);
        let out = run_frc(&full, threads);
        if out.status.code() != Some(0) {
            return Err(format!("construct {args:?} exited {:?}", out.status.code()));
        }
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        outputs.push(out.stdout);
    }
    let sweep = run_frc(
        &["sweep", "--theta-max", "8", "--n-cap", "70", "--mode", "construct-and-verify"],
        threads,
    );
    if sweep.status.code() != Some(0) {
        return Err(format!("sweep exited {:?}", sweep.status.code()));
    }
    let summary = String::from_utf8_lossy(&sweep.stdout).lines().last().unwrap_or("").to_string();
    if !summary.ends_with("failures=0") {
        return Err(format!("sweep summary: {summary}"));
    }
    outputs.push(sweep.stdout);
    Ok(outputs)
}

fn determinism(dir: &Path) -> Check {
    let first_dir = dir.join("first");
    let second_dir = dir.join("second");
    std::fs::create_dir_all(&first_dir).unwrap();
    std::fs::create_dir_all(&second_dir).unwrap();
    let first = full_run(&first_dir, None)?;
    let second = full_run(&second_dir, Some("1"))?;
    if first != second {
        return Err("runs produced different bytes".into());
    }
    let bytes: usize = first.iter().map(Vec::len).sum();
    Ok(format!("{} outputs, {bytes} bytes, identical across runs", first.len()))
}

fn main() {
    // libtest-style filter arguments are ignored; the suite always runs whole
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("1 golden n=12 d=6 theta=8 rho=9", Box::new(|| golden(12, 6, 8, 9, 4, Some(3)))),
        ("2 golden n=21 d=3 theta=7 rho=9", Box::new(|| golden(21, 3, 7, 9, 7, None))),
        ("3 orbit lemmas for theta <= 12", Box::new(orbit_lemmas)),
        ("4 sufficiency for theta <= 10, n <= 200", Box::new(sufficiency)),
        ("5 oracle equivalence for theta <= 6", Box::new(oracle_equivalence)),
        ("6 tail-family partition for theta <= 64", Box::new(tail_partition)),
        ("7 render/parse round trip and CLI re-verify", Box::new(|| round_trip(dir.path()))),
        ("8 determinism of constructs and sweep", Box::new(|| determinism(dir.path()))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{:.2?}]", start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
