//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runtime budgets and tolerances are part of each check.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use irrtree::claims::{find_claim, recheck, Counterexample, EvaluationReport, Outcome, Scalar, Witness};
use irrtree::construct::{path, star};
use irrtree::enumerate::{extremal, free_trees, labeled_trees_oracle, IndexName, Objective, SearchConfig, TreeClassFilter};
use irrtree::format::write_graph6;
use irrtree::indices::{
    albertson, forgotten, forgotten_edgewise, general_albertson, pairwise_squared_gaps, sigma, sigma_t, total_albertson,
    total_albertson_sorted_formula, zagreb_m1,
};

const RELATIVE_TOLERANCE: f64 = 1e-9;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn within_budget(v: Verdict, elapsed: Duration, budget: Option<Duration>) -> Verdict {
    match budget {
        Some(b) if elapsed > b => verdict(false, format!("{} (over budget: {:.2?} > {:.0?})", v.detail, elapsed, b)),
        _ => v,
    }
}

fn irrtree(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_irrtree"))
        .args(args)
        .env_remove("IRRTREE_WORKERS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn irrtree");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(bytes) = stdin {
            pipe.write_all(bytes).unwrap();
        }
    }
    child.wait_with_output().expect("irrtree output")
}

// ------------------------------------------------------------------ 1

fn closed_forms() -> Verdict {
    for n in 3..=64u64 {
        let s = star(n as usize).unwrap();
        let p = path(n as usize).unwrap();
        let checks = [
            ("irr(S_n)", albertson(&s), (n - 1) * (n - 2)),
            ("sigma(S_n)", sigma(&s), (n - 1) * (n - 2) * (n - 2)),
            ("irr(P_n)", albertson(&p), 2),
            ("sigma(P_n)", sigma(&p), 2),
            ("irr_t(P_n)", total_albertson(&p), 2 * (n - 2)),
        ];
        for (name, got, want) in checks {
            if got != want {
                return verdict(false, format!("{name} at n={n}: {got} != {want}"));
            }
        }
    }
    verdict(true, "star and path values exact for 3 <= n <= 64")
}

// ------------------------------------------------------------------ 2

fn enumeration_counts() -> Verdict {
    let known = [1usize, 1, 2, 3, 6, 11, 23, 47];
    for (n, &expected) in (2..=9).zip(&known) {
        let generated = free_trees(TreeClassFilter::order(n)).unwrap().count();
        let oracle = labeled_trees_oracle(n).unwrap().class_count();
        if generated != oracle || oracle != expected {
            return verdict(false, format!("n={n}: generated {generated}, oracle {oracle}, listed {expected}"));
        }
    }
    verdict(true, "counts 1,1,2,3,6,11,23,47 agree with the labeled-tree oracle")
}

// ------------------------------------------------------------------ 3

fn identity_suite() -> Verdict {
    let mut checked = 0usize;
    for n in 2..=9 {
        for t in free_trees(TreeClassFilter::order(n)).unwrap() {
            let g6 = write_graph6(&t);
            let irr = albertson(&t);
            let s = sigma(&t);
            if general_albertson(&t, 1.0).unwrap() != irr as f64 {
                return verdict(false, format!("irr_1 != irr on {g6}"));
            }
            let irr2 = general_albertson(&t, 2.0).unwrap();
            let sq = irr2 * irr2;
            if (sq - s as f64).abs() > RELATIVE_TOLERANCE * (s as f64).max(1.0) {
                return verdict(false, format!("irr_2^2 = {sq} vs sigma = {s} on {g6}"));
            }
            let formula = total_albertson_sorted_formula(&t.degree_sequence()).unwrap();
            if formula != total_albertson(&t) as i64 {
                return verdict(false, format!("irr_t pairwise vs sorted formula on {g6}"));
            }
            // Σ_{u<v} (d_u - d_v)^2 = n·M1 - (2m)^2, computed independently.
            let n = t.order() as u64;
            let m = t.size() as u64;
            let by_moments = n * zagreb_m1(&t) - 4 * m * m;
            let st = sigma_t(&t);
            if st.twice() != 2 * pairwise_squared_gaps(&t) || st.to_integer() != Some(by_moments) {
                return verdict(false, format!("sigma_t identity on {g6}"));
            }
            if forgotten(&t) != forgotten_edgewise(&t) {
                return verdict(false, format!("F vertex form != edge form on {g6}"));
            }
            checked += 1;
        }
    }
    verdict(true, format!("zero violations over {checked} trees"))
}

// ------------------------------------------------------------------ 4

fn sandwich_invariants() -> Verdict {
    let mut checked = 0usize;
    for n in 4..=10 {
        for t in free_trees(TreeClassFilter::order(n)).unwrap() {
            let irr = albertson(&t);
            let s = sigma(&t);
            let m = t.size() as u64;
            if !(s <= irr * irr && irr * irr <= m * s) {
                return verdict(false, format!("sigma <= irr^2 <= m sigma fails on {}", write_graph6(&t)));
            }
            if total_albertson(&t) > (n as u64 - 2) * irr {
                return verdict(false, format!("irr_t <= (n-2) irr fails on {}", write_graph6(&t)));
            }
            checked += 1;
        }
    }
    verdict(true, format!("zero violations over {checked} trees"))
}

// ------------------------------------------------------------------ 5

fn extremal_identification() -> Verdict {
    let cfg = SearchConfig::default();
    for n in 4..=10usize {
        let f = TreeClassFilter::order(n);
        let max = extremal(f, IndexName::Irr, Objective::Max, &cfg).unwrap();
        let star_code = star(n).unwrap().canonical_code();
        let expected = ((n - 1) * (n - 2)) as u64;
        if !max.exhaustive || max.value != expected || max.optimum_count != Some(1) || max.witness.canonical_code() != star_code {
            return verdict(
                false,
                format!("n={n}: max {} (count {:?}, witness {})", max.value, max.optimum_count, write_graph6(&max.witness)),
            );
        }
        let min = extremal(f, IndexName::Irr, Objective::Min, &cfg).unwrap();
        if !min.exhaustive || min.value != 2 || albertson(&path(n).unwrap()) != 2 {
            return verdict(false, format!("n={n}: min {}", min.value));
        }
    }
    verdict(true, "star is the unique irr maximizer, path attains min 2, n = 4..10")
}

// ------------------------------------------------------------------ 6

fn run_harness(report: &Path) -> Result<(), String> {
    let out = irrtree(
        &["--workers", "1", "check-claims", "--n-min", "4", "--n-max", "9", "--seed", "0", "--report", report.to_str().unwrap()],
        None,
    );
    // Failing claims are expected; only usage or I/O errors abort.
    if !out.status.success() {
        return Err(format!("check-claims exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(())
}

fn load_report(path: &Path) -> EvaluationReport {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

fn reverifies(id: &str, ce: &Counterexample) -> Result<(), String> {
    let claim = find_claim(id).map_err(|e| e.to_string())?;
    let outcome = recheck(&claim, &ce.instance).map_err(|e| e.to_string())?;
    let Outcome::Fails(f) = outcome else {
        return Err(format!("{id}: recorded counterexample does not fail in isolation ({outcome:?})"));
    };
    let witness_matches = match &f.witness {
        Witness::None => ce.witness_g6.is_none() && ce.witness_pair_g6.is_none(),
        Witness::Graph(g) => ce.witness_g6.as_ref() == Some(g),
        Witness::Pair(a, b) => ce.witness_pair_g6.as_ref() == Some(&[a.clone(), b.clone()]),
    };
    if !witness_matches || f.values != ce.values || f.free_vars != ce.free_vars {
        return Err(format!("{id}: recheck differs from the recorded counterexample"));
    }
    Ok(())
}

fn harness_end_to_end(report_path: &Path) -> Verdict {
    if let Err(e) = run_harness(report_path) {
        return verdict(false, e);
    }
    let report = load_report(report_path);
    let ids: Vec<&str> = report.claims.iter().map(|v| v.id.as_str()).collect();
    let expected: Vec<String> = (1..=31).map(|i| format!("C{i}")).collect();
    if ids != expected.iter().map(String::as_str).collect::<Vec<_>>() {
        return verdict(false, format!("verdict ids {ids:?}"));
    }
    let mut rechecked = 0;
    for v in &report.claims {
        if v.holds + v.fails + v.vacuous != v.domain_size {
            return verdict(false, format!("{}: counts do not add up to the domain size", v.id));
        }
        if (v.fails > 0) != v.first_counterexample.is_some() || v.first_counterexample.as_ref() != v.counterexamples.first() {
            return verdict(false, format!("{}: first counterexample inconsistent", v.id));
        }
        for ce in &v.counterexamples {
            if let Err(e) = reverifies(&v.id, ce) {
                return verdict(false, e);
            }
            rechecked += 1;
        }
    }
    let star6 = write_graph6(&star(6).unwrap());
    let c9 = report.verdict("C9").unwrap();
    let has_star_witness = c9.counterexamples.iter().any(|ce| {
        let sides = [&ce.values.left, &ce.values.right];
        ce.witness_g6.as_deref() == Some(star6.as_str())
            && sides.contains(&&Scalar::Int(80))
            && sides.contains(&&Scalar::Int(20))
    });
    if !has_star_witness {
        return verdict(false, "C9 has no recorded S_6 witness with 80 vs 20");
    }
    for id in ["C5", "C8"] {
        let fails = report.verdict(id).unwrap().fails;
        if fails != 0 {
            return verdict(false, format!("{id} has {fails} failures"));
        }
    }
    let failing = report.claims.iter().filter(|v| v.fails > 0).count();
    verdict(
        true,
        format!("31 verdicts ({failing} with failures); {rechecked} counterexamples re-verified; C9 witness {star6}"),
    )
}

// ------------------------------------------------------------------ 7

fn fibonacci_irr_via_pipeline() -> Result<u64, String> {
    let gen = irrtree(&["gen", "fib", "--n", "10", "--fib-convention", "paper"], None);
    if !gen.status.success() {
        return Err("gen fib failed".into());
    }
    let idx = irrtree(&["indices"], Some(&gen.stdout));
    if !idx.status.success() {
        return Err(format!("indices failed: {}", String::from_utf8_lossy(&idx.stderr)));
    }
    let json: serde_json::Value = serde_json::from_slice(&idx.stdout).map_err(|e| e.to_string())?;
    json["irr"].as_u64().ok_or_else(|| "no irr field".into())
}

fn fibonacci_record(report_path: &Path) -> Verdict {
    let (first, second) = match (fibonacci_irr_via_pipeline(), fibonacci_irr_via_pipeline()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return verdict(false, e),
    };
    if first != second {
        return verdict(false, format!("pipeline not reproducible: {first} vs {second}"));
    }
    let report = load_report(report_path);
    let Some(record) = report
        .verdict("C11")
        .and_then(|v| v.records.iter().find(|r| r.reported_value == Some(Scalar::Int(12319))))
    else {
        return verdict(false, "C11 carries no record with reported value 12319");
    };
    let computed = Scalar::Int(first as i64);
    if record.computed_value != computed || record.matches != Some(first == 12319) {
        return verdict(
            false,
            format!("record computed {} / match {:?} vs pipeline {first}", record.computed_value, record.matches),
        );
    }
    verdict(true, format!("computed irr {first}, reported 12319, match={}", first == 12319))
}

// ------------------------------------------------------------------ 8

fn determinism(first_report: &Path, dir: &Path) -> Verdict {
    let second = dir.join("report-2.json");
    if let Err(e) = run_harness(&second) {
        return verdict(false, e);
    }
    let a = std::fs::read(first_report).unwrap();
    let b = std::fs::read(&second).unwrap();
    let arrays = |bytes: &[u8]| serde_json::to_vec(&serde_json::from_slice::<serde_json::Value>(bytes).unwrap()["claims"]).unwrap();
    if a != b || arrays(&a) != arrays(&b) {
        return verdict(false, "reports differ between identical runs");
    }
    verdict(true, format!("reports byte-identical ({} bytes)", a.len()))
}

fn main() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report-1.json");

    let secs = Duration::from_secs;
    let criteria: Vec<(u32, &str, Option<Duration>, Box<dyn Fn() -> Verdict>)> = vec![
        (1, "closed-form family values", Some(secs(1)), Box::new(closed_forms)),
        (2, "free-tree counts vs labeled-tree oracle", Some(secs(60)), Box::new(enumeration_counts)),
        (3, "index identity suite, n = 2..9", None, Box::new(identity_suite)),
        (4, "sandwich invariants, n = 4..10", Some(secs(30)), Box::new(sandwich_invariants)),
        (5, "extremal identification, n = 4..10", None, Box::new(extremal_identification)),
        (6, "claim harness end-to-end", Some(secs(300)), Box::new(|| harness_end_to_end(&report))),
        (7, "Fibonacci reproduction record", None, Box::new(|| fibonacci_record(&report))),
        (8, "determinism of the claim harness", None, Box::new(|| determinism(&report, &dir))),
    ];

    let mut failed = 0;
    for (number, name, budget, check) in &criteria {
        let start = Instant::now();
        let v = check();
        let elapsed = start.elapsed();
        let v = within_budget(v, elapsed, *budget);
        if !v.pass {
            failed += 1;
        }
        println!(
            "{} criterion {number}: {name} — {} [{:.2?}]",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            elapsed
        );
    }
    let _ = std::fs::remove_dir_all(&dir);
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
