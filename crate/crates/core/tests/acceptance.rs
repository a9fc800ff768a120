//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the terminal.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hotkit::choiverify::{self, Tolerances};
use hotkit::suite::{self, Config, Entry};

/// Monotone subtypes with output set `outputs`, by brute force over every
/// truth table; independent of the library.
fn brute_monotone_subtypes(n: usize, outputs: u32) -> usize {
    let size = 1u32 << n;
    let full = size - 1;
    let inputs = full & !outputs;
    let mut count = 0;
    for table in 0u64..(1u64 << size) {
        let f = |s: u32| table >> s & 1 == 1;
        if !f(0) {
            continue;
        }
        if (0..n).any(|i| f(1 << i) != (outputs >> i & 1 == 1)) {
            continue;
        }
        let lower = |s: u32| s & inputs == 0;
        let upper = |s: u32| !(s & outputs == 0 && s != 0);
        if (0..size).any(|s| (lower(s) && !f(s)) || (f(s) && !upper(s))) {
            continue;
        }
        let monotone = (0..size).all(|s| {
            (0..n).all(|i| {
                let bit = 1 << i;
                if s & bit != 0 {
                    return true;
                }
                let (lo, hi) = (f(s), f(s | bit));
                if outputs & bit != 0 {
                    !lo || hi
                } else {
                    !hi || lo
                }
            })
        });
        if monotone {
            count += 1;
        }
    }
    count
}

/// Distinct chain types with output set `outputs`: alternating sums of
/// `p_S` over strict chains of even length, evaluated directly.
fn brute_chain_types(n: usize, outputs: u32) -> usize {
    let size = 1u32 << n;
    let p = |t: u32, s: u32| (t & s == 0) as i64;
    let mut found = BTreeSet::new();
    let mut stack: Vec<Vec<u32>> = (0..size).map(|s| vec![s]).collect();
    while let Some(chain) = stack.pop() {
        if (chain.len() - 1) % 2 == 0 {
            let mut table = 0u64;
            for s in 0..size {
                let v: i64 = chain.iter().enumerate().map(|(k, &t)| if k % 2 == 0 { p(t, s) } else { -p(t, s) }).sum();
                assert!(v == 0 || v == 1, "chain types are boolean");
                table |= (v as u64) << s;
            }
            let io: u32 = (0..n).filter(|&i| table >> (1u32 << i) & 1 == 1).map(|i| 1 << i).sum();
            if io == outputs {
                found.insert(table);
            }
        }
        let last = *chain.last().expect("nonempty");
        for next in 0..size {
            if next != last && next & last == last {
                let mut c = chain.clone();
                c.push(next);
                stack.push(c);
            }
        }
    }
    found.len()
}

struct Criterion {
    id: usize,
    title: &'static str,
    ok: bool,
    detail: String,
}

fn entries(names: &[&str], cfg: &Config) -> Vec<Entry> {
    names.iter().map(|n| suite::run(n, cfg).expect("suite runs")).collect()
}

fn from_suites(id: usize, title: &'static str, names: &[&str], cfg: &Config, limit: Option<Duration>) -> Criterion {
    let start = Instant::now();
    let es = entries(names, cfg);
    let elapsed = start.elapsed();
    let cases: usize = es.iter().map(|e| e.cases).sum();
    let failures: usize = es.iter().map(|e| e.failures).sum();
    let mut detail = format!("{cases} cases, {failures} failures, {:.1}s", elapsed.as_secs_f64());
    if let Some(first) = es.iter().find_map(|e| e.first_failure.clone()) {
        detail.push_str(&format!("; first: {first}"));
    }
    let in_time = limit.is_none_or(|l| elapsed < l);
    if !in_time {
        detail.push_str(&format!("; over the {}s limit", limit.expect("set").as_secs()));
    }
    Criterion { id, title, ok: failures == 0 && cases > 0 && in_time, detail }
}

fn main() -> ExitCode {
    let cfg = Config { max_n: 4, samples: 10_000, seed: 0x5eed };
    let mut out = Vec::new();

    // 1: regular-subtype counts, with brute-force oracles alongside
    let start = Instant::now();
    let mut c1 = from_suites(1, "regular-subtype counts", &["counts"], &cfg, Some(Duration::from_secs(10)));
    let oracle = [
        ("monotone subtypes n=3 O={1,3}", brute_monotone_subtypes(3, 0b101), 5),
        ("monotone subtypes n=4 O={1,3}", brute_monotone_subtypes(4, 0b0101), 50),
        ("chain types n=4 O={1,3}", brute_chain_types(4, 0b0101), 14),
    ];
    for (what, got, want) in oracle {
        if got != want {
            c1.ok = false;
            c1.detail.push_str(&format!("; oracle {what}: {got} != {want}"));
        }
    }
    c1.detail.push_str(&format!(" (oracles {:.1}s)", start.elapsed().as_secs_f64()));
    out.push(c1);

    out.push(from_suites(2, "regular = monotone subtypes, n <= 4", &["regular"], &cfg, Some(Duration::from_secs(120))));
    out.push(from_suites(3, "signalling by value = pair-rank parity, n <= 5", &["signalling"], &cfg, None));
    out.push(from_suites(4, "Mobius integrality and poset reconstruction, n <= 5", &["mobius"], &cfg, None));
    out.push(from_suites(5, "causal products of types, a + b <= 5", &["causal-type"], &cfg, None));
    out.push(from_suites(6, "golden signalling tables", &["signalling-goldens"], &cfg, None));
    out.push(from_suites(7, "worked normal forms and minimax", &["normal-form-goldens"], &cfg, None));
    out.push(from_suites(8, "synthesis leaf bound, n <= 4", &["synthesis"], &cfg, None));

    let mut c9 = from_suites(9, "Choi projection identities", &["choi"], &cfg, Some(Duration::from_secs(300)));
    let tol = Tolerances::default();
    if tol.identity != 1e-9 || tol.construction != 1e-10 || choiverify::IDENTITY_TOL != 1e-9 {
        c9.ok = false;
        c9.detail.push_str("; tolerances drifted from 1e-9 / 1e-10");
    }
    out.push(c9);

    let mut c10 = from_suites(
        10,
        "lemma suites, exhaustive n <= 4 plus sampled n = 5",
        &["causal-algebra", "subtype-closure", "poset-lemmas", "poset-ops", "signalling-ops", "basic-strings"],
        &cfg,
        None,
    );
    if cfg.samples < 10_000 {
        c10.ok = false;
        c10.detail.push_str("; fewer than 10^4 random cases");
    }
    out.push(c10);

    let mut failed = 0;
    for c in &out {
        let status = if c.ok { "PASS" } else { "FAIL" };
        println!("{status} criterion {:>2}: {} ({})", c.id, c.title, c.detail);
        failed += usize::from(!c.ok);
    }
    println!("{} of {} criteria pass", out.len() - failed, out.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
