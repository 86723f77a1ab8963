//! One pass/fail line per acceptance criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the table.

use std::time::{Duration, Instant};

use rho_lattice::verify::{run_verify, CheckRecord, Status, Suite, VerifyConfig, VerifyReport};

struct Criterion {
    no: u32,
    name: &'static str,
    suite: Suite,
    ids: &'static [&'static str],
    max_n: Option<usize>,
    min_checks: usize,
    budget: Option<Duration>,
}

fn run(c: &Criterion) -> (bool, String) {
    let cfg = VerifyConfig { suite: c.suite, max_n: c.max_n, seed: 0, ..Default::default() };
    let start = Instant::now();
    let report: VerifyReport = run_verify(&cfg, |_| {}).expect("harness");
    let elapsed = start.elapsed();
    let picked: Vec<&CheckRecord> =
        report.checks.iter().filter(|r| c.ids.is_empty() || c.ids.contains(&r.id.as_str())).collect();
    let failed: Vec<&&CheckRecord> = picked.iter().filter(|r| r.status == Status::Fail).collect();
    let mut ok = failed.is_empty() && picked.len() >= c.min_checks;
    let mut note = format!("{} checks, {} failed, {:.2}s", picked.len(), failed.len(), elapsed.as_secs_f64());
    if let Some(b) = c.budget {
        ok &= elapsed < b;
        note += &format!(" (budget {}s)", b.as_secs());
    }
    if let Some(f) = failed.first() {
        note += &format!("; first failure {} {}: {}", f.id, f.params_str(), f.detail);
    }
    (ok, note)
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        no: 1,
        name: "brute-force kernel matches the closed form over the sweep",
        suite: Suite::Kernel,
        ids: &["thm-main-kernel"],
        max_n: None,
        min_checks: 60,
        budget: None,
    },
    Criterion {
        no: 2,
        name: "rank clauses over the sweep",
        suite: Suite::Kernel,
        ids: &["thm-main-rank", "rank-lattice-vs-formula"],
        max_n: None,
        min_checks: 60,
        budget: None,
    },
    Criterion {
        no: 3,
        name: "f_k / f'_k identities and g f x = x for N <= 48",
        suite: Suite::Lemmas,
        ids: &["lemma-f_k", "lemma-f-inverse", "lemma-f_k-restrict"],
        max_n: Some(48),
        min_checks: 94,
        budget: Some(Duration::from_secs(30)),
    },
    Criterion {
        no: 4,
        name: "lattice membership scan for 8 t f_k, N <= 24",
        suite: Suite::Lemmas,
        ids: &["lemma-f_k-lattice-scan"],
        max_n: Some(24),
        min_checks: 23,
        budget: None,
    },
    Criterion {
        no: 5,
        name: "decomposition and M-factor lemmas, N in {6, 12, 24}",
        suite: Suite::Lemmas,
        ids: &["lemma-decomposition", "lemma-M-factor"],
        max_n: None,
        min_checks: 6,
        budget: None,
    },
    Criterion {
        no: 6,
        name: "suspension theorems, N in {2, 4, 6, 8}, e in {1, 2}",
        suite: Suite::Suspension,
        ids: &[],
        max_n: Some(8),
        min_checks: 20,
        budget: None,
    },
    Criterion {
        no: 7,
        name: "minimal exponent and torsion-coordinate round trip",
        suite: Suite::Torsion,
        ids: &["torsion-minimal-exponent", "torsion-roundtrip"],
        max_n: None,
        min_checks: 8 + 15,
        budget: None,
    },
    Criterion {
        no: 8,
        name: "divide_by_f on 100 random u per even N <= 24",
        suite: Suite::Lemmas,
        ids: &["lemma-divide-by-f"],
        max_n: Some(24),
        min_checks: 12,
        budget: None,
    },
    Criterion {
        no: 9,
        name: "verify --suite all with no failures",
        suite: Suite::All,
        ids: &[],
        max_n: None,
        min_checks: 500,
        budget: Some(Duration::from_secs(600)),
    },
];

#[test]
fn acceptance() {
    let mut all = true;
    for c in CRITERIA {
        let (ok, note) = run(c);
        all &= ok;
        println!("[{}] criterion {}: {} ({note})", if ok { "PASS" } else { "FAIL" }, c.no, c.name);
    }
    assert!(all, "some acceptance criteria failed");
}
