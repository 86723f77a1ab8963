//! The verification harness: named checks over parameter sweeps, run on a
//! worker pool and reported in a fixed order.

mod checks;

use std::collections::BTreeMap;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::tagged;
use crate::surgery::DEFAULT_CAP;

pub use checks::all_tasks;

/// The default `N` sweep.
pub const DEFAULT_NS: [usize; 10] = [2, 3, 4, 5, 6, 8, 9, 12, 16, 24];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Ring,
    Lemmas,
    Kernel,
    Suspension,
    Torsion,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Ring => "ring",
            Suite::Lemmas => "lemmas",
            Suite::Kernel => "kernel",
            Suite::Suspension => "suspension",
            Suite::Torsion => "torsion",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "ring" => Suite::Ring,
            "lemmas" => Suite::Lemmas,
            "kernel" => Suite::Kernel,
            "suspension" => Suite::Suspension,
            "torsion" => Suite::Torsion,
            _ => return Err(Error::InvalidParams(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    /// Upper bound on `N`; each statement keeps its own range otherwise.
    pub max_n: Option<usize>,
    pub max_d: usize,
    pub seed: u64,
    /// Worker threads; `None` uses every core.
    pub workers: Option<usize>,
    pub cap: u128,
    /// Run only this statement id.
    pub only: Option<String>,
    /// Run only tasks with these parameter values.
    pub params: Vec<(String, i64)>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suite: Suite::All,
            max_n: None,
            max_d: 8,
            seed: 0,
            workers: None,
            cap: DEFAULT_CAP,
            only: None,
            params: Vec::new(),
        }
    }
}

impl VerifyConfig {
    pub(crate) fn n_ok(&self, n: usize) -> bool {
        self.max_n.is_none_or(|m| n <= m)
    }
}

pub type Params = Vec<(&'static str, i64)>;

/// What a check returns: a short note on success, a witness on failure.
pub type Outcome = std::result::Result<String, String>;

pub(crate) struct Ctx {
    pub rng: ChaCha8Rng,
    pub cap: u128,
}

pub struct Task {
    pub id: &'static str,
    pub suite: Suite,
    pub params: Params,
    pub(crate) run: Box<dyn Fn(&mut Ctx) -> Outcome + Send + Sync>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub id: String,
    pub suite: Suite,
    pub params: Params,
    pub status: Status,
    /// Note on success, witness on failure.
    pub detail: String,
    pub reproducer: Option<String>,
}

impl CheckRecord {
    pub fn params_json(&self) -> Value {
        let m: serde_json::Map<String, Value> =
            self.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        Value::Object(m)
    }

    pub fn params_str(&self) -> String {
        let parts: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.join(",")
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "id": self.id,
            "suite": self.suite,
            "params": self.params_json(),
            "status": self.status,
        });
        let key = if self.status == Status::Pass { "detail" } else { "witness" };
        v[key] = json!(self.detail);
        if let Some(r) = &self.reproducer {
            v["reproducer"] = json!(r);
        }
        tagged(v)
    }

    pub fn to_tsv(&self) -> String {
        let status = if self.status == Status::Pass { "pass" } else { "fail" };
        let detail = self.detail.replace(['\t', '\n'], " ");
        format!("{}\t{}\t{status}\t{detail}", self.id, self.params_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub per_statement: BTreeMap<String, (usize, usize)>,
}

impl Summary {
    fn add(&mut self, r: &CheckRecord) {
        self.total += 1;
        let e = self.per_statement.entry(r.id.clone()).or_default();
        if r.status == Status::Pass {
            self.passed += 1;
            e.0 += 1;
        } else {
            self.failed += 1;
            e.1 += 1;
        }
    }

    pub fn to_json(&self, suite: Suite) -> Value {
        let per: serde_json::Map<String, Value> = self
            .per_statement
            .iter()
            .map(|(k, (p, f))| (k.clone(), json!({"pass": p, "fail": f})))
            .collect();
        tagged(json!({
            "suite": suite,
            "summary": {
                "total": self.total,
                "passed": self.passed,
                "failed": self.failed,
                "per_statement": per,
            }
        }))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Stable 64-bit FNV-1a, used to derive per-task seeds.
fn fnv(bytes: impl IntoIterator<Item = u8>) -> u64 {
    bytes.into_iter().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

fn task_seed(seed: u64, id: &str, params: &Params) -> u64 {
    let key = format!("{id}|{params:?}");
    seed ^ fnv(key.bytes())
}

pub fn reproducer(id: &str, params: &Params, seed: u64) -> String {
    let ps: String = params.iter().map(|(k, v)| format!(" --param {k}={v}")).collect();
    format!("rho-lattice verify --only {id}{ps} --seed {seed}")
}

fn run_task(t: &Task, cfg: &VerifyConfig) -> CheckRecord {
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(task_seed(cfg.seed, t.id, &t.params)),
        cap: cfg.cap,
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| (t.run)(&mut ctx))).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let (status, detail) = match outcome {
        Ok(d) => (Status::Pass, d),
        Err(w) => (Status::Fail, w),
    };
    CheckRecord {
        id: t.id.to_string(),
        suite: t.suite,
        params: t.params.clone(),
        reproducer: (status == Status::Fail).then(|| reproducer(t.id, &t.params, cfg.seed)),
        status,
        detail,
    }
}

/// Tasks selected by the config, sorted by statement id then params.
pub fn select_tasks(cfg: &VerifyConfig) -> Vec<Task> {
    let mut tasks: Vec<Task> = all_tasks(cfg)
        .into_iter()
        .filter(|t| cfg.suite.includes(t.suite))
        .filter(|t| cfg.only.as_deref().is_none_or(|id| id == t.id))
        .filter(|t| {
            cfg.params
                .iter()
                .all(|(k, v)| t.params.iter().any(|(tk, tv)| *tk == k.as_str() && tv == v))
        })
        .collect();
    tasks.sort_by(|a, b| a.id.cmp(b.id).then_with(|| a.params.cmp(&b.params)));
    tasks
}

/// Runs the selected checks. Records are handed to `emit` in the final
/// sorted order, one statement at a time, as soon as that statement is done.
pub fn run_verify(cfg: &VerifyConfig, mut emit: impl FnMut(&CheckRecord)) -> Result<VerifyReport> {
    let tasks = select_tasks(cfg);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParams(format!("worker pool: {e}")))?;
    let mut summary = Summary::default();
    let mut checks = Vec::with_capacity(tasks.len());
    let mut start = 0;
    while start < tasks.len() {
        let id = tasks[start].id;
        let end = start + tasks[start..].iter().take_while(|t| t.id == id).count();
        let batch: Vec<CheckRecord> =
            pool.install(|| tasks[start..end].par_iter().map(|t| run_task(t, cfg)).collect());
        for r in batch {
            summary.add(&r);
            emit(&r);
            checks.push(r);
        }
        start = end;
    }
    Ok(VerifyReport { suite: cfg.suite, checks, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suite: Suite, max_n: usize) -> VerifyConfig {
        VerifyConfig { suite, max_n: Some(max_n), max_d: 5, seed: 7, workers: Some(2), ..Default::default() }
    }

    #[test]
    fn ids_are_sorted_and_deterministic() {
        let a = run_verify(&cfg(Suite::Lemmas, 8), |_| {}).unwrap();
        let b = run_verify(&VerifyConfig { workers: Some(1), ..cfg(Suite::Lemmas, 8) }, |_| {}).unwrap();
        assert_eq!(a.checks, b.checks);
        assert!(a.all_passed(), "{:?}", a.checks.iter().find(|c| c.status == Status::Fail));
        let keys: Vec<_> = a.checks.iter().map(|c| (c.id.clone(), c.params.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn filters_and_reproducers() {
        let c = VerifyConfig {
            only: Some("thm-main-kernel".into()),
            params: vec![("N".into(), 12), ("d".into(), 5)],
            ..VerifyConfig::default()
        };
        let r = run_verify(&c, |_| {}).unwrap();
        assert_eq!(r.checks.len(), 2);
        assert!(r.all_passed());
        assert_eq!(
            reproducer("x", &vec![("N", 4), ("d", 3)], 9),
            "rho-lattice verify --only x --param N=4 --param d=3 --seed 9"
        );
    }

    #[test]
    fn kernel_suite_small() {
        let r = run_verify(&cfg(Suite::Kernel, 8), |_| {}).unwrap();
        assert!(r.summary.total >= 20);
        assert!(r.all_passed(), "{:?}", r.checks.iter().find(|c| c.status == Status::Fail));
    }
}
