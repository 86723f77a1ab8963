use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rho-lattice"))
        .args(args)
        .output()
        .expect("spawn rho-lattice")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("json");
    assert_eq!(v["schema"], "rho-lattice/1");
    v
}

fn coeffs(v: &Value) -> Vec<(String, String)> {
    v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c[0].as_str().unwrap().to_string(), c[1].as_str().unwrap().to_string()))
        .collect()
}

fn q(n: &str, d: &str) -> (String, String) {
    (n.into(), d.into())
}

#[test]
fn ring_examples() {
    let f = json(&["ring", "f", "--N", "4"]);
    assert_eq!(f["N"], 4);
    assert_eq!(f["kind"], "truncated");
    assert_eq!(coeffs(&f), vec![q("1", "2"), q("1", "1"), q("1", "2")]);
    let inv = json(&["ring", "(1-x)^-1", "--N", "4"]);
    assert_eq!(coeffs(&inv), vec![q("3", "4"), q("1", "2"), q("1", "4")]);
    let zero = json(&["ring", "1+x+x^2+x^3", "--N", "4"]);
    assert!(coeffs(&zero).iter().all(|(n, _)| n == "0"));
}

#[test]
fn parse_errors_exit_2() {
    let out = run(&["ring", "1 + $", "--N", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at 4"));
    let out = run(&["ring", "1/(1-x)", "--N", "4", "--ideal", "group_ring"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn structure_set_examples() {
    let factors = |v: &Value| -> Vec<u64> {
        v["torsion"]["factors"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
    };
    let a = json(&["structure-set", "--N", "3", "--d", "3"]);
    assert_eq!(a["free_rank"], 1);
    assert!(factors(&a).is_empty());
    let b = json(&["structure-set", "--N", "4", "--d", "5"]);
    assert_eq!(b["free_rank"], 1);
    assert_eq!(factors(&b), vec![2, 2, 4, 4]);
    let c = json(&["structure-set", "--N", "2", "--d", "3", "--method", "closed"]);
    assert_eq!(c["free_rank"], 0);
    assert_eq!(factors(&c), vec![2, 2]);
    assert!(c.get("members").is_none());
}

#[test]
fn suspend_tau() {
    let v = json(&["suspend", "--named", "tau", "--N", "8", "--d", "4"]);
    assert_eq!(v["new_t4_values"], serde_json::json!([2, 6]));
    assert_eq!(v["candidates"].as_array().unwrap().len(), 2);
}

#[test]
fn mu_has_unit_invariants() {
    let v = json(&["invariants", "--named", "mu", "--N", "8", "--d", "5"]);
    assert_eq!(v["coordinates"], serde_json::json!([0, 0, 0, 1]));
    let b = json(&["torsion-basis", "--N", "8", "--d", "5"]);
    assert_eq!(b["orders"], serde_json::json!([4, 8, 2, 2]));
}

#[test]
fn element_json_round_trips_through_invariants() {
    let b = json(&["torsion-basis", "--N", "8", "--d", "5"]);
    let mu8 = b["mu4"][1].to_string();
    let v = json(&["invariants", "--element", &mu8]);
    assert_eq!(v["coordinates"], serde_json::json!([0, 1, 0, 0]));
}

#[test]
fn transfer_reduces_coordinates() {
    let b = json(&["torsion-basis", "--N", "8", "--d", "5"]);
    let mu4 = b["mu4"][0].to_string();
    let v = json(&["transfer", "--element", &mu4, "--to", "4"]);
    assert_eq!(v["params"]["N"], 4);
    assert_eq!(v["coords"]["t4"], serde_json::json!([2, 2]));
    let bad = r#"{"params":{"N":8,"d":5,"k":1},"coords":{"t4":[3,5],"t4m2":[1,0]}}"#;
    assert_eq!(run(&["transfer", "--element", bad, "--to", "4"]).status.code(), Some(2));
}

#[test]
fn tsv_output() {
    let out = run(&["--format", "tsv", "ring", "f", "--N", "4"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0\t1/2\n1\t1\n2\t1/2\n");
}

#[test]
fn verify_kernel_small() {
    let out = run(&["verify", "--suite", "kernel", "--max-N", "8"]);
    assert!(out.status.success());
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let (summary, checks) = lines.split_last().unwrap();
    assert!(checks.len() >= 20);
    assert!(checks.iter().all(|c| c["status"] == "pass" && c["schema"] == "rho-lattice/1"));
    assert_eq!(summary["summary"]["failed"], 0);
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "--suite", "lemmas", "--seed", "7"]);
    let b = run(&["verify", "--suite", "lemmas", "--seed", "7", "-j", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_reproducer_filters() {
    let out = run(&["verify", "--only", "thm-main-kernel", "--param", "N=12", "--param", "d=5"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
}
