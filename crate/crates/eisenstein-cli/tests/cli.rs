use std::process::{Command, Output};

use eisenstein::arith::primes::{eisenstein_primes, primes_in};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eisenstein")).args(args).output().expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("JSON line")).collect()
}

fn single(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let mut recs = records(&out);
    assert_eq!(recs.len(), 1, "{args:?}: {recs:?}");
    (recs.remove(0), out.status.code().unwrap())
}

#[test]
fn eichler_level_11() {
    let (rec, code) = single(&["eichler", "--N", "11"]);
    assert_eq!(code, 0);
    assert_eq!(rec["mass"], "10/12");
    assert_eq!(rec["mass_match"], true);
    assert_eq!(rec["disc_match"], true);
    assert_eq!(rec["disc_closed"], 2);
}

#[test]
fn criteria_examples() {
    let (rec, _) = single(&["criteria", "--N", "181", "--p", "5"]);
    assert_eq!((rec["ge2"].as_bool(), rec["ge3"].as_bool()), (Some(true), Some(true)));
    let (rec, code) = single(&["criteria", "--N", "11", "--p", "7"]);
    assert_eq!(rec["status"], "error");
    assert_eq!(rec["error"], "NotEisensteinPrime");
    assert_eq!(code, 0, "bad input is not a theorem failure");
    let (rec, _) = single(&["criteria", "--N", "15"]);
    assert_eq!(rec["error"], "CompositeModulus");
}

#[test]
fn criteria_scan_covers_every_pair() {
    let out = run(&["criteria", "--range", "5..500", "--p", "all"]);
    assert!(out.status.success());
    let recs = records(&out);
    let expected: Vec<(u64, u64)> =
        primes_in(5, 500).into_iter().flat_map(|n| eisenstein_primes(n).into_iter().map(move |p| (n, p))).collect();
    let got: Vec<(u64, u64)> = recs.iter().map(|r| (r["N"].as_u64().unwrap(), r["p"].as_u64().unwrap())).collect();
    assert_eq!(got, expected);
    assert!(recs.iter().all(|r| r["status"] == "ok"));
}

#[test]
fn gp_matches_published_rows() {
    for (n, p, g) in [("181", "5", 3), ("1381", "23", 3)] {
        let (rec, code) = single(&["gp", "--N", n, "--p", p]);
        assert_eq!(code, 0);
        assert_eq!(rec["g_p"], g);
        assert_eq!(rec["golden"]["match"], true);
    }
    let (rec, _) = single(&["gp", "--N", "3001", "--p", "5", "--r", "1"]);
    assert_eq!((rec["t"].as_u64(), rec["g_p"].as_u64()), (Some(3), Some(6)));
    assert_eq!(rec["z_profile"], Value::Null, "the profile needs every modulus");
    let (rec, _) = single(&["gp", "--N", "181", "--p", "5", "--with-atkin-lehner"]);
    assert_eq!(rec["g_p"], 3);
}

#[test]
fn gp_rejects_out_of_range_modulus() {
    let (rec, _) = single(&["gp", "--N", "181", "--p", "5", "--r", "2"]);
    assert_eq!(rec["error"], "RangeError");
}

#[test]
fn generator_bound_is_reported() {
    let (rec, _) = single(&["gp", "--N", "181", "--p", "5", "--gens-max-prime", "13"]);
    assert_eq!(rec["error"], "GeneratorInstability");
}

#[test]
fn supersingular_pairings_at_181() {
    let (rec, code) = single(&["supersingular", "--N", "181", "--p", "5", "--pairings"]);
    assert_eq!(code, 0);
    assert_eq!(rec["e1_dot_e0"], 0);
    assert_eq!(rec["e1_dot_e1"], 0);
    assert_eq!(rec["lambdas"], 90);
    assert!(rec["verdicts"].as_array().unwrap().iter().all(|v| v["outcome"] != "fail"));
}

#[test]
fn conjecture_sweep_summary() {
    let out = run(&["conjectures", "--max-N", "200", "--p", "5"]);
    assert!(out.status.success());
    let recs = records(&out);
    let summary = recs.last().unwrap();
    assert_eq!(summary["summary"], true);
    assert_eq!(summary["items"].as_u64().unwrap() as usize, recs.len() - 1);
    for (id, t) in summary["tally"].as_object().unwrap() {
        if id.starts_with("prop_") {
            assert_eq!(t["fail"], 0, "{id}");
        }
    }
}

#[test]
fn identity_suite_with_p2_companion() {
    let (rec, code) = single(&["identity-suite", "--N", "17", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(rec["f02"]["passed"], true);
    assert!(rec["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn output_formats() {
    let out = run(&["criteria", "--range", "5..40", "--p", "all", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.split(',').any(|c| c == "ge2"));
    assert_eq!(text.lines().count(), 1 + records(&run(&["criteria", "--range", "5..40", "--p", "all"])).len());
    let out = run(&["criteria", "--N", "181", "--p", "5", "--format", "human"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("ge3=true"));
}

#[test]
fn single_threaded_runs_are_identical() {
    let args = ["criteria", "--range", "5..300", "--threads", "1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let parallel = run(&["criteria", "--range", "5..300", "--threads", "4"]);
    assert_eq!(run(&args).stdout, parallel.stdout, "order does not depend on scheduling");
}

#[test]
fn cache_hits_equal_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["gp", "--range", "5..200", "--p", "all"];
    let fresh = run(&args);
    let cold = run(&[&args[..], &["--cache-dir", cache]].concat());
    let warm = run(&[&args[..], &["--cache-dir", cache]].concat());
    assert_eq!(fresh.stdout, cold.stdout);
    assert_eq!(fresh.stdout, warm.stdout);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
}

#[test]
fn theorem_failure_sets_exit_code() {
    // A corrupted cache entry claiming a failed check must surface as exit 1.
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    assert!(run(&["eichler", "--N", "11", "--cache-dir", cache]).status.success());
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut rec: Value = serde_json::from_str(&std::fs::read_to_string(&entry).unwrap()).unwrap();
    rec["theorem_failure"] = Value::Bool(true);
    std::fs::write(&entry, rec.to_string()).unwrap();
    assert_eq!(run(&["eichler", "--N", "11", "--cache-dir", cache]).status.code(), Some(1));
}

#[test]
fn budget_produces_timeout_records() {
    let (rec, code) = single(&["gp", "--N", "4229", "--p", "7", "--budget-secs", "0.05"]);
    assert_eq!(rec["status"], "timeout");
    assert_eq!(code, 0);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["criteria"]).status.code(), Some(2));
    assert_eq!(run(&["criteria", "--range", "9..3"]).status.code(), Some(2));
    assert_eq!(run(&["criteria", "--N", "11", "--p", "9"]).status.code(), Some(2));
}
