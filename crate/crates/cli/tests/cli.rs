use std::process::Command;

use serde_json::Value;
use sumfree_cli::run;

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["sumfree"];
    argv.extend_from_slice(args);
    let (code, out) = run(argv);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

fn data(name: &str) -> String {
    format!("{}/../../data/certificates/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn mu_of_seven() {
    let (code, r) = json(&["mu", "--group", "7"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["mu_n"], 2);
    assert_eq!(r["results"]["nu"], "2/7");
}

#[test]
fn count_of_four() {
    let (code, r) = json(&["count", "--group", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["sf_count"], 5);
}

#[test]
fn classify_and_construct() {
    let (_, r) = json(&["classify", "--group", "3x5"]);
    assert_eq!(r["results"]["type"], "I(5)");
    assert_eq!(r["results"]["nu"], "2/5");
    let (code, r) = json(&["construct", "--group", "2x2x2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["size"], 4);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(["sumfree", "frobnicate"]).0, 2);
    assert_eq!(run(["sumfree", "mu"]).0, 2);
    assert_eq!(json(&["mu", "--group", "0x3"]).0, 2);
    assert_eq!(json(&["verify-kp", "--group", "5", "--a", "1,9", "--b", "1", "--t", "1"]).0, 2);
    assert_eq!(run(["sumfree", "mu", "--group", "7", "--node-limit", "0"]).0, 2);
}

#[test]
fn budget_exhaustion_exits_three() {
    let (code, r) = json(&["count", "--group", "30", "--node-limit", "10"]);
    assert_eq!(code, 3);
    assert_eq!(r["passed"], false);
}

#[test]
fn check_failures_exit_one() {
    let (code, _) = json(&["cover", "--group", "7", "--set", "1,2", "--kind", "kneser"]);
    assert_eq!(code, 1);
    let (code, _) = json(&["profile", "--group", "7", "--set", "3,4"]);
    assert_eq!(code, 0);
}

#[test]
fn output_is_deterministic() {
    for args in [&["mu", "--group", "2x6"][..], &["lp", "sweep", "--qmax", "200"], &["granularize", "--group", "20", "--set", "1,4,6,9", "--L", "2", "--L-prime", "1", "--eps", "1/4"]] {
        let mut argv = vec!["sumfree"];
        argv.extend_from_slice(args);
        let a = run(argv.clone());
        let b = run(argv);
        assert_eq!(a, b);
    }
}

#[test]
fn help_texts_name_the_result() {
    let cases = [
        ("classify", "ν(G)"),
        ("mu", "μ(G) = ν(G)"),
        ("count", "σ(G)"),
        ("verify-kp", "Pollard–Kneser"),
        ("cover", "Vosper"),
        ("granularize", "Granularization"),
        ("profile", "special direction"),
        ("construct", "extremal"),
        ("repro", "acceptance"),
    ];
    for (cmd, phrase) in cases {
        let (code, out) = run(["sumfree", cmd, "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains(phrase), "{cmd}: {out}");
    }
    for (cmd, phrase) in [("verify", "Weak-duality"), ("solve", "weak duality"), ("sweep", "Closed-form")] {
        let (code, out) = run(["sumfree", "lp", cmd, "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains(phrase), "{cmd}: {out}");
    }
}

#[test]
fn lp_verify_published_file() {
    let (code, r) = json(&["lp", "verify", "--cert", &data("q31_l5.json"), "--bits", "64"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["route"], "verbatim");
    let (code, r) = json(&["lp", "verify", "--cert", &data("q73_l12.json"), "--bits", "64"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["route"], "regenerated");
}

#[test]
fn lp_solve_with_extra_rows() {
    let (code, r) = json(&["lp", "solve", "--q", "19", "--l", "3", "--extra", "14<=0", "--target", "0.01"]);
    assert_eq!(code, 0, "{r}");
    assert!(r["results"]["bound"].as_f64().unwrap() >= 0.01);
    let (code, _) = json(&["lp", "solve", "--q", "7", "--l", "1", "--target", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn lp_sweep_lists() {
    let (code, r) = json(&["lp", "sweep", "--qmax", "1000"]);
    assert_eq!(code, 0);
    let list = |k: &str| r["results"][k].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect::<Vec<_>>();
    assert_eq!(list("small_l"), vec![7, 13, 19]);
    assert_eq!(list("l_k_minus_1"), vec![7, 13, 19, 31]);
    assert_eq!(list("l_k"), vec![7, 13, 19, 31, 37, 43, 49, 61, 67, 73]);
    let (_, csv) = run(["sumfree", "lp", "sweep", "--qmax", "100", "--format", "csv"]);
    assert!(csv.starts_with("q,l,bound\n7,0,"));
}

#[test]
fn repro_small_targets() {
    let (code, r) = json(&["repro", "lem34"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["criteria"][0]["passed"], true);
    let (code, out) = run(["sumfree", "repro", "e0-closed-forms", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS 1/1"));
}

#[test]
fn binary_exit_codes_and_env_bits() {
    let bin = env!("CARGO_BIN_EXE_sumfree");
    let st = Command::new(bin).args(["mu", "--group", "7"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let st = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(!st.stderr.is_empty());
    let out = Command::new(bin).args(["classify", "--group", "7"]).env("SUMFREE_BITS", "40").output().unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["config"]["bits"], 40);
}
