use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel).display().to_string()
}

fn fdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdim"))
        .args(args)
        .env_remove("FDIM_BUDGET")
        .env_remove("FDIM_ORACLE_BUDGET")
        .output()
        .unwrap()
}

/// Runs and parses stdout, asserting the exit code.
fn json(args: &[&str], code: i32) -> Value {
    let out = fdim(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn info_reports_commutator_data() {
    let v = json(&["info", &data("algebras/heisenberg.json")], 0);
    assert_eq!(v["summary"], "class 2, l1=1 l2=0 m=1 n=2, F=[[0,T1],[-T1,0]]");
    assert_eq!(v["torsion_exponent"], "1");
    let v = json(&["info", &data("algebras/abelian2.json")], 0);
    assert_eq!((v["class"].as_u64(), v["l2"].as_u64(), v["n"].as_u64()), (Some(1), Some(2), Some(0)));
    assert!(v["summary"].as_str().unwrap().ends_with("F empty"));
}

#[test]
fn broken_jacobi_is_a_precondition_failure() {
    for cmd in ["info", "validate"] {
        let out = fdim(&[cmd, &data("algebras/broken-jacobi.json")]);
        assert_eq!(out.status.code(), Some(2));
        assert!(stderr(&out).contains("(1, 2, 4)"), "{}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn metabelian_methods_agree() {
    let v = json(&["fdim", "--metabelian", "2", "3", "--p", "5", "--f", "1", "--all-methods"], 0);
    assert_eq!(v["value"], 10);
    assert_eq!(v["agreement"], true);
    let methods: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["method"].as_str().unwrap()).collect();
    assert_eq!(methods, ["closed-form-metabelian", "engine-field", "oracle"]);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["value"] == 10));
    assert_eq!(v["oracle"]["r_g"], 2);
}

#[test]
fn pattern_over_a_ramified_ring() {
    let v = json(&["fdim", "--pattern", &data("posets/chain3.json"), "--p", "5", "--e", "2", "--d", "2", "--all-methods"], 0);
    // 5^2 + 5 from the single extreme pair with α = 1
    assert_eq!(v["value"], 30);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["skipped"][0]["method"], "oracle");
}

#[test]
fn exit_codes() {
    let out = fdim(&["fdim", &data("algebras/heisenberg.json"), "--p", "2", "--f", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Lazard"));
    // p is never defaulted
    assert_eq!(fdim(&["fdim", &data("algebras/heisenberg.json")]).status.code(), Some(1));
    assert_eq!(fdim(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(fdim(&["info", "/nonexistent/algebra.json"]).status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_fdim"))
        .args(["fdim", "--metabelian", "2", "3", "--p", "5"])
        .env("FDIM_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("125"), "{}", stderr(&out));
    assert_eq!(fdim(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_algebra_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"rank\": 2,\n  \"brackets\": [\n}").unwrap();
    let out = fdim(&["info", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn splitting_examples() {
    let v = json(&["splitting", "1,0,1", "--p", "5"], 0);
    assert_eq!(v["degrees"], serde_json::json!([1, 1]));
    assert_eq!(v["ramified"], false);
    let v = json(&["splitting", "1,0,1", "--p", "2"], 0);
    assert_eq!(v["ramified"], true);
    let v = json(&["splitting", "-2,0,0,1", "--pmax", "100"], 0);
    let freqs = v["frequencies"].as_array().unwrap();
    let total: u64 = freqs.iter().map(|f| f[1].as_u64().unwrap()).sum();
    assert_eq!(total, v["unramified"].as_u64().unwrap());
    // 25 primes below 100, of which 2 and 3 divide the discriminant -108
    assert_eq!(total, 23);
}

#[test]
fn explore_fits_one_polynomial() {
    let v = json(&["explore", &data("algebras/heisenberg.json"), "--primes", "5,7,11", "--fs", "1,2"], 0);
    assert_eq!(v["single_class"], true);
    assert_eq!(v["fit"]["classes"][0][0], serde_json::json!([1]));
    let v = json(&["explore", "--metabelian", "2", "3", "--primes", "5,7", "--fs", "1,2"], 0);
    assert_eq!(v["fit"]["classes"][0][0], serde_json::json!([1, 1]));
    let v = json(&["explore", &data("algebras/abelian2.json"), "--primes", "5,7"], 0);
    assert!(v["fit"]["cells"].as_array().unwrap().iter().all(|c| c["polynomial"] == "2" && c["value"] == 2));
}

#[test]
fn explore_ring_grid_checks_bounds() {
    let v = json(&["explore", &data("algebras/heisenberg.json"), "--primes", "5", "--es", "1,2", "--ds", "1,2"], 0);
    let rings = v["rings"].as_array().unwrap();
    assert_eq!(rings.len(), 2);
    for cell in rings {
        assert_eq!(cell["bounds"]["attains_upper"], true, "{cell}");
    }
}

#[test]
fn generated_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let m23 = dir.path().join("m23.json");
    json(&["metabelian-gen", "2", "3", "-o", m23.to_str().unwrap()], 0);
    let v = json(&["info", m23.to_str().unwrap()], 0);
    assert_eq!((v["class"].as_u64(), v["rank"].as_u64()), (Some(3), Some(5)));
    assert_eq!(json(&["fdim", m23.to_str().unwrap(), "--p", "7"], 0)["value"], 14);

    let chain = dir.path().join("chain3.json");
    json(&["pattern-gen", "--chain", "3", "-o", chain.to_str().unwrap()], 0);
    let from_file = json(&["fdim", chain.to_str().unwrap(), "--p", "5", "--d", "2"], 0);
    let from_poset = json(&["fdim", "--pattern", &data("posets/chain3.json"), "--p", "5", "--d", "2"], 0);
    assert_eq!(from_file["value"], from_poset["value"]);
    let v = json(&["validate", "--poset", &data("posets/diamond.json")], 0);
    assert_eq!((v["max_alpha"].as_u64(), v["class"].as_u64()), (Some(2), Some(2)));
}

#[test]
fn orbit_table() {
    let v = json(&["orbits", &data("algebras/heisenberg.json"), "--p", "3"], 0);
    // 9 linear characters and 2 of degree 3
    assert_eq!(v["group_order"], 27);
    assert_eq!(v["dimension_histogram"], serde_json::json!([[1, 9], [3, 2]]));
}

#[test]
fn output_and_manifest_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let input = data("algebras/filiform4.json");
    let run = |name: &str| {
        let manifest = dir.path().join(name);
        let out = fdim(&["--manifest", manifest.to_str().unwrap(), "fdim", &input, "--p", "5", "--oracle"]);
        assert_eq!(out.status.code(), Some(0));
        let m: Value = serde_json::from_str(&std::fs::read_to_string(manifest).unwrap()).unwrap();
        (out.stdout, m)
    };
    let (a, ma) = run("a.json");
    let (b, mb) = run("b.json");
    assert_eq!(a, b);
    assert_eq!(ma["results"], mb["results"]);
    assert_eq!(ma["results"], serde_json::from_slice::<Value>(&a).unwrap());
    let digest: String = Sha256::digest(std::fs::read(&input).unwrap()).iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(ma["inputs"][0]["sha256"], digest);
    assert_eq!(ma["budgets"]["engine"], 20_000_000);
    assert!(!String::from_utf8_lossy(&a).contains("elapsed"));
}
