//! Exit-code contract and output-shape tests for the command-line front end.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specialis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn classify_m2_has_two_rows() {
    let out = run(&["classify", "--m-max", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "genus,m,N,a,d,shimura_dim");
    assert_eq!(lines.count(), 2);
}

#[test]
fn classify_json_is_byte_stable() {
    let a = run(&["classify", "--m-max", "12", "--n-max", "6", "--format", "json"]);
    let b = run(&["classify", "--m-max", "12", "--n-max", "6", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn classify_out_file_matches_stdout() {
    let dir = std::env::temp_dir().join("specialis-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("families.json");
    let piped = run(&["classify", "--m-max", "6", "--format", "json"]);
    let to_file = run(&[
        "classify",
        "--m-max",
        "6",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
}

#[test]
fn classify_plain_strips_banner() {
    let banner = run(&["classify", "--m-max", "4"]);
    let plain = run(&["classify", "--m-max", "4", "--plain"]);
    assert!(stdout(&banner).starts_with("special cyclic-cover families"));
    assert!(stdout(&plain).starts_with("genus"));
}

#[test]
fn classify_genus_cap() {
    let out = run(&["classify", "--m-max", "24", "--genus-max", "2", "--format", "csv"]);
    assert!(out.status.success());
    // one genus-1 family and four genus-2 families
    assert_eq!(stdout(&out).lines().count(), 6);
}

#[test]
fn charp_cartier_rejects_bad_character() {
    let out = run(&[
        "charp", "cartier", "m=3 a=1,1,2,2", "--p", "7", "--symbolic", "--n", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("out of range"));
}

#[test]
fn classify_rejects_bad_flags() {
    let out = run(&["classify", "--m-max", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["classify", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["classify", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inspect_reports_the_criterion() {
    let out = run(&["inspect", "m=6 a=1,1,1,3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("genus: 4"));
    assert!(text.contains("d: 0,0,1,1,2"));
    assert!(text.contains("shimura_dim: 1"));
    assert!(text.contains("verdict: special"));

    let out = run(&["inspect", "m=5 a=1,1,1,2", "--format", "json"]);
    let row: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(row["special"], true);
    assert_eq!(row["genus"], 4);
}

#[test]
fn inspect_names_the_violated_constraint() {
    let out = run(&["inspect", "m=3 a=1,1,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("sum of local monodromies not divisible by m"));

    let out = run(&["inspect", "m=6 a=2,2,4,4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("disconnected"));
}

#[test]
fn inspect_flags_zero_dimensional_data() {
    let out = run(&["inspect", "m=3 a=1,1,1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("zero-dimensional"));
    let out = run(&["inspect", "m=3 a=1,1,1", "--format", "json"]);
    let row: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(row["zero_dimensional"], true);
}

#[test]
fn charp_prank_cross_checks() {
    let out = run(&[
        "charp", "prank", "m=2 a=1,1,1,1,1,1", "--p", "7", "--branch", "0,1,2,3,4,5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("p-rank:"));
    assert!(text.contains("agree"));
}

#[test]
fn charp_rejects_bad_primes() {
    let out = run(&["charp", "prank", "m=3 a=1,1,2,2", "--p", "5", "--branch", "0,1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("p = 5 does not satisfy p = 1 (mod m)"));

    let out = run(&["charp", "prank", "m=2 a=1,1,1,1", "--p", "9", "--branch", "0,1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn charp_gate_exceeded_is_resource_error() {
    let out = run(&["charp", "count", "m=2 a=1,1,1,1", "--p", "5", "--branch", "0,1,2,3", "--k", "60"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("gate"));
}

#[test]
fn gate_env_var_overrides_the_exponent() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_specialis"));
    cmd.args(["charp", "count", "m=2 a=1,1,1,1", "--p", "5", "--branch", "0,1,2,3", "--k", "2"])
        .env("SPECIALIS_GATE_BITS", "4");
    let out = cmd.output().unwrap();
    // 5^2 = 25 > 2^4, so the tightened gate rejects a run the default allows
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["charp", "count", "m=2 a=1,1,1,1", "--p", "5", "--branch", "0,1,2,3", "--k", "2"]);
    assert!(out.status.success());
}

#[test]
fn classify_rejects_zero_jobs() {
    let out = run(&["classify", "--m-max", "4", "--jobs", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn charp_cartier_symbolic_json_term_lists() {
    let out = run(&[
        "charp", "cartier", "m=2 a=1,1,1,1", "--p", "3", "--symbolic", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let blocks = v["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 1);
    let rows = blocks[0]["rows"].as_array().unwrap();
    let entry = rows[0][0].as_array().unwrap();
    // e_2(t1..t4) has six terms, each {coeffs, value}
    assert_eq!(entry.len(), 6);
    assert!(entry[0].get("coeffs").is_some());
    assert!(entry[0].get("value").is_some());
}

#[test]
fn charp_count_and_lpoly_shapes() {
    let out = run(&[
        "charp", "count", "m=3 a=1,1,2,2", "--p", "7", "--branch", "0,1,2,3", "--k", "2",
        "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["k"], 2);
    assert!(v["count"].as_u64().unwrap() > 0);

    let out = run(&["charp", "lpoly", "m=2 a=1,1,1,1", "--p", "5", "--branch", "0,1,2,3"]);
    assert_eq!(stdout(&out).trim(), "L(T) = 1 + 2*T + 5*T^2");
}

#[test]
fn charp_variation_requires_symbolic() {
    let out = run(&[
        "charp", "variation", "m=2 a=1,1,1", "--p", "3", "--branch", "0,1,2", "--allow-infinity",
        "--n", "1", "--var", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "charp", "variation", "m=2 a=1,1,1", "--p", "3", "--symbolic", "--allow-infinity",
        "--n", "1", "--var", "3",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[ 2 ]"));
}

#[test]
fn datum_syntax_is_whitespace_insensitive() {
    let tight = run(&["inspect", "m=4 a=1,1,2,2,2"]);
    let airy = run(&["inspect", " m = 4  a = 1 , 1 , 2 , 2 , 2 "]);
    assert_eq!(tight.stdout, airy.stdout);
}
