use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn das(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_das"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn dims_table() {
    let o = das(&["dims", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "n\tNov(n)\tDAs(n)\n1\t1\t1\n2\t2\t4\n3\t6\t36\n"
    );
}

#[test]
fn dims_json() {
    let o = das(&["dims", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[1]["das"], 4);
    assert_eq!(v[1]["nov"], 2);
}

#[test]
fn identities_all_ok() {
    let o = das(&["identities"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "(4) OK\n(5) OK\n(6) OK\n(7) OK\n");
}

#[test]
fn experiments_degree_three() {
    let o = das(&["experiments", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("prec-only rank 12 of 12 terms"));
    assert!(out.contains("commutator rank 12 of 12 terms"));
}

#[test]
fn tau_of_term() {
    let o = das(&["tau", "(x1 < (x2 > x3))"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "x1 x2' x3' + x1 x2'' x3\n");
}

#[test]
fn tau_syntax_error() {
    let o = das(&["tau", "(x1 < x2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn preimage_of_word() {
    let o = das(&["preimage", "x1 x2'' x3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "(x1 < (x2 > x3)) - ((x1 < x2) < x3)\n");
}

#[test]
fn preimage_rejects_wrong_weight() {
    assert_eq!(code(&das(&["preimage", "x1 x2"])), 2);
}

#[test]
fn basis_small_alphabet() {
    let o = das(&["basis", "--alphabet", "x,y", "--max-length", "2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("x\tx\ny\ty\n"));
    assert!(out.contains("x' y\t(x > y)\n"));
    assert!(out.ends_with("10 words\n"));
}

#[test]
fn reduce_in_matrix_envelope() {
    let m2 = data("m2.json");
    let o = das(&["reduce", "--spec", &m2, "e11 e12'"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "-e12\n");
    let seeded = das(&["reduce", "--spec", &m2, "e11 e12'", "--seed", "7"]);
    assert_eq!(stdout(&seeded), "-e12\n");
}

#[test]
fn reduce_unknown_generator() {
    let o = das(&["reduce", "--spec", &data("m2.json"), "q'"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn reduce_needs_spec() {
    assert_eq!(code(&das(&["reduce", "e11"])), 2);
}

#[test]
fn confluence_is_byte_stable() {
    let m2 = data("m2.json");
    let args = [
        "confluence",
        "--spec",
        &m2,
        "--max-length",
        "3",
        "--seed",
        "5",
    ];
    let a = das(&args);
    let b = das(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), "words checked: 420\ndivergences: 0\n");
}

#[test]
fn confluence_json_schema() {
    let o = das(&[
        "confluence",
        "--spec",
        &data("m2.json"),
        "--max-length",
        "2",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["words_checked"], 36);
    assert!(v["divergences"].as_array().unwrap().is_empty());
    assert!(v["elapsed"].is_number());
}

#[test]
fn embed_check_euler_algebra() {
    let o = das(&[
        "embed-check",
        "--spec",
        &data("euler.json"),
        "--threads",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("embedding check: passed\n"));
}

#[test]
fn embed_check_m3_short_words() {
    let o = das(&[
        "embed-check",
        "--spec",
        &data("m3.json"),
        "--max-length",
        "3",
        "--trials",
        "2",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn perturbed_spec_is_rejected() {
    let o = das(&["embed-check", "--spec", &data("perturbed.json")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("(5) fails on basis triple"));
}

#[test]
fn critical_pairs_converge() {
    let o = das(&[
        "critical-pairs",
        "--spec",
        &data("m2.json"),
        "--n",
        "1",
        "--m",
        "2",
        "--context-length",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("divergences: 0"));
}

#[test]
fn critical_pairs_zero_order() {
    let o = das(&["critical-pairs", "--spec", &data("m2.json"), "--n", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn matrix_example_matches_checked_in_spec() {
    let o = das(&["matrix-example", "3", "0", "1", "2", "--json"]);
    assert_eq!(code(&o), 0);
    let fresh: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let stored: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(data("m3.json")).unwrap()).unwrap();
    assert_eq!(fresh, stored);
    let text = stdout(&das(&["matrix-example", "3", "0", "1", "2"]));
    assert!(text.contains("identities: OK\nsimple: yes\n"));
}

#[test]
fn matrix_example_arity() {
    assert_eq!(code(&das(&["matrix-example", "2", "0"])), 2);
}

#[test]
fn unknown_subcommand() {
    assert_eq!(code(&das(&["frobnicate"])), 2);
}
