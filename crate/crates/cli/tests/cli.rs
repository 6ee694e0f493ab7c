use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let p = if name == "b4_building.json" { root.join("../../data").join(name) } else { root.join("tests/data").join(name) };
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fyforge")).args(args).env_remove("FYFORGE_ATOM_CAP").output().expect("spawn")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn validate_exit_codes() {
    let ok = run(&["validate", "--matroid", &data("free4.json"), "--building", "file", "--building-file", &data("b4_building.json")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["valid"], true);

    let bad = run(&["validate", "--matroid", &data("parallel.json")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("simple loopless violated"));

    assert_eq!(run(&["validate", "--matroid", &data("malformed.json")]).status.code(), Some(2));
}

#[test]
fn certify_examples() {
    let lm = run(&["certify", "--family=lm", "--m=2", "--n=2", "--building=graphical"]);
    assert_eq!(lm.status.code(), Some(0));
    assert_eq!(json(&lm)["quadratic_gb"]["is_groebner"], true);

    let c6 = run(&["certify", "--family=cycle", "--n=6", "--building=graphical"]);
    assert_eq!(c6.status.code(), Some(0));
    let v = json(&c6);
    assert_eq!(v["quadratic_gb"]["is_groebner"], false);
    assert!(v["quadratic_gb"]["certificate"]["spoly_normal_form"].as_str().unwrap().contains('h'));

    let k4 = run(&["certify", "--family=complete", "--n=4", "--building=graphical"]);
    assert_eq!(json(&k4)["hilbert"], serde_json::json!([1, 5, 1]));
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["certify", "--graph", &data("c4.json")]);
    let b = run(&["certify", "--graph", &data("c4.json")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn counterexample_replays() {
    assert_eq!(run(&["counterexamples"]).status.code(), Some(0));
    let swapped = run(&["counterexamples", "--triple-cycle", "5"]);
    assert_eq!(swapped.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&swapped.stderr).contains("expected false, got true"));
    let empty = run(&["counterexamples", "--only", ""]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(json(&empty), serde_json::json!([]));
}

#[test]
fn atom_cap_and_input_errors() {
    let capped = Command::new(env!("CARGO_BIN_EXE_fyforge"))
        .args(["hilbert", "--family", "complete", "--n", "4"])
        .env("FYFORGE_ATOM_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(run(&["hilbert", "--family", "cycle"]).status.code(), Some(2));
    assert_eq!(run(&["bijection", "--family", "cycle", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn sweep_and_bijection() {
    let s = run(&["family-sweep", "--family", "chordal", "--n", "3", "--seed", "3"]);
    assert_eq!(s.status.code(), Some(0));
    let rows = json(&s);
    assert_eq!(rows.as_array().unwrap().len(), 5);
    assert!(rows.as_array().unwrap().iter().all(|r| r["properties_passed"] == true));

    let b = run(&["bijection", "--family", "partition", "--n", "4", "--building", "min", "--max-weight", "1"]);
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(json(&b)["anm"], serde_json::json!([1, 5]));

    let t = run(&["hilbert", "--family", "star", "--n", "3", "--format", "table"]);
    assert!(String::from_utf8_lossy(&t.stdout).contains("hilbert"));
}
