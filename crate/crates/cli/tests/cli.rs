use std::process::Command;

use filtra_cli::workspace::{parse, serialize};

const WORKSPACE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/a2.fws");

fn filtra(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_filtra")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn write_temp(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("filtra-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn fixture_round_trips() {
    let text = std::fs::read_to_string(WORKSPACE).unwrap();
    let ws = parse(&text).unwrap();
    assert_eq!(parse(&serialize(&ws)).unwrap(), ws);
    assert_eq!(serialize(&parse(&serialize(&ws)).unwrap()), serialize(&ws));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["-w", WORKSPACE, "precover", "S1", "--theta", "full", "--verify", "--max-dim", "2,2"],
        vec!["-w", WORKSPACE, "reorder", "--filtration", "F"],
        vec!["-w", WORKSPACE, "enumerate", "--max-dim", "2,2"],
    ] {
        assert_eq!(filtra(&args), filtra(&args));
    }
}

#[test]
fn reorder_puts_the_larger_label_first() {
    let (code, out) = filtra(&["-w", WORKSPACE, "reorder", "--filtration", "F"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["input"]["labels"], serde_json::json!([1, 2]));
    assert_eq!(doc["filtration"]["labels"], serde_json::json!([2, 1]));
}

#[test]
fn exit_codes() {
    assert_eq!(filtra(&["-w", WORKSPACE, "check-theta", "wrong"]).0, 1);
    assert_eq!(filtra(&["-w", WORKSPACE, "filter", "S2", "--theta", "mixed"]).0, 1);
    assert_eq!(filtra(&["-w", WORKSPACE, "hom", "S1", "nope"]).0, 2);
    assert_eq!(filtra(&["-w", WORKSPACE, "frobnicate"]).0, 2);
    let bad = write_temp("cyclic.fws", "field 2\nvertices 2\narrow a 1 2\narrow b 2 1\n");
    let (code, out) = filtra(&["-w", &bad, "enumerate", "--max-dim", "1,1"]);
    assert_eq!(code, 2);
    assert!(out.contains("quiver must be acyclic"));
    let bad = write_temp("field.fws", "field 4\n");
    assert_eq!(filtra(&["-w", &bad, "enumerate", "--max-dim", "1"]).0, 2);
}

#[test]
fn budget_override_reports_the_bound() {
    let out = Command::new(env!("CARGO_BIN_EXE_filtra"))
        .args(["-w", WORKSPACE, "enumerate", "--max-dim", "3,3"])
        .env("FILTRA_BUDGET", "25")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("25"));
}
