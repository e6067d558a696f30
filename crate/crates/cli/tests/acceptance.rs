//! Acceptance criteria 1–9, one line per criterion.
//!
//! Criteria 1–8 run the library suites with the default seed; criterion 9
//! drives the `filtra` binary. Time limits are part of each verdict.

use std::process::Command;
use std::time::{Duration, Instant};

use filtra_core::suite::{run_criterion, SuiteConfig, CRITERIA};
use serde_json::Value;

const WORKSPACE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/a2.fws");
const CLI_LIMIT: Duration = Duration::from_secs(120);

fn filtra(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_filtra"))
        .args(args)
        .output()
        .expect("filtra runs");
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), doc)
}

fn cli_examples() -> Vec<String> {
    let mut failures = Vec::new();
    let (code, doc) = filtra(&["-w", WORKSPACE, "ext", "S1", "S2"]);
    if code != 0 || doc["dimension"] != 1 {
        failures.push(format!("ext S1 S2: status {code}, dimension {}", doc["dimension"]));
    }
    let (code, doc) = filtra(&["-w", WORKSPACE, "filter", "S2", "--theta", "full"]);
    if code != 0 || doc["filtration"]["length"] != 1 {
        failures.push(format!("filter S2: status {code}, length {}", doc["filtration"]["length"]));
    }
    let (code, doc) = filtra(&["-w", WORKSPACE, "preenvelope", "S2", "--theta", "full", "--verify", "--max-dim", "3,3"]);
    if code != 0 || doc["verified"] != true || doc["approximation"]["dims"] != serde_json::json!([1, 1]) {
        failures.push(format!(
            "preenvelope S2: status {code}, verified {}, dims {}",
            doc["verified"], doc["approximation"]["dims"]
        ));
    }
    let (code, doc) = filtra(&["selftest"]);
    if code != 0 {
        failures.push(format!("selftest: status {code}, report {}", doc["report"]));
    }
    failures
}

fn main() {
    let config = SuiteConfig::default();
    let mut all = true;
    for &(id, _, _) in CRITERIA.iter() {
        let report = run_criterion(id, &config).expect("criterion exists");
        all &= report.passed();
        println!("{}", report.summary());
        for f in report.failures.iter().filter(|f| !f.is_empty()).take(5) {
            println!("    {f}");
        }
    }
    let start = Instant::now();
    let failures = cli_examples();
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed <= CLI_LIMIT;
    all &= pass;
    println!(
        "criterion 9 [{}] command-line examples and selftest: 4 cases, {} failures, {:.2}s (limit {}s)",
        if pass { "PASS" } else { "FAIL" },
        failures.len(),
        elapsed.as_secs_f64(),
        CLI_LIMIT.as_secs()
    );
    for f in &failures {
        println!("    {f}");
    }
    if !all {
        std::process::exit(1);
    }
}
