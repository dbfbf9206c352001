use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn preoperad(args: &[&str]) -> (i32, Value, String) {
    let Output { status, stdout, stderr } =
        Command::new(env!("CARGO_BIN_EXE_preoperad")).args(args).output().unwrap();
    let doc = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    (status.code().unwrap(), doc, String::from_utf8_lossy(&stderr).into_owned())
}

#[test]
fn cohomology_of_split_algebra() {
    let (code, doc, _) = preoperad(&["cohomology", "--algebra", &fixture("split_qxq.json")]);
    assert_eq!(code, 0);
    let dims: Vec<u64> = doc["report"]["degrees"].as_array().unwrap().iter().map(|d| d["dim_h"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![2, 0, 0, 0]);
    let rec = &doc["report"]["degrees"][0];
    for key in ["degree", "dim_ker", "dim_im", "dim_h", "representatives"] {
        assert!(rec.get(key).is_some(), "missing {key}");
    }
    assert!(doc["report"]["oracles"]["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn dual_numbers_low_degree() {
    let (code, doc, _) = preoperad(&["cohomology", "--algebra", &fixture("dual_numbers.json"), "--max-degree", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["degrees"][1]["dim_h"], 1);
}

#[test]
fn non_associative_input_exits_3_with_witness() {
    for cmd in ["cohomology", "gerstenhaber"] {
        let (code, doc, err) = preoperad(&[cmd, "--algebra", &fixture("nonassociative.json")]);
        assert_eq!(code, 3);
        assert_eq!(doc["error"]["kind"], "associativity_required");
        assert!(err.contains("(a·a)·a"), "{err}");
    }
}

#[test]
fn verify_non_associative_marks_conditioned_checks() {
    let (code, doc, _) = preoperad(&[
        "verify", "--algebra", &fixture("nonassociative.json"), "--max-degree", "2", "--samples", "10", "--random-only",
    ]);
    assert_eq!(code, 0);
    let records = doc["report"]["records"].as_array().unwrap();
    for check in ["delta_squared_zero", "cup_associativity_g3"] {
        assert!(records.iter().filter(|r| r["check"] == check).all(|r| r["status"] == "not_applicable"));
    }
    assert!(records.iter().any(|r| r["check"] == "getzler" && r["status"] == "pass"));
    assert!(records.iter().all(|r| r["status"] != "fail"));
}

#[test]
fn configuration_errors_exit_2() {
    let (code, doc, _) = preoperad(&["verify", "--algebra", "/nonexistent.json"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "load");
    let (code, _, err) = preoperad(&["cohomology", "--algebra", &fixture("matrix_m2.json"), "--memory-cap", "100"]);
    assert_eq!(code, 2);
    assert!(err.contains("--memory-cap"), "{err}");
    let (code, _, _) = preoperad(&["cohomology", "--algebra", &fixture("dual_numbers.json"), "--field", "10"]);
    assert_eq!(code, 2);
}

#[test]
fn prime_field_override_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (code, _, _) = preoperad(&[
        "gerstenhaber", "--algebra", &fixture("dual_numbers.json"), "--field", "10007", "--max-degree", "2",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(doc["report"]["field"], "F_10007");
    assert_eq!(doc["report"]["gerstenhaber"]["unit_class"], serde_json::json!(["1", "0"]));
    assert!(doc["metadata"]["elapsed_seconds"].is_number());
}
