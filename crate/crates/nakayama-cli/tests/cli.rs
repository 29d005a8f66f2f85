use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_nakayama")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(v).unwrap()).unwrap();
    path
}

/// The algebra file of a gallery structure.
fn gallery_file(dir: &Path, args: &[&str], name: &str) -> PathBuf {
    let mut full = vec!["gallery"];
    full.extend_from_slice(args);
    let (code, report) = run(&full);
    assert_eq!(code, 0, "{report}");
    write(dir, name, &report["result"]["algebra"])
}

fn failing(report: &Value) -> Vec<&Value> {
    report["checks"].as_array().unwrap().iter().filter(|c| c["status"] != "pass").collect()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gallery_qci_verifies() {
    let (code, report) = run(&["gallery", "qci", "--q", "2", "--verify-all", "--seed", "42"]);
    assert_eq!(code, 0, "{:?}", failing(&report));
    assert_eq!(report["status"], "pass");
    assert!(report["checks"].as_array().unwrap().len() > 20);
    assert!(report["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    let args = ["gallery", "exterior", "--n", "2", "--verify-all", "--seed", "7"];
    assert_eq!(strip(run(&args).1), strip(run(&args).1));
}

#[test]
fn symmetric_form_gives_identity_nakayama() {
    let dir = TempDir::new().unwrap();
    let file = gallery_file(dir.path(), &["matrix", "--n", "2"], "m2.json");
    let (code, report) = run(&["nakayama", "--file", s(&file)]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["sigma_is_identity"], true);
}

#[test]
fn non_endomorphism_is_rejected_with_pair() {
    let dir = TempDir::new().unwrap();
    let file = gallery_file(dir.path(), &["qci", "--q", "2"], "qci.json");
    // x ↦ x, y ↦ 1: fails on (x, y)
    let mut cols = vec![vec!["0"; 4]; 4];
    cols[0][0] = "1";
    cols[1][1] = "1";
    cols[2][0] = "1";
    cols[3][3] = "1";
    let map = write(dir.path(), "u.json", &json!({ "schema": 1, "role": "automorphism", "columns": cols }));
    let (code, report) = run(&["jacobian", "--file", s(&file), "--map", s(&map)]);
    assert_eq!(code, 1);
    let f = failing(&report);
    assert_eq!(f[0]["witness"]["violation"]["pair"], json!([1, 2]), "{report}");
}

#[test]
fn jacobian_of_diagonal_automorphism() {
    let dir = TempDir::new().unwrap();
    let file = gallery_file(dir.path(), &["qci", "--q", "2"], "qci.json");
    // basis 1, x, y, xy; alpha(2,3,0,0)
    let cols = [["1", "0", "0", "0"], ["0", "2", "0", "0"], ["0", "0", "3", "0"], ["0", "0", "0", "6"]];
    let map = write(dir.path(), "u.json", &json!({ "schema": 1, "role": "automorphism", "columns": cols }));
    let (code, report) = run(&["jacobian", "--file", s(&file), "--map", s(&map)]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["jacobian"], "6*1");
}

#[test]
fn divergence_and_liouville_of_nilpotent_derivation() {
    let dir = TempDir::new().unwrap();
    let file = gallery_file(dir.path(), &["qci", "--q", "3"], "qci.json");
    // delta(0,0,1,0): x ↦ xy, y ↦ 0
    let mut cols = vec![vec!["0"; 4]; 4];
    cols[1][3] = "1";
    let map = write(dir.path(), "d.json", &json!({ "schema": 1, "role": "derivation", "columns": cols }));
    let (code, report) = run(&["divergence", "--file", s(&file), "--map", s(&map)]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["divergence"], "y");
    let (code, report) = run(&["liouville", "--file", s(&file), "--map", s(&map)]);
    assert_eq!(code, 0, "{report}");
}

#[test]
fn inconsistent_unit_is_reported() {
    let dir = TempDir::new().unwrap();
    let bad = json!({
        "schema": 1, "field": { "kind": "rationals" }, "dim": 2, "unit": ["1", "0"],
        "structure": [[0, 0, 0, "1"], [0, 1, 1, "1"]]
    });
    let file = write(dir.path(), "bad.json", &bad);
    let (code, report) = run(&["check-algebra", "--file", s(&file)]);
    assert_eq!(code, 1);
    assert_eq!(failing(&report)[0]["witness"]["basis"], 1);
}

#[test]
fn finite_field_residues_normalize() {
    let dir = TempDir::new().unwrap();
    let alg = json!({
        "schema": 1, "field": { "kind": "prime", "p": 3 }, "dim": 1, "unit": ["4"],
        "structure": [[0, 0, 0, "1"]], "gram": [["2"]]
    });
    let file = write(dir.path(), "f3.json", &alg);
    let (code, report) = run(&["check-algebra", "--file", s(&file)]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["symmetric_form"], true);
}

#[test]
fn cohomology_commands_pass_on_qci() {
    let dir = TempDir::new().unwrap();
    let file = gallery_file(dir.path(), &["qci", "--q", "1/2"], "qci.json");
    for cmd in ["frobenius", "derivations", "hochschild", "verify-main-theorem", "homology"] {
        let (code, report) = run(&[cmd, "--file", s(&file), "--max-degree", "2"]);
        assert_eq!(code, 0, "{cmd}: {:?}", failing(&report));
    }
    let (_, report) = run(&["hochschild", "--file", s(&file)]);
    let dims: Vec<u64> = report["result"]["cohomology"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [2, 2, 1]);
}

#[test]
fn crossed_product_of_exterior_sign_action() {
    let dir = TempDir::new().unwrap();
    let file = gallery_file(dir.path(), &["exterior", "--n", "1"], "ext.json");
    let cp = json!({
        "schema": 1,
        "group": { "table": [[0, 1], [1, 0]] },
        "action": [[["1", "0"], ["0", "1"]], [["1", "0"], ["0", "-1"]]],
        "cocycle": [["1", "1"], ["1", "-3"]]
    });
    let cp = write(dir.path(), "cp.json", &cp);
    let (code, report) = run(&["crossed-product", "--file", s(&file), "--crossed", s(&cp)]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["dim"], 4);
}

#[test]
fn missing_gram_fails_and_field_override_applies() {
    let dir = TempDir::new().unwrap();
    let alg = json!({ "schema": 1, "field": { "kind": "rationals" }, "dim": 1, "unit": ["1"], "structure": [[0, 0, 0, "1"]] });
    let file = write(dir.path(), "k.json", &alg);
    let (code, _) = run(&["frobenius", "--file", s(&file)]);
    assert_eq!(code, 1);
    let (code, report) = run(&["check-algebra", "--file", s(&file), "--field", "F2[1,1,1]"]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["field"]["kind"], "extension");
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(run(&["frobenius"]).0, 3);
    assert_eq!(run(&["frobenius", "--file", "/nonexistent.json"]).0, 3);
    assert_eq!(run(&["gallery", "qci", "--field", "F4"]).0, 3);
    assert_eq!(run(&["verify-all", "--criterion", "14"]).0, 3);
}

#[test]
fn single_criterion_runs() {
    let (code, report) = run(&["verify-all", "--criterion", "2"]);
    assert_eq!(code, 0, "{:?}", failing(&report));
    assert_eq!(report["result"]["criteria"][0]["status"], "pass");
}
