use std::fs;
use std::path::Path;

use assert_cmd::Command;
use predicates::prelude::*;
use tempfile::TempDir;

fn hypersym() -> Command {
    Command::cargo_bin("hypersym").expect("binary builds")
}

fn export(dir: &Path, fixture: &str) -> std::path::PathBuf {
    let path = dir.join(format!("{fixture}.json"));
    hypersym().args(["export", "--fixture", fixture, "-o"]).arg(&path).assert().success();
    path
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn verify_writes_certificates() {
    let dir = TempDir::new().unwrap();
    let h = export(dir.path(), "directed_path");
    let certs = dir.path().join("certs.json");
    hypersym()
        .args(["verify", "inclusion_exclusion", "--degree", "5", "-i"])
        .arg(&h)
        .arg("--certificates")
        .arg(&certs)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"passed\": true"));
    assert!(!json(&certs)["certificates"].as_array().unwrap().is_empty());
}

#[test]
fn aut_methods_agree() {
    let dir = TempDir::new().unwrap();
    let h = export(dir.path(), "directed_cycle3");
    let mut outputs = Vec::new();
    for method in ["brute", "backtrack"] {
        let out = dir.path().join(format!("{method}.json"));
        hypersym().args(["aut", "--elements", "--method", method, "-i"]).arg(&h).arg("-o").arg(&out).assert().success();
        let mut v = json(&out);
        v.as_object_mut().unwrap().remove("method");
        outputs.push(v);
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0]["order"], 3);
    hypersym().args(["aut", "--method", "both", "-i"]).arg(&h).assert().success();
}

#[test]
fn gh_rejects_isolated_vertex() {
    let dir = TempDir::new().unwrap();
    let h = export(dir.path(), "isolated_vertex");
    hypersym()
        .args(["present", "--flavor", "gh", "-i"])
        .arg(&h)
        .assert()
        .code(1)
        .stderr(predicate::str::contains("multigraph without isolated vertices required"));
}

#[test]
fn encode_decode_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.json");
    let doc = r#"{"kind":"directed","vertices":["a","b","c"],"edges":[["a","b"],["c","b"]]}"#;
    fs::write(&g, doc).unwrap();
    let h = dir.path().join("h.json");
    hypersym().args(["encode", "-i"]).arg(&g).arg("-o").arg(&h).assert().success();
    let back = dir.path().join("back.json");
    hypersym().args(["decode", "-i"]).arg(&h).arg("-o").arg(&back).assert().success();
    assert_eq!(json(&back), serde_json::from_str::<serde_json::Value>(doc).unwrap());
}

#[test]
fn decode_none_is_inconclusive() {
    let dir = TempDir::new().unwrap();
    let h = export(dir.path(), "hyper_burst");
    hypersym().args(["decode", "-i"]).arg(&h).assert().code(2).stdout(predicate::str::contains("none"));
}

#[test]
fn witness_then_check_rep() {
    let dir = TempDir::new().unwrap();
    let h = dir.path().join("g41.json");
    hypersym().args(["build", "--kind", "gamma-nm", "--n", "4", "--m", "1", "-o"]).arg(&h).assert().success();
    let rep = dir.path().join("rep.json");
    let report = dir.path().join("report.json");
    hypersym().args(["witness", "-i"]).arg(&h).arg("--rep").arg(&rep).arg("-o").arg(&report).assert().success();
    let norm = json(&report)["noncommutativity"]["norm"].as_f64().unwrap();
    assert!((norm - 0.5).abs() < 1e-9);
    let pres = dir.path().join("pres.json");
    hypersym().args(["present", "--format", "object", "-i"]).arg(&h).arg("-o").arg(&pres).assert().success();
    hypersym().args(["check-rep", "--rep"]).arg(&rep).arg("--presentation").arg(&pres).assert().success();

    let mut broken = json(&rep);
    broken["assign"][0]["matrix"][0][0] = serde_json::json!([0.5, 0.0]);
    fs::write(&rep, broken.to_string()).unwrap();
    hypersym().args(["check-rep", "--rep"]).arg(&rep).arg("--presentation").arg(&pres).assert().code(1);
}

#[test]
fn witness_unavailable_exits_two() {
    let dir = TempDir::new().unwrap();
    let h = export(dir.path(), "gamma22");
    hypersym().args(["witness", "-i"]).arg(&h).assert().code(2).stdout(predicate::str::contains("not_available"));
}

#[test]
fn search_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let h = export(dir.path(), "directed_cycle3");
    let run = || {
        let out = hypersym().args(["witness", "--dim", "1", "--seed", "7", "-i"]).arg(&h).assert().success();
        out.get_output().stdout.clone()
    };
    assert_eq!(run(), run());
}

#[test]
fn checks_and_transforms() {
    let dir = TempDir::new().unwrap();
    let h = export(dir.path(), "single_directed_edge");
    hypersym().args(["coproduct-check", "--degree", "4", "-i"]).arg(&h).assert().success();
    hypersym().args(["coaction-check", "--degree", "6", "-i"]).arg(&h).assert().success();
    hypersym()
        .args(["transform", "--which", "opposite", "-i"])
        .arg(&h)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"s\": [\n        \"b\""));
    hypersym().args(["info", "-i"]).arg(&h).assert().success().stdout(predicate::str::contains("\"graph_kind\": \"directed\""));
    hypersym()
        .args(["present", "--flavor", "cstar", "--format", "free-algebra", "-i"])
        .arg(&h)
        .assert()
        .success();
}

#[test]
fn unknown_degree_exits_two() {
    let dir = TempDir::new().unwrap();
    let h = export(dir.path(), "directed_path");
    hypersym().args(["verify", "product_commutes", "--degree", "1", "-i"]).arg(&h).assert().code(2);
}

#[test]
fn errors_are_single_line() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"vertices":["a"],"edges":[{"id":"e","s":["c"],"r":[]}]}"#).unwrap();
    let out = hypersym().args(["info", "-i"]).arg(&bad).assert().code(1);
    let err = String::from_utf8(out.get_output().stderr.clone()).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1);
    assert!(err.contains("unknown vertex"));
    hypersym().args(["info", "--bogus"]).assert().code(1);
    hypersym().arg("--help").assert().success();
}
