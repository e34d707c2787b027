use std::path::PathBuf;
use std::process::{Command, Output};

use lcr_core::dsl::parse;
use lcr_core::workspace::{DslError, Workspace};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(root().join("tests/golden").join(name)).unwrap()
}

fn lcr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcr")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spectrum_matches_golden() {
    let o = lcr(&["spectrum", &fixture("r8.lcr"), "R"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("spectrum_r8.json"));
}

#[test]
fn dot_output_is_stable() {
    let a = lcr(&["topology", &fixture("diagonal.lcr"), "R", "--dot"]);
    let b = lcr(&["topology", &fixture("diagonal.lcr"), "R", "--dot"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), golden("topology_diagonal.dot"));
}

#[test]
fn every_fixture_checks_cleanly() {
    for file in ["r4.lcr", "r8.lcr", "z6.lcr", "diagonal.lcr"] {
        let o = lcr(&["check", &fixture(file), "R"]);
        assert_eq!(o.status.code(), Some(0), "{file}: {}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["holds"], true);
        assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn verify_reports_every_rng() {
    let o = lcr(&["verify", &fixture("r8.lcr")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v["rngs"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["R", "S"]);
    assert_eq!(v["rngs"][0]["left_identity"], "(1,0)");
}

#[test]
fn verify_rejects_missing_local_identity() {
    let o = lcr(&["verify", &fixture("r4_no_local_identity.lcr")]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failure"]["axiom"], "local_ring");
    assert_eq!(v["failure"]["law"], "local_identity");
    assert_eq!(v["failure"]["witness"], serde_json::json!(["(0,0)", "(0,1)"]));
}

#[test]
fn nilrad_radical_and_pullback() {
    let o = lcr(&["nilrad", &fixture("r8.lcr"), "R"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nilradical"], serde_json::json!(["(0,0)", "(2,0)"]));

    let o = lcr(&["radical", &fixture("z6.lcr"), "R", "--ideal", "I"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["radical"], serde_json::json!(["0", "2", "4"]));

    let o = lcr(&["pullback", &fixture("r8.lcr"), "g"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["map"], serde_json::json!([[0, 0], [1, 1]]));
}

#[test]
fn topology_json_lists_closed_sets() {
    let o = lcr(&["topology", &fixture("r8.lcr"), "R", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["closed_sets"], serde_json::json!([[], [1], [0, 1]]));
    assert_eq!(v["even_points"], serde_json::json!([1]));
    assert_eq!(v["odd_points"], serde_json::json!([0]));
}

#[test]
fn search_counts_structures() {
    let o = lcr(&["search", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 5);
    assert_eq!(lcr(&["search", "9"]).status.code(), Some(2));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = std::env::temp_dir().join(format!("lcr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.lcr");
    std::fs::write(&bad, "ring A = Z 4\nlcr R = halo_ext A H psi\n").unwrap();
    let o = lcr(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:20: unknown name `H`"));
    assert!(o.stdout.is_empty());

    std::fs::write(&bad, "ring A = Z 4\nring B = \n").unwrap();
    assert_eq!(lcr(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(lcr(&["spectrum", &fixture("r8.lcr"), "nope"]).status.code(), Some(2));
    assert_eq!(lcr(&["verify", dir.join("missing.lcr").to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fixtures_round_trip_through_json() {
    for file in ["r4.lcr", "r8.lcr", "z6.lcr", "diagonal.lcr"] {
        let ws = parse(&std::fs::read_to_string(fixture(file)).unwrap()).unwrap();
        let json = ws.to_json();
        let back = Workspace::from_json(&json).unwrap();
        assert_eq!(back, ws, "{file}");
        assert_eq!(back.to_json(), json, "{file}");
    }
}

#[test]
fn tampered_json_is_reverified() {
    let ws = parse(&std::fs::read_to_string(fixture("r4.lcr")).unwrap()).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&ws.to_json()).unwrap();
    let lcr = doc["bindings"].as_array_mut().unwrap().iter_mut().find(|b| b["kind"] == "lcr").unwrap();
    lcr["local_mul"] = serde_json::json!([0, 0, 0, 0]);
    let err = Workspace::from_json(&doc.to_string()).unwrap_err();
    assert!(matches!(err, DslError::Verification { .. }), "{err}");
}
