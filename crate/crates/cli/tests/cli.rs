use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn localcodes(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_localcodes"))
        .args(args)
        .current_dir(dir)
        .env_remove("LOCALCODES_NODE_CAP")
        .env_remove("LOCALCODES_WEIGHT_CAP")
        .env_remove("LOCALCODES_MEM_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn bacon_shor_file_has_distance_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = localcodes(dir.path(), &["zoo", "bacon-shor", "--L", "3", "--out", "bs3.code"]);
    assert!(out.status.success());
    let v = json(&localcodes(dir.path(), &["distance", "--code", "bs3.code", "--mode", "subsystem"]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "distance");
    assert_eq!(v["result"]["distance"], 3);
    assert_eq!(v["result"]["witness"]["weight"], 3);
}

#[test]
fn nonlocal_code_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let text = "lattice D=1 L=5 boundary=open\nrole=stabilizer\nr=2\nZ(0) Z(4)\n";
    fs::write(dir.path().join("nonlocal.code"), text).unwrap();
    let out = localcodes(dir.path(), &["validate", "--code", "nonlocal.code"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("generator 0"), "{err}");
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(localcodes(dir.path(), &["distance", "--bogus"]).status.code(), Some(1));
    assert_eq!(localcodes(dir.path(), &["distance"]).status.code(), Some(1));
    assert_eq!(localcodes(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn capacity_errors_exit_one_with_a_hint() {
    let dir = tempfile::tempdir().unwrap();
    let out = localcodes(dir.path(), &["barrier", "--family", "toric", "--L", "3", "--node-cap", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--node-cap"));
    let v = json(&localcodes(
        dir.path(),
        &["barrier", "--family", "toric", "--L", "3", "--node-cap", "10", "--walk-fallback"],
    ));
    assert_eq!(v["result"]["barrier"]["method"], "walk_upper_bound");
}

#[test]
fn toric_audit_holds_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["audit", "--family", "toric", "--L", "2..4", "--out", "a.json", "--csv", "a.csv", "--jobs", "3"];
    assert_eq!(localcodes(dir.path(), &args).status.code(), Some(0));
    let first = fs::read(dir.path().join("a.json")).unwrap();
    let args1 = ["audit", "--family", "toric", "--L", "2..4", "--out", "b.json", "--jobs", "1"];
    assert_eq!(localcodes(dir.path(), &args1).status.code(), Some(0));
    assert_eq!(first, fs::read(dir.path().join("b.json")).unwrap());

    let v: Value = serde_json::from_slice(&first).unwrap();
    let records = v["result"]["records"].as_array().unwrap();
    assert_eq!(records.len(), 3);
    for (rec, l) in records.iter().zip(2..) {
        assert_eq!(rec["distance"]["value"], l);
        for c in rec["checks"].as_array().unwrap() {
            assert_eq!(c["holds"], true, "{c}");
        }
    }
    let csv = fs::read_to_string(dir.path().join("a.csv")).unwrap();
    assert!(csv.starts_with("family,L,n,k,r,participation,d,d1,barrier,method,margins\n"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn transforms_report() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let v = json(&localcodes(d, &["clean", "--family", "toric", "--L", "3", "--region", "full"]));
    assert_eq!(v["result"]["result"]["outcome"], "trapped");
    let v = json(&localcodes(d, &["clean", "--family", "toric", "--L", "4", "--region", "box:1,1:1,1"]));
    assert_eq!(v["result"]["result"]["outcome"], "cleaned");
    let v = json(&localcodes(d, &["sweep", "--family", "bacon-shor", "--L", "4", "--axis", "1"]));
    assert_eq!(v["result"]["within_r"], true);
    let v = json(&localcodes(d, &["restrict-audit", "--family", "toric", "--L", "3", "--region", "full"]));
    assert_eq!(v["result"]["case"]["case"], "distance_bound");
    let v = json(&localcodes(d, &["min-block", "--family", "steane-chain", "--L", "1"]));
    assert_eq!(v["result"]["block"]["width"], 3);
    let v = json(&localcodes(d, &["lindist", "--family", "repetition", "--L", "5"]));
    assert_eq!(v["result"]["d1"], 1);
}
