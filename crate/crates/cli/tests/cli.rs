use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use kmv_core::data::{write_checksums, CHECKSUM_FILE, DATA_ENV};
use kmv_core::harness::RunReport;

fn repo_data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn kmv(args: &[&str]) -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_kmv"));
    c.args(args).env_remove(DATA_ENV);
    c
}

fn run(c: &mut Command) -> Output {
    c.output().expect("kmv runs")
}

/// Copy of the data directory that a test may modify.
fn data_copy() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for e in std::fs::read_dir(repo_data()).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), dir.path().join(e.file_name())).unwrap();
    }
    dir
}

fn manifest(dir: &Path, body: &str) -> PathBuf {
    let p = dir.join("manifest.json");
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn vacuum_case_passes() {
    let out = run(&mut kmv(&["verify-singular", "--case", "vacuum-sl4", "--k", "-5/2"]));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| vacuum-singular | PASS |"));
}

#[test]
fn other_levels_fail() {
    let out = run(&mut kmv(&["verify-singular", "--case", "vacuum-sl4", "--k", "0"]));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mutated_golden_vector_fails() {
    let dir = data_copy();
    let f = dir.path().join("singv_vacuum_sl4.vec");
    let text = std::fs::read_to_string(&f).unwrap();
    let mutated = text.replacen("+ 1/2 * e[1,3](-2) e[2,4](-2) 1", "+ 3/2 * e[1,3](-2) e[2,4](-2) 1", 1);
    assert_ne!(mutated, text);
    std::fs::write(&f, mutated).unwrap();
    write_checksums(dir.path()).unwrap();
    let d = dir.path().to_str().unwrap();
    let out = run(&mut kmv(&["verify-singular", "--case", "vacuum-sl4", "--data-dir", d]));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn corrupted_data_is_an_error() {
    let dir = data_copy();
    let f = dir.path().join("vprime_sl4.ug");
    let mut text = std::fs::read_to_string(&f).unwrap();
    text.push_str("\n+ 1 * h[1]\n");
    std::fs::write(&f, text).unwrap();
    let d = dir.path().to_str().unwrap();
    let out = run(&mut kmv(&["zhu-classify", "--data-dir", d]));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("data integrity"));
    std::fs::remove_file(dir.path().join(CHECKSUM_FILE)).unwrap();
    let out = run(&mut kmv(&["zhu-classify", "--data-dir", d]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn manifests_are_validated() {
    let dir = tempfile::tempdir().unwrap();
    let bad = manifest(dir.path(), r#"{"checks": [{"id": "sigma"}, {"id": "bogus"}]}"#);
    let out = run(&mut kmv(&["report", "--manifest", bad.to_str().unwrap()]));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
    let empty = manifest(dir.path(), r#"{"checks": []}"#);
    let out = run(&mut kmv(&["report", "--format", "json", "--manifest", empty.to_str().unwrap()]));
    assert_eq!(out.status.code(), Some(0));
    let r = RunReport::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(r.checks.is_empty() && r.all_pass);
}

#[test]
fn environment_variable_selects_the_data() {
    let dir = data_copy();
    std::fs::remove_file(dir.path().join("u_sl5.vec")).unwrap();
    let out = run(kmv(&["verify-singular", "--case", "u-sl5"]).env(DATA_ENV, dir.path()));
    assert_eq!(out.status.code(), Some(2));
    let out = run(kmv(&["verify-singular", "--case", "u-sl5"]).env(DATA_ENV, repo_data()));
    assert_eq!(out.status.code(), Some(0));
    let d = repo_data();
    let out = run(kmv(&["verify-singular", "--case", "u-sl5", "--data-dir", d.to_str().unwrap()]).env(DATA_ENV, dir.path()));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_output_parses() {
    let dir = tempfile::tempdir().unwrap();
    let out_file = dir.path().join("r.json");
    let out = run(&mut kmv(&["ope-collapse", "--format", "json", "--out", out_file.to_str().unwrap()]));
    assert_eq!(out.status.code(), Some(0));
    let r = RunReport::from_json(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, ["ope-collapse", "ope-generic"]);
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["checks"][0]["constants"]["central_charge"], "1");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&mut kmv(&["weyl-check", "--rank", "6"])).status.code(), Some(2));
    assert_eq!(run(&mut kmv(&["verify-singular", "--k", "1/0"])).status.code(), Some(2));
    assert_eq!(run(&mut kmv(&["no-such-command"])).status.code(), Some(2));
    let list = run(&mut kmv(&["list"]));
    assert_eq!(list.status.code(), Some(0));
    assert_eq!(String::from_utf8(list.stdout).unwrap().lines().count(), 27);
}
