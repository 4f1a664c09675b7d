use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ncgq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncgq"))
        .args(args)
        .env_remove("NCGQ_FIXTURES")
        .output()
        .expect("spawn ncgq")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ncgq-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--q", "2"][..],
        &["verify", "--q", "1"],
        &["connection", "--q", "1"],
        &["dirac", "--q", "generic"],
        &["audit", "--q", "generic"],
        &["dirac", "--q", "i", "--tol", "-1"],
        &["dirac", "--q", "i", "--format", "xml"],
        &["frobnicate", "--q", "i"],
        &["dirac"],
    ] {
        assert_eq!(code(&ncgq(args)), 2, "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    assert_eq!(code(&ncgq(&["--help"])), 0);
}

#[test]
fn dirac_json_is_deterministic() {
    let a = ncgq(&["dirac", "--q", "-i"]);
    let b = ncgq(&["dirac", "--q", "-i"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(
        v["spectrum"]["eigenvalues"].as_array().map(Vec::len),
        Some(32)
    );
}

#[test]
fn connection_without_solution_exits_1_with_artifact() {
    let dir = scratch("conn");
    let out = dir.join("connection.json");
    let o = ncgq(&["connection", "--q", "i", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v.get("system").is_some());
    let leftovers: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .filter_map(Result::ok)
        .filter(|e| e.file_name().to_string_lossy().contains(".tmp-"))
        .collect();
    assert!(leftovers.is_empty());
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn out_into_missing_directory_exits_2() {
    let o = ncgq(&[
        "audit",
        "--q",
        "1",
        "--out",
        "/nonexistent-ncgq-dir/audit.json",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn fixture_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_ncgq"))
        .args(["audit", "--q", "i"])
        .env("NCGQ_FIXTURES", "/nonexistent-ncgq-fixtures")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);

    let dir = scratch("fixtures");
    let src = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for e in fs::read_dir(src).unwrap() {
        let e = e.unwrap();
        fs::copy(e.path(), dir.join(e.file_name())).unwrap();
    }
    let o = Command::new(env!("CARGO_BIN_EXE_ncgq"))
        .args(["dirac", "--q", "1"])
        .env("NCGQ_FIXTURES", &dir)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(o.stdout, ncgq(&["dirac", "--q", "1"]).stdout);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_reports_failures_with_exit_1() {
    let o = ncgq(&["verify", "--q", "generic"]);
    assert_eq!(code(&o), 1);
    assert!(!o.stdout.is_empty());
}
