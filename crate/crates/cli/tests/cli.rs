use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn wenum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wenum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code_file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Fixture {
    dir: TempDir,
    rep2: PathBuf,
    low: PathBuf,
    rep3: PathBuf,
    ternary: PathBuf,
    ternary_zero: PathBuf,
}

fn fixture() -> Fixture {
    let dir = TempDir::new().unwrap();
    Fixture {
        rep2: code_file(&dir, "rep2", "field p=2 m=1\nn=2\ngen 1 1\n"),
        low: code_file(&dir, "low", "field p=2 m=1\nn=2\ngen 0 1\n"),
        rep3: code_file(&dir, "rep3", "# repetition\nfield p=2 m=1\nn=3\ngen 1 1 1\n"),
        ternary: code_file(&dir, "t", "field p=3 m=1\nn=2\ngen 1 1\n"),
        ternary_zero: code_file(&dir, "tz", "field p=3 m=1\nn=2\n"),
        dir,
    }
}

fn terms(doc: &str) -> Vec<(Vec<u64>, String)> {
    let v: Value = serde_json::from_str(doc).unwrap();
    v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let exp = t["exp"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
            (exp, t["coef"].as_str().unwrap().to_string())
        })
        .collect()
}

#[test]
fn cwe_and_gjwe() {
    let f = fixture();
    let out = wenum(&["cwe", s(&f.rep2)]);
    assert!(out.status.success());
    assert_eq!(
        terms(&stdout(&out)),
        vec![(vec![0, 2], "1/1".to_string()), (vec![2, 0], "1/1".to_string())]
    );
    assert_eq!(stdout(&wenum(&["gjwe", s(&f.rep2)])), stdout(&out));
}

#[test]
fn cjwe_four_terms() {
    let f = fixture();
    let out = wenum(&["cjwe", s(&f.rep2), s(&f.low), "--pretty"]);
    assert_eq!(stdout(&out), "x[0,0]^2 + x[0,0]*x[0,1] + x[1,0]^2 + x[1,0]*x[1,1]\n");
    let doc = stdout(&wenum(&["cjwe", s(&f.rep2), s(&f.low)]));
    assert_eq!(terms(&doc).len(), 4);
}

#[test]
fn dual_is_rref_and_involutive() {
    let f = fixture();
    let dual = stdout(&wenum(&["dual", s(&f.rep3)]));
    assert_eq!(dual, "field p=2 m=1\nn=3\ngen 1 0 1\ngen 0 1 1\n");
    let path = code_file(&f.dir, "d", &dual);
    assert_eq!(stdout(&wenum(&["dual", s(&path)])), "field p=2 m=1\nn=3\ngen 1 1 1\n");
    let full = code_file(&f.dir, "full", "field p=2 m=1\nn=2\ngen 1 0\ngen 0 1\n");
    assert_eq!(stdout(&wenum(&["dual", s(&full)])), "field p=2 m=1\nn=2\n");
}

#[test]
fn averages_by_method() {
    let f = fixture();
    let brute = stdout(&wenum(&["avg", "--method", "brute", s(&f.ternary), s(&f.ternary_zero)]));
    assert!(terms(&brute).iter().any(|(_, c)| c.ends_with("/2")));
    let closed = stdout(&wenum(&["avg", "--method", "closed", s(&f.ternary), s(&f.ternary_zero)]));
    assert!(terms(&closed).iter().all(|(_, c)| c.ends_with("/1")));
    let full = code_file(&f.dir, "full3", "field p=2 m=1\nn=3\ngen 1 0 0\ngen 0 1 0\ngen 0 0 1\n");
    assert_eq!(
        stdout(&wenum(&["avg", "--method", "brute", s(&full)])),
        stdout(&wenum(&["cwe", s(&full)]))
    );
}

#[test]
fn transforms() {
    let f = fixture();
    let t = stdout(&wenum(&["transform", "--variant", "i", s(&f.rep2), s(&f.low)]));
    assert_eq!(t, stdout(&wenum(&["cjwe", s(&f.rep2), s(&f.low)])));
    let avg = wenum(&["transform", "--variant", "iii", "--average", s(&f.rep2), s(&f.low)]);
    assert!(avg.status.success());
    assert_eq!(wenum(&["transform", "--variant", "iv", s(&f.rep2)]).status.code(), Some(2));
    assert_eq!(
        wenum(&["transform", "--variant", "ii", s(&f.rep2)]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_exit_codes() {
    let out = wenum(&["verify", "macwilliams", "--q", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["violated"], false);

    let out = wenum(&["verify", "yoshida", "--q", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));

    let out = wenum(&["verify", "lemma42", "--q", "3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .any(|d| d["detail"]["lhs"] == 2 && d["detail"]["rhs"] == 4));

    assert_eq!(wenum(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(wenum(&["verify", "yoshida", "--q", "6"]).status.code(), Some(2));
}

#[test]
fn random_codes_are_seeded() {
    let a = stdout(&wenum(&["random-code", "--q", "9", "--n", "4", "--k", "2", "--seed", "11"]));
    let b = stdout(&wenum(&["random-code", "--q", "9", "--n", "4", "--k", "2", "--seed", "11"]));
    assert_eq!(a, b);
    assert!(a.starts_with("field p=3 m=2 poly="));
    let zero = stdout(&wenum(&["random-code", "--q", "3", "--n", "3", "--k", "0"]));
    assert_eq!(zero, "field p=3 m=1\nn=3\n");
    let full = stdout(&wenum(&["random-code", "--q", "2", "--n", "2", "--k", "2", "--seed", "3"]));
    let rows = full.lines().filter(|l| l.starts_with("gen")).count();
    assert!(rows <= 2);
    assert_eq!(wenum(&["random-code", "--q", "2", "--n", "2", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn errors_and_output_file() {
    let f = fixture();
    let bad = code_file(&f.dir, "bad", "field p=2 m=1\nn=2\ngen 1 7\n");
    let out = wenum(&["cwe", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = wenum(&["avg", "--budget", "10", s(&f.rep3), s(&f.rep3)]);
    assert_eq!(out.status.code(), Some(3));

    let mismatch = wenum(&["cjwe", s(&f.rep2), s(&f.ternary)]);
    assert_eq!(mismatch.status.code(), Some(2));

    let target = f.dir.path().join("out.json");
    let out = wenum(&["cwe", s(&f.rep2), "--out", s(&target)]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(fs::read_to_string(target).unwrap(), stdout(&wenum(&["cwe", s(&f.rep2)])));
}
