use std::process::{Command, Output};

use serde_json::Value;

const SMALL: &str = "num_vertices=200,num_edges=5000,seed=5";

fn tgx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tgx")).args(args).output().expect("spawn tgx")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_json(args: &[&str]) -> Value {
    let mut full = vec!["run", "--generate", SMALL];
    full.extend_from_slice(args);
    let o = tgx(&full);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("valid JSON")
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(tgx(&["--help"]).status.code(), Some(0));
    assert_eq!(tgx(&["--version"]).status.code(), Some(0));
    assert_eq!(tgx(&["run", "--help"]).status.code(), Some(0));
}

#[test]
fn user_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &[],
        &["frobnicate"],
        &["run", "--algo", "ea"],
        &["run", "--generate", SMALL, "--algo", "nope"],
        &["run", "--graph", "/definitely/not/here.txt", "--algo", "ea"],
        &["run", "--generate", SMALL, "--algo", "ea", "--source", "999999"],
        &["run", "--generate", "num_vertices=0", "--algo", "ea"],
        &["run", "--generate", SMALL, "--algo", "ea", "--window-start", "9", "--window-end", "3"],
        &["--threads", "0", "run", "--generate", SMALL, "--algo", "ea"],
        &["sweep", "--generate", SMALL, "--algo", "ea", "--repeats", "0"],
    ];
    for args in cases {
        let o = tgx(args);
        assert_eq!(o.status.code(), Some(1), "args {args:?}");
        assert!(!o.stderr.is_empty(), "args {args:?} printed no error");
    }
}

#[test]
fn run_report_fields() {
    let v = run_json(&["--algo", "ea", "--top-k", "5"]);
    assert_eq!(v["algorithm"], "earliest-arrival");
    assert_eq!(v["dataset"]["num_edges"], 5000);
    assert_eq!(v["sources"].as_array().unwrap().len(), 5);
    assert_eq!(v["digest"].as_str().unwrap().len(), 64);
    assert!(v["wall_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn digests_are_stable_across_modes_and_threads() {
    for algo in ["ea", "latest-departure", "fastest", "sd", "bfs", "cc", "kcore", "pagerank", "bc"] {
        let base = run_json(&["--algo", algo, "--top-k", "4", "--index-cutoff", "40"])["digest"].clone();
        for mode in ["tger", "scan"] {
            let v = run_json(&["--algo", algo, "--top-k", "4", "--index-cutoff", "40", "--force-access", mode]);
            assert_eq!(v["digest"], base, "{algo} {mode}");
        }
        let o = tgx(&["--threads", "3", "run", "--generate", SMALL, "--algo", algo, "--top-k", "4", "--index-cutoff", "40"]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["digest"], base, "{algo} threads");
    }
}

#[test]
fn sweep_and_accuracy_emit_csv() {
    let o = tgx(&["sweep", "--generate", SMALL, "--algo", "ea", "--top-k", "3", "--fractions", "0.01,0.2", "--index-cutoff", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = r.headers().unwrap().clone();
    assert!(headers.iter().any(|h| h == "ratio"));
    let rows: Vec<_> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    let matched = headers.iter().position(|h| h == "digests_match").unwrap();
    assert!(rows.iter().all(|row| &row[matched] == "true"));

    let o = tgx(&["accuracy", "--generate", SMALL, "--cutoffs", "20,40", "--fractions", "0.01,0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv::Reader::from_reader(o.stdout.as_slice()).records().count();
    assert_eq!(rows, 4);
}

#[test]
fn generated_file_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt.gz");
    let path = path.to_str().unwrap();
    let o = tgx(&["generate", "--params", SMALL, "--out", path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let from_file = tgx(&["run", "--graph", path, "--id-mode", "integer", "--algo", "cc"]);
    assert_eq!(from_file.status.code(), Some(0));
    let a: Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    let b = run_json(&["--algo", "cc"]);
    assert_eq!(a["dataset"]["kind"], "file");
    assert_eq!(a["dataset"]["num_edges"], 5000);
    assert_eq!(a["digest"], b["digest"]);
}

#[test]
fn csv_run_output() {
    let o = tgx(&["run", "--generate", SMALL, "--algo", "fastest", "--source", "3", "--output", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert!(r.headers().unwrap().iter().any(|h| h == "digest"));
    // One row for the source, one for the whole run.
    let rows: Vec<_> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[0][1], "3");
    assert_eq!(&rows[1][1], "");
}

#[test]
fn config_file_sets_cutoff() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tgx.toml");
    std::fs::write(&cfg, "[index]\ncutoff = 10\n\n[cost]\ntheta_sel = 0.2\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let v = run_json(&["--algo", "ea", "--top-k", "1", "--config", cfg]);
    assert_eq!(v["index_cutoff"], 10);
    let v = run_json(&["--algo", "ea", "--top-k", "1", "--config", cfg, "--index-cutoff", "30"]);
    assert_eq!(v["index_cutoff"], 30);

    std::fs::write(dir.path().join("bad.toml"), "[index]\ncutof = 10\n").unwrap();
    let bad = dir.path().join("bad.toml");
    let o = tgx(&["run", "--generate", SMALL, "--algo", "ea", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
