//! End-to-end checks of the `sfs` binary: exit codes, JSON output and
//! subcommand pipelines.

mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const EXAMPLE7_CSV: &str = "\
0,7,6,0,0,0,0
7,0,7,3,2,1,1
6,7,0,7,2,2,1
0,3,7,0,3,3,3
0,2,2,3,0,7,5
0,1,2,3,7,0,6
0,1,1,3,5,6,0
";

const C4_CSV: &str = "\
0,1,0,1
1,0,1,0
0,1,0,1
1,0,1,0
";

fn sfs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sfs")).args(args).output().expect("binary runs")
}

fn sfs_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sfs"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn recognize_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "good.csv", EXAMPLE7_CSV);
    let bad = write(dir.path(), "c4.csv", C4_CSV);
    let garbage = write(dir.path(), "garbage.csv", "0,1\n1,not-a-number\n");

    let out = sfs(&["recognize", &good, "--scale", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("status: Robinsonian"));

    let out = sfs(&["recognize", &bad, "--scale", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("status: NOT Robinsonian"));
    assert!(text.contains("certificate: triple"));

    let out = sfs(&["recognize", &garbage, "--scale", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));

    let out = sfs(&["recognize", dir.path().join("missing.csv").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_report_parses() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "good.csv", EXAMPLE7_CSV);
    let out = sfs(&["recognize", &good, "--scale", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "robinsonian");
    assert_eq!(v["order"].as_array().unwrap().len(), 7);
    assert!(v["sweeps_used"].as_u64().is_some());
    assert!(v["timings"]["total_ms"].as_f64().is_some());

    let bad = write(dir.path(), "c4.csv", C4_CSV);
    let out = sfs(&["recognize", &bad, "--scale", "1", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "not_robinsonian");
    assert!(v["certificate"].is_object());
}

#[test]
fn recognize_then_verify_pipeline() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "good.csv", EXAMPLE7_CSV);
    let out = sfs(&["recognize", &good, "--scale", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let order_line = stdout(&out)
        .lines()
        .find(|l| l.starts_with("order: "))
        .expect("order line")
        .trim_start_matches("order: ")
        .to_string();

    let out = sfs(&["verify", &good, &order_line, "--scale", "1", "--oracle"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("Robinson: yes"));
    assert!(text.contains("oracle: cubic scan agrees"));

    // a wrong order is rejected with a 1-based triple
    let out = sfs(&["verify", &good, "1,7,2,3,4,5,6", "--scale", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("violating triple (1-based)"));
}

#[test]
fn generate_then_recognize_pipeline() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("inst.mtx");
    let out = sfs(&[
        "generate",
        "--kind",
        "random-robinsonian",
        "--n",
        "60",
        "--k",
        "15",
        "--seed",
        "7",
        "--permute",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("inst.mtx.meta.json")).unwrap())
            .unwrap();
    assert_eq!(meta["n"], 60);
    assert!(meta["hidden_order"].is_array());

    let out = sfs(&["recognize", out_path.to_str().unwrap(), "--scale", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("status: Robinsonian"));

    // worst-case generation carries its prescribed initial order in the
    // sidecar; injecting it takes the full n-1 sweeps
    let wc_path = dir.path().join("wc.mtx");
    let out = sfs(&["generate", "--kind", "worst-case", "--n", "11", "-o", wc_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("wc.mtx.meta.json")).unwrap())
            .unwrap();
    let sigma0 = meta["sigma0"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap().to_string())
        .collect::<Vec<_>>()
        .join(",");
    let out = sfs(&[
        "recognize",
        wc_path.to_str().unwrap(),
        "--scale",
        "1",
        "--seed-order",
        &sigma0,
        "--no-early-exit",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("sweeps_used: 10"));
}

#[test]
fn sweep_plus_on_worst_case() {
    let dir = TempDir::new().unwrap();
    let wc_path = dir.path().join("wc5.mtx");
    let out =
        sfs(&["generate", "--kind", "worst-case", "--n", "5", "-o", wc_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    // one plus-sweep from sigma_0 = (2,3,4,5,1) gives sigma_1 = (1,4,3,2,5)
    let out = sfs(&[
        "sweep",
        wc_path.to_str().unwrap(),
        "--scale",
        "1",
        "--plus",
        "2,3,4,5,1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).trim(), "1 4 3 2 5");
}

#[test]
fn scale_env_and_flag() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "good.csv", EXAMPLE7_CSV);

    // a bad SFS_SCALE value is a usage error
    let out = sfs_env(&["recognize", &good], &[("SFS_SCALE", "zero")]);
    assert_eq!(out.status.code(), Some(2));
    let out = sfs_env(&["recognize", &good], &[("SFS_SCALE", "0")]);
    assert_eq!(out.status.code(), Some(2));

    // a valid env scale works, and --scale overrides it
    let out = sfs_env(&["recognize", &good], &[("SFS_SCALE", "10")]);
    assert_eq!(out.status.code(), Some(0));
    let out = sfs_env(&["recognize", &good, "--scale", "1"], &[("SFS_SCALE", "zero")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oracle_check_agrees() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "good.csv", EXAMPLE7_CSV);
    let bad = write(dir.path(), "c4.csv", C4_CSV);
    // exit 0 means the two methods agree, whatever the verdict is
    for path in [&good, &bad] {
        let out = sfs(&["oracle-check", path, "--scale", "1"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).contains("oracle-check: AGREE"));
    }
}
