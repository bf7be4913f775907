use std::process::{Command, Output};

use serde_json::Value;

fn ncforest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncforest"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = ncforest(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn count_as_csv() {
    let out = ncforest(&["--format", "csv", "count", "TREES", "1..8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let counts: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(text.lines().next(), Some("class,n,count"));
    assert_eq!(counts, ["1", "1", "3", "12", "55", "273", "1428", "7752"]);
}

#[test]
fn count_single_values() {
    assert_eq!(json(&["count", "FORESTS", "3"])["counts"]["FORESTS"]["3"], "7");
    assert_eq!(json(&["count", "FORESTS", "0"])["counts"]["FORESTS"]["0"], "1");
}

#[test]
fn oracle_censuses() {
    let v = json(&["oracle", "double-chain", "2", "interior-forests"]);
    assert_eq!(v["groups"], serde_json::json!({"1": 4, "2": 5, "3": 2}));
    assert_eq!(v["total"], 11);
    let v = json(&["oracle", "convex", "4", "spanning-trees"]);
    assert_eq!(v["total"], 12);
}

#[test]
fn tree_growth() {
    let v = json(&["growth", "TREES"]);
    let omega: f64 = v["omega"].as_str().unwrap().parse().unwrap();
    assert!((omega - 6.75).abs() < 1e-12);
}

#[test]
fn bounds_report() {
    let v = json(&["bounds", "ub-trees"]);
    let base: f64 = v["base"].as_str().unwrap().parse().unwrap();
    assert!((base - 22.1112).abs() < 1e-3, "{v}");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["oracle", "double-chain", "3", "forests", "--group-by", "components"];
    let (a, b) = (ncforest(&args), ncforest(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("ncforest-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trees.csv");
    let out = ncforest(&["--format", "csv", "--out", path.to_str().unwrap(), "count", "TREES", "1..3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, "class,n,count\nTREES,1,1\nTREES,2,1\nTREES,3,3\n");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = std::env::temp_dir().join(format!("ncforest-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    std::fs::write(&path, "truncation = 20\nformat = \"csv\"\n").unwrap();
    let cfg = path.to_str().unwrap();
    let out = ncforest(&["--config", cfg, "count", "TREES", "4"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "class,n,count\nTREES,4,12\n");
    let v = json(&["--config", cfg, "--format", "json", "count", "TREES", "4"]);
    assert_eq!(v["counts"]["TREES"]["4"], "12");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["count", "NOT_A_CLASS", "3"][..],
        &["--truncation", "5", "count", "TREES", "3"],
        &["frobnicate"],
        &["oracle", "convex", "20", "forests"],
        &["bounds", "lb-everything"],
    ] {
        assert_eq!(ncforest(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn passing_suite_exits_with_zero() {
    let v = json(&["verify", "oracle"]);
    assert_eq!(v["pass"], true);
}
