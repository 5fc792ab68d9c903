use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

const IDENTICAL: &str = r#"{
    "main": {"p": 0.5, "K1": 16.6666666667, "K2": 3.33333333333, "m": 0.5, "mean_snr_db": 10},
    "eve": {"p": 0.5, "K1": 16.6666666667, "K2": 3.33333333333, "m": 0.5, "mean_snr_db": 10},
    "target_rate": 0.5
}"#;

const INTEGER: &str = r#"{
    "main": {"p": 0.5, "K1": 5, "K2": 1, "m": 2, "mean_snr_db": 20},
    "eve": {"p": 0.5, "K1": 5, "K2": 1, "m": 2, "mean_snr_db": 10},
    "target_rate": 0.5
}"#;

fn arsec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arsec")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn config(dir: &TempDir, text: &str) -> PathBuf {
    let p = dir.path().join("scenario.json");
    std::fs::write(&p, text).unwrap();
    p
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|x| x.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn compute_identical_links_pnz() {
    let dir = TempDir::new().unwrap();
    let p = config(&dir, IDENTICAL);
    let o = arsec(&["compute", p.to_str().unwrap(), "--engine", "quadrature", "--metric", "pnz"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v[0];
    assert_eq!(r["metric"], "pnz");
    assert_eq!(r["engine"], "quadrature");
    assert!((r["value"].as_f64().unwrap() - 0.5).abs() < 1e-9);
}

#[test]
fn compute_writes_to_out() {
    let dir = TempDir::new().unwrap();
    let p = config(&dir, INTEGER);
    let out = dir.path().join("r.json");
    let o = arsec(&["compute", p.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[0]["engine"], "exact-integer");
}

#[test]
fn table1_row_1() {
    let o = arsec(&["table1", "--row", "1"]);
    assert!(o.status.success());
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 1);
    let col = |name: &str| h.iter().position(|c| c == name).unwrap();
    assert_eq!(rows[0][col("n_l")], "33");
    let eps: f64 = rows[0][col("epsilon")].parse().unwrap();
    assert!(eps / 7.32e-7 < 5.0 && 7.32e-7 / eps < 5.0);
}

#[test]
fn sweep_header_and_significant_digits() {
    let dir = TempDir::new().unwrap();
    let p = config(&dir, INTEGER);
    let o = arsec(&["sweep", p.to_str().unwrap(), "--from", "0", "--to", "10", "--step", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("gamma_b_db,metric,engine,value,error_estimate\n"));
    let (_, rows) = csv_rows(&text);
    assert_eq!(rows.len(), 9);
    let mantissa = rows[0][3].split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 12);
}

#[test]
fn validate_reports_pass() {
    let dir = TempDir::new().unwrap();
    let p = config(&dir, INTEGER);
    let o = arsec(&["validate", p.to_str().unwrap()]);
    assert!(o.status.success());
    let (h, rows) = csv_rows(&stdout(&o));
    let status = h.iter().position(|c| c == "status").unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[status] == "PASS"));
}

#[test]
fn validate_skips_inapplicable_engines() {
    let dir = TempDir::new().unwrap();
    let p = config(&dir, INTEGER);
    let o = arsec(&["validate", p.to_str().unwrap(), "--engine", "exact-real", "--metric", "pnz"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("SKIP"));
}

#[test]
fn figure_output_is_reproducible() {
    let args = ["figure", "fig3", "--mc", "--seed", "7", "--n-samples", "20000", "--from", "10", "--to", "14"];
    let a = arsec(&args);
    let b = arsec(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let (h, rows) = csv_rows(&stdout(&a));
    assert_eq!(h.last().unwrap(), "mc_z");
    assert_eq!(rows.len(), 6);
}

#[test]
fn figure_fig4_agrees_with_simulation() {
    let o = arsec(&["figure", "fig4", "--mc", "--seed", "7"]);
    assert!(o.status.success());
    let (h, rows) = csv_rows(&stdout(&o));
    let z = h.iter().position(|c| c == "mc_z").unwrap();
    assert_eq!(rows.len(), 63);
    for r in rows {
        let v: f64 = r[z].parse().unwrap();
        assert!(v.abs() < 3.0, "{r:?}");
    }
}

#[test]
fn parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = config(&dir, "{\"main\": 1}");
    assert_eq!(arsec(&["compute", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(arsec(&["compute", "/nonexistent/x.json"]).status.code(), Some(2));
    assert_eq!(arsec(&["figure", "fig9"]).status.code(), Some(2));
    assert_eq!(arsec(&["table1", "--row", "7"]).status.code(), Some(2));
    assert_eq!(arsec(&["compute", "--engine", "bogus", "x.json"]).status.code(), Some(2));
    let invalid = config(&dir, &INTEGER.replacen("\"p\": 0.5", "\"p\": 1.5", 1));
    assert_eq!(arsec(&["compute", invalid.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn engine_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let p = config(&dir, INTEGER);
    let o = arsec(&["compute", p.to_str().unwrap(), "--engine", "exact-real"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exact-real"));
}
