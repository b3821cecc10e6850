use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hyperchow"));
    c.env_remove("HYPERCHOW_PRECISION");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn config(name: &str) -> String {
    configs().join(name).display().to_string()
}

fn tmp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("hyperchow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn default_cycle_suite_passes() {
    let o = run(&["verify-cycles", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let records = v["records"].as_array().unwrap();
    assert!(records.len() > 30);
    assert!(records.iter().all(|r| r["status"] == "pass"));
    let degenerate = records.iter().find(|r| r["name"] == "genus 2, t = branch(0): Z_t").unwrap();
    assert_eq!(degenerate["detail"], "zero precycle");
}

#[test]
fn config_files_pass() {
    for name in ["genus3.toml", "genus2.json", "even_genus2.toml"] {
        let args = if name.starts_with("even") {
            vec!["cycles", "sweep-t", "--height", "6", "--config"]
        } else {
            vec!["verify-cycles", "--config"]
        };
        let path = config(name);
        let o = run(&[args.as_slice(), &[path.as_str()]].concat());
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
    }
}

#[test]
fn usage_errors_exit_64() {
    let empty = tmp("empty.toml", "");
    assert_eq!(code(&run(&["verify-cycles", "--config", &empty])), 64);
    assert_eq!(code(&run(&["verify-cycles", "--config", "/nonexistent/curve.toml"])), 64);
    let no_curve = tmp("nocurve.toml", "w1 = \"0\"\nw2 = \"inf\"\n");
    assert_eq!(code(&run(&["verify-cycles", "--config", &no_curve])), 64);
    let typo = tmp("typo.toml", "scale = \"1\"\nroots = [\"0\", \"1\", \"2\"]\nw1 = \"0\"\nw3 = \"inf\"\n");
    assert_eq!(code(&run(&["verify-cycles", "--config", &typo])), 64);
    assert_eq!(code(&run(&["no-such-command"])), 64);
    assert_eq!(code(&run(&["i-lambda"])), 64);
    assert_eq!(code(&run(&["i-lambda", "--lambda", "1"])), 64);
    assert_eq!(code(&run(&["i-lambda", "--lambda", "2", "--tol=-1"])), 64);
    assert_eq!(code(&run(&["i-lambda", "--lambda", "2", "--budget", "0"])), 64);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn small_budget_is_indeterminate() {
    let o = run(&["i-lambda", "--lambda", "3/2", "--budget", "300", "--format", "json"]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["records"][0]["status"], "indeterminate");
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn full_report_with_small_budget_is_indeterminate_not_failed() {
    let o = run(&["full-report", "--budget", "300", "--samples", "2000", "--random", "4", "--cases", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["fail"], 0, "{}", stdout(&o));
    assert!(v["summary"]["indeterminate"].as_u64().unwrap() > 0);
    assert_eq!(code(&o), 2);
}

#[test]
fn json_reports_have_the_record_schema() {
    let o = run(&["functional-eq", "--lambdas", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "functional-eq");
    assert_eq!(v["settings"]["tol"], "1e-8");
    let r = &v["records"][0];
    for key in ["name", "anchor", "status", "value", "error", "detail"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert!(r["anchor"].as_str().is_some_and(|a| !a.is_empty()));
    assert!(r["value"].as_f64().unwrap().abs() <= 1e-6);
    assert!(r.get("runtime_ms").is_none());
    let timed = run(&["functional-eq", "--lambdas", "2", "--format", "json", "--timings"]);
    let v: Value = serde_json::from_str(&stdout(&timed)).unwrap();
    assert!(v["records"][0]["runtime_ms"].as_f64().is_some());
}

#[test]
fn reports_are_byte_identical() {
    let args = ["cross-oracle", "--covolume", "2", "--monte-carlo", "2", "--samples", "5000", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let other = run(&[&args[..], &["--seed", "7"]].concat());
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn scan_rows() {
    let o = run(&["scan-i", "--grid", "2,3,5", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rows.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 3);
    // I(lambda) is not constant in lambda
    let values: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(values[0] < values[1] && values[1] < values[2]);

    let svg = std::env::temp_dir().join(format!("hyperchow-scan-{}.svg", std::process::id()));
    let o = run(&["scan-i", "--grid", "2,1,1/2", "--paired", "--format", "csv", "--svg", svg.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(&rows[1][col("status")], "fail");
    assert!(rows[1][col("note")].starts_with("invalid"));
    for r in [&rows[0], &rows[2]] {
        let residual: f64 = r[col("residual")].parse().unwrap();
        let log: f64 = r[col("log_abs_lambda")].parse().unwrap();
        assert!(residual.abs() <= 1e-6);
        assert!((log.abs() - 2f64.ln()).abs() < 1e-15);
    }
    let plot = std::fs::read_to_string(&svg).unwrap();
    assert!(plot.starts_with("<svg") && plot.matches("<circle").count() == 2);
}

#[test]
fn precision_from_environment() {
    let o = bin().env("HYPERCHOW_PRECISION", "extended").args(["i-lambda", "--lambda", "2", "--format", "json"]).output().unwrap();
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["settings"]["precision"], "extended");
    let bad = bin().env("HYPERCHOW_PRECISION", "quad").args(["i-lambda", "--lambda", "2"]).output().unwrap();
    assert_eq!(code(&bad), 64);
}

#[test]
fn jacobian_commands() {
    let g3 = config("genus3.toml");
    let o = run(&["jacobian", "is-principal", "--config", &g3, "--divisor", "2*0, -2*inf"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["principal"], true);
    assert_eq!(v["witness"]["a"], serde_json::json!(["0", "1"]));

    let o = run(&["jacobian", "is-principal", "--config", &g3, "--divisor", "15:180180, -1*inf"]);
    assert_eq!(code(&o), 1);

    // P + iota P - 2 w1 reduces to zero
    let o = run(&["jacobian", "add", "--config", &g3, "--a", "15:180180, -1*0", "--b", "15:-180180, -1*0"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sum"]["degree"], 0);
    assert_eq!(v["reduced_divisor"], serde_json::json!([]), "{v}");

    let o = run(&["jacobian", "reduce", "--config", &g3, "--u", "-15,1", "--v", "180180"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&run(&["jacobian", "reduce", "--config", &g3, "--u", "-15,1", "--v", "1"])), 64);
}

#[test]
fn cycles_verify_emits_configuration_reports() {
    let o = run(&["cycles", "verify", "--config", &config("genus2.json")]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 6);
    // the datum (t, w1, t, w2) is the specialized shape
    assert_eq!(entries[0]["report"]["points_total"], 4);
    assert!(entries.iter().all(|e| e["report"]["is_cycle"] == true));
}

#[test]
fn numeric_commands_pass() {
    for args in [
        vec!["bielliptic", "--l1", "2", "--l2", "3"],
        vec!["numerics", "pairing-k", "--l1", "2", "--l2", "5"],
        vec!["pairing-k", "--curve", "CURVE"],
        vec!["genus3-cover"],
    ] {
        let curve = config("even_genus2.toml");
        let args: Vec<&str> = args.iter().map(|a| if *a == "CURVE" { curve.as_str() } else { a }).collect();
        let o = run(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
    }
    let o = run(&["pairing-k", "--curve", &config("genus3.toml"), "--budget", "4000"]);
    assert_ne!(code(&o), 64);
}

#[test]
fn output_file() {
    let out = std::env::temp_dir().join(format!("hyperchow-out-{}.txt", std::process::id()));
    let o = run(&["properties", "--cases", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.ends_with("4 pass, 0 fail, 0 indeterminate\n"));
}
