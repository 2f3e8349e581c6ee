use std::path::Path;
use std::process::{Command, Output};

use arakelov_cli::record::{to_json, JsonLatticeRecord};
use serde_json::Value;

fn arakelov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arakelov")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn construct_to(dir: &Path, field: &str, level: &str, extra: &[&str]) -> std::path::PathBuf {
    let path = dir.join("record.json");
    let mut args = vec!["construct", "--field", field, "--level", level, "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = arakelov(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    path
}

#[test]
fn exists_reports_prime_power_trace_levels() {
    let out = arakelov(&["exists", "--field", "realcyclo:13", "--trace-type"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["levels"], serde_json::json!([13]));
    assert_eq!(v["witnesses"][0]["ideal"], "P13^-1");
}

#[test]
fn exists_empty_level_set_exits_three() {
    let out = arakelov(&["exists", "--field", "realcyclo:15", "--trace-type"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["levels"], serde_json::json!([]));
}

#[test]
fn exists_queried_level() {
    let out = arakelov(&["exists", "--field", "realcyclo:28", "--trace-type", "--level", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["query"]["exists"], true);

    let out = arakelov(&["exists", "--field", "realcyclo:28", "--trace-type", "--level", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["query"]["excluded_by"], "level-divides-even-ramification-product");
}

#[test]
fn bad_specs_exit_two() {
    for field in ["quad:+1", "quad:4", "quad:+12", "realcyclo:x", "cyclo:12"] {
        let out = arakelov(&["exists", "--field", field]);
        assert_eq!(out.status.code(), Some(2), "{field}: {}", stderr(&out));
    }
    assert_eq!(arakelov(&["exists"]).status.code(), Some(2));
}

#[test]
fn construct_excluded_level_names_rule() {
    let out = arakelov(&["construct", "--field", "realcyclo:7", "--level", "7"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("odd-degree-forces-unimodular"));
}

#[test]
fn construct_eisenstein() {
    let out = arakelov(&["construct", "--field", "quad:-3", "--level", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["report"]["dimension"], 2);
    assert_eq!(r["report"]["even"], true);
    assert_eq!(r["report"]["minimum"], "2");
    assert_eq!(r["report"]["kissing"], 6);
    assert_eq!(r["gram"], serde_json::json!([["2", "1"], ["1", "2"]]));
}

#[test]
fn construct_conductor_28_level_7() {
    let out = arakelov(&["construct", "--field", "realcyclo:28", "--level", "7", "--trace-type"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["report"]["dimension"], 6);
    assert_eq!(r["report"]["determinant"], "343");
    // the catalog fixture for this row expects 2
    assert_eq!(r["report"]["minimum"], "4");
    assert_eq!(r["report"]["kissing"], 42);
}

#[test]
fn construct_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (field, level) in [("quad:+5", "5"), ("quad:-7", "7"), ("realcyclo:13", "1"), ("realcyclo:36", "3")] {
        let path = construct_to(dir.path(), field, level, &[]);
        let out = arakelov(&["verify", "--in", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{field}: {}", stderr(&out));
        let v = json(&out);
        assert_eq!(v["verified"], true);
        assert_eq!(v["mismatches"], serde_json::json!([]));
    }
}

#[test]
fn records_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "realcyclo:24", "6", &["--trace-type", "--embed", "80"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = JsonLatticeRecord::from_json(&text).unwrap();
    assert_eq!(to_json(&parsed), text);
    let embedding = parsed.embedding.unwrap();
    assert_eq!(embedding.precision_bits, 80);
    assert_eq!(embedding.rows.len(), 4);
}

#[test]
fn embed_precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_arakelov"))
        .args(["construct", "--field", "quad:+2", "--level", "2", "--embed"])
        .env("ARAKELOV_PRECISION_BITS", "40")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["embedding"]["precision_bits"], 40);

    let out = Command::new(env!("CARGO_BIN_EXE_arakelov"))
        .args(["construct", "--field", "quad:+2", "--level", "2", "--embed"])
        .env_remove("ARAKELOV_PRECISION_BITS")
        .output()
        .unwrap();
    assert_eq!(json(&out)["embedding"]["precision_bits"], 128);

    let out = Command::new(env!("CARGO_BIN_EXE_arakelov"))
        .args(["construct", "--field", "quad:+2", "--level", "2", "--embed"])
        .env("ARAKELOV_PRECISION_BITS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tampered_gram_is_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "quad:+7", "7", &[]);
    let mut rec: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    rec["gram"][0][0] = Value::from("6");
    std::fs::write(&path, rec.to_string()).unwrap();
    let out = arakelov(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    assert_eq!(v["verified"], false);
    assert!(v["mismatches"][0].as_str().unwrap().contains("gram"));
}

#[test]
fn tampered_minimum_is_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "quad:+3", "3", &[]);
    let mut rec: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    rec["report"]["minimum"] = Value::from("4");
    std::fs::write(&path, rec.to_string()).unwrap();
    let out = arakelov(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(json(&out)["mismatches"][0].as_str().unwrap().starts_with("minimum"));
}

#[test]
fn tampered_beta_names_clause() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "quad:+3", "3", &[]);
    let mut rec: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    rec["beta"] = serde_json::json!(["2", "0"]);
    std::fs::write(&path, rec.to_string()).unwrap();
    let out = arakelov(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("clause (i)"));
}

#[test]
fn malformed_record_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"field\": \"quad:+3\"}").unwrap();
    assert_eq!(arakelov(&["verify", "--in", path.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(arakelov(&["verify", "--in", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn theta_prefix_of_conductor_36() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "realcyclo:36", "3", &["--trace-type"]);
    let out = arakelov(&["verify", "--in", path.to_str().unwrap(), "--theta", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let theta = json(&out)["report"]["theta"].clone();
    let at = |n: &str| {
        theta.as_array().unwrap().iter().find(|t| t["norm"] == n).map_or(0, |t| t["count"].as_u64().unwrap())
    };
    assert_eq!(at("0"), 1);
    assert_eq!(at("1"), 0);
    assert!(at("2") > 0);
}

#[test]
fn catalog_examples() {
    let out = arakelov(&["catalog", "--examples"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().filter(|r| r["kind"] == "row").all(|r| r["pass"] == true));
    let recorded = rows.iter().find(|r| r["kind"] == "discrepancy").unwrap();
    assert_eq!(recorded["computed"]["verifies"], false);
    assert!(recorded["computed"]["failure"].as_str().unwrap().contains("(ii)"));
}

#[test]
fn catalog_table_reports_row_mismatch() {
    let out = arakelov(&["catalog", "--paper-table"]);
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    let dims: Vec<u64> = rows.iter().map(|r| r["computed"]["dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, [6, 10, 22]);
    let passes: Vec<bool> = rows.iter().map(|r| r["pass"].as_bool().unwrap()).collect();
    assert_eq!(passes, [false, true, true]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("#0"));
}

#[test]
fn catalog_requires_a_selection() {
    assert_eq!(arakelov(&["catalog"]).status.code(), Some(2));
}
