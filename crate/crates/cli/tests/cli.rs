use std::process::Command;

use serde_json::Value;

fn cwe(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cwe"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, stdout, stderr) = cwe(args);
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stderr}"));
    (code, v)
}

#[test]
fn field_info_reports_length() {
    let (code, v) = json(&["field-info", "--p", "3", "--m", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], 26);
    assert_eq!(v["r"], 81);
    let (code, text, _) = cwe(&["field-info", "--p", "3", "--m", "2", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.contains("modulus: x^2 + 1"));
}

#[test]
fn parameter_errors_exit_2() {
    let (code, _, err) = cwe(&["field-info", "--p", "2", "--m", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("characteristic 2"));
    let (code, _, err) = cwe(&["field-info", "--p", "9", "--m", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("not prime"));
    let (code, _, err) = cwe(&["cwe", "--p", "3", "--m", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("too small"));
    assert_eq!(
        cwe(&["verify", "--p", "3", "--m", "3", "--sections", "lemma99"]).0,
        2
    );
    assert_eq!(cwe(&["sweep", "--grid", "3"]).0, 2);
    assert_eq!(cwe(&["cwe", "--p", "3"]).0, 2);
    assert_eq!(
        cwe(&["cwe", "--p", "3", "--m", "3", "--method", "guess"]).0,
        2
    );
}

#[test]
fn cwe_both_matches() {
    let (code, v) = json(&["cwe", "--p", "3", "--m", "4", "--method", "both"]);
    assert_eq!(code, 0);
    assert_eq!(v["match"], true);
    assert_eq!(v["brute"]["entries"].as_array().unwrap().len(), 5);
    assert_eq!(v["brute"], v["closed"]);
}

#[test]
fn cwe_closed_json_and_csv() {
    let (code, v) = json(&["cwe", "--p", "5", "--m", "3", "--method", "closed"]);
    assert_eq!(code, 0);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 5);
    assert!(entries
        .iter()
        .any(|e| e["composition"] == serde_json::json!([4, 10, 0, 0, 10]) && e["frequency"] == 12));

    let (code, csv, _) = cwe(&[
        "cwe", "--p", "5", "--m", "3", "--method", "closed", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "k0,k1,k2,k3,k4,frequency");
    assert!(lines.contains(&"0,6,6,6,6,40"));
    assert_eq!(lines.len(), 6);

    let (_, csv, _) = cwe(&["cwe", "--p", "3", "--m", "3", "--format", "csv"]);
    assert!(csv.starts_with("method,k0,k1,k2,frequency\n"));
    assert!(csv.lines().any(|l| l.starts_with("brute,")));
    assert!(csv.lines().any(|l| l.starts_with("closed,")));
}

#[test]
fn verify_reports() {
    let (code, v) = json(&["verify", "--p", "3", "--m", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["n"], 26);
    assert_eq!(v["sections"].as_array().unwrap().len(), 13);
    let min = v["sections"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["name"] == "minimality")
        .unwrap();
    assert_eq!(min["status"], "pass");
    assert_eq!(min["details"]["ab_verdict"], false);
    assert!(v["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n["kind"] == "claim-discrepancy" && n["section"] == "minimality"));

    let (code, v) = json(&[
        "verify",
        "--p",
        "5",
        "--m",
        "3",
        "--sections",
        "theorem1,theorem2",
    ]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["sections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["theorem1", "theorem2"]);
    assert_eq!(
        v["sections"][1]["details"]["brute_polynomial"],
        "1 + 60z^16 + 24z^20 + 40z^24"
    );
}

#[test]
fn sweep_grid_cap_and_empty() {
    let (code, v) = json(&[
        "sweep",
        "--grid",
        "3:2,3:9",
        "--sections",
        "lemma5",
        "--threads",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["entries"][0]["status"], "pass");
    assert_eq!(v["entries"][1]["status"], "skipped");
    assert!(v["entries"][1].get("report").is_none());

    let (code, v) = json(&["sweep", "--grid", ""]);
    assert_eq!(code, 0);
    assert_eq!(v["entries"], serde_json::json!([]));
    assert_eq!(v["overall"], "pass");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, stdout, _) = cwe(&[
        "verify",
        "--p",
        "3",
        "--m",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["p"], 3);
}

#[test]
fn text_formats_render() {
    let (code, text, _) = cwe(&["sweep", "--format", "text", "--grid", "3:2..3"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("sweep (max r = 2500): pass"));
    let (_, text, _) = cwe(&["verify", "--p", "3", "--m", "2", "--format", "text"]);
    assert!(text.contains("note [theorem1]"));
}
