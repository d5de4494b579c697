//! End-to-end tests of the `tclose` binary: exit codes, format parity,
//! and the benchmark subcommand.

use std::process::{Command, Output};

fn tclose(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tclose"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn audit_text_report_contains_the_headline_numbers() {
    let out = tclose(&[
        "audit",
        "--input",
        "data/incidents.csv",
        "--schema",
        "data/incidents.schema.json",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("k-anonymity: 2"));
    assert!(text.contains("l-diversity (distinct): 1"));
    assert!(text.contains("t = 5/7 = 0.7143"));
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let base = [
        "audit",
        "--input",
        "data/salary.csv",
        "--schema",
        "data/salary.schema.json",
    ];
    let text = stdout(&tclose(&base));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&tclose(&[&base[..], &["--format", "json"]].concat())))
            .unwrap();

    for attr in json["attributes"].as_array().unwrap() {
        let t = &attr["t"];
        let rendered = format!(
            "t = {}/{} = {}",
            t["numerator"].as_str().unwrap(),
            t["denominator"].as_str().unwrap(),
            t["decimal"].as_str().unwrap()
        );
        assert!(text.contains(&rendered), "missing {rendered:?} in text");
    }
}

#[test]
fn explicit_identifiers_do_not_affect_the_metrics() {
    let args = |input: &'static str| {
        [
            "audit",
            "--input",
            input,
            "--schema",
            "data/incidents.schema.json",
            "--format",
            "json",
            "--metric",
            "t",
        ]
    };
    let anonymized: serde_json::Value =
        serde_json::from_str(&stdout(&tclose(&args("data/incidents.csv")))).unwrap();
    let original: serde_json::Value =
        serde_json::from_str(&stdout(&tclose(&args("data/incidents_original.csv")))).unwrap();
    assert_eq!(anonymized["attributes"], original["attributes"]);
}

#[test]
fn metric_selection_and_attribute_filter() {
    let out = tclose(&[
        "audit",
        "--input",
        "data/salary.csv",
        "--schema",
        "data/salary.schema.json",
        "--metric",
        "t",
        "--attribute",
        "Disease",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(json.get("k").is_none());
    assert!(json.get("l").is_none());
    let attrs = json["attributes"].as_array().unwrap();
    assert_eq!(attrs.len(), 1);
    assert_eq!(attrs[0]["name"], "Disease");
}

#[test]
fn precision_flag_controls_decimal_rendering() {
    let out = tclose(&[
        "audit",
        "--input",
        "data/incidents.csv",
        "--schema",
        "data/incidents.schema.json",
        "--metric",
        "t",
        "--precision",
        "6",
        "--format",
        "json",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["attributes"][0]["t"]["decimal"], "0.714286");
}

#[test]
fn missing_schema_file_exits_2() {
    let out = tclose(&[
        "audit",
        "--input",
        "data/incidents.csv",
        "--schema",
        "data/nope.schema.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("nope.schema.json"));
}

#[test]
fn missing_input_file_exits_2() {
    let out = tclose(&[
        "audit",
        "--input",
        "data/nope.csv",
        "--schema",
        "data/incidents.schema.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn method_role_mismatch_exits_2() {
    let out = tclose(&[
        "audit",
        "--input",
        "data/incidents.csv",
        "--schema",
        "data/incidents.schema.json",
        "--method",
        "efficient",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1() {
    let out = tclose(&["audit", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(1));
    let out = tclose(&["bench", "--sizes", "1,4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    let out = tclose(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("audit"));
}

#[test]
fn bench_prints_one_row_per_size() {
    let out = tclose(&["bench", "--sizes", "16,32", "--reps", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("16"));
    assert!(text.contains("32"));
    assert!(text.contains("ratio"));
}

#[test]
fn drop_missing_skips_incomplete_rows() {
    let dir = std::env::temp_dir().join("tclose-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("gap.csv");
    std::fs::write(&csv_path, "Address,Zone,Incident\na,2C,fire\nb,2C,\n").unwrap();

    let schema = format!("{}/data/incidents.schema.json", env!("CARGO_MANIFEST_DIR"));
    let csv = csv_path.to_str().unwrap();

    let strict = tclose(&["audit", "--input", csv, "--schema", &schema]);
    assert_eq!(strict.status.code(), Some(2));

    let lenient = tclose(&["audit", "--input", csv, "--schema", &schema, "--drop-missing"]);
    assert!(lenient.status.success());
    assert!(stdout(&lenient).contains("k-anonymity: 1"));
}
