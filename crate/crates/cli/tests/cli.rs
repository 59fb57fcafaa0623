use std::collections::BTreeMap;
use std::process::{Command, Output};

use serde_json::Value;
use sincbound_core::constants::{solve_p0, Catalogue};
use sincbound_core::report::ReportDocument;
use sincbound_core::verifier::Status;

fn sincbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sincbound")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("machine output is JSON")
}

#[test]
fn constants_text_shows_twelve_digits() {
    let out = sincbound(&["constants"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("p0               0.347307245464"), "{text}");
    assert!(text.contains("beta_13_half     0.98014"), "{text}");
}

#[test]
fn constants_machine_values_are_bit_exact() {
    let out = sincbound(&["constants", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let expected = Catalogue::closed_forms(solve_p0(1e-13).unwrap().value);
    let parsed: BTreeMap<String, f64> = doc["constants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| (row["name"].as_str().unwrap().to_string(), row["value"].as_f64().unwrap()))
        .collect();
    for (name, value) in expected.named() {
        assert_eq!(parsed[name].to_bits(), value.to_bits(), "{name}");
    }
}

#[test]
fn oracle_constants_print_thirty_digits() {
    let out = sincbound(&["constants", "--precision", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0.34730724546488887496281"), "{}", stdout(&out));
}

#[test]
fn eval_cos_power_upper_has_positive_margin() {
    let out = sincbound(&["eval", "cos-power", "--p", "0.3333333333", "--x", "1.0", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["side"], "upper");
    assert!((doc["sinc"].as_f64().unwrap() - 1f64.sin()).abs() < 1e-16);
    assert!(doc["margin"].as_f64().unwrap() > 0.0);
}

#[test]
fn eval_qi_lower_has_positive_margin() {
    let out = sincbound(&["eval", "qi", "--x", "1.5707", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["margin"].as_f64().unwrap() > 0.0);
}

#[test]
fn eval_outside_domain_exits_two() {
    let out = sincbound(&["eval", "cos-power", "--p", "1", "--x", "2.0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("domain"));
}

#[test]
fn eval_without_required_parameter_exits_two() {
    assert_eq!(sincbound(&["eval", "cos-power", "--x", "1.0"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(sincbound(&["verify", "--grid", "10"]).status.code(), Some(2));
    assert_eq!(sincbound(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(sincbound(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_all_is_byte_identical_and_round_trips() {
    let args = ["verify", "--suite", "all", "--format", "machine"];
    let first = sincbound(&args);
    let second = sincbound(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let text = stdout(&first);
    let doc = ReportDocument::from_json(&text).unwrap();
    assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
    assert_eq!(format!("{}\n", doc.to_json()), text);
    assert!(doc.all_expected);
    assert!(doc.cases.len() >= 30);
    assert!(!text.contains("null"));
}

#[test]
fn verify_core_verdicts_do_not_depend_on_grid() {
    let statuses = |grid: &str| -> Vec<(String, Status)> {
        let out = sincbound(&["verify", "--suite", "core", "--grid", grid, "--format", "machine"]);
        assert_eq!(out.status.code(), Some(0), "grid {grid}");
        let doc = ReportDocument::from_json(&stdout(&out)).unwrap();
        doc.cases.into_iter().map(|c| (c.id, c.status)).collect()
    };
    assert_eq!(statuses("64"), statuses("4096"));
}

#[test]
fn verify_sharpness_reports_only_violations() {
    let out = sincbound(&["verify", "--suite", "sharpness", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = ReportDocument::from_json(&stdout(&out)).unwrap();
    assert!(!doc.cases.is_empty());
    for c in &doc.cases {
        assert_eq!(c.status, Status::Violated, "{}", c.id);
        assert!(c.witness.is_some());
    }
}

#[test]
fn verify_text_summarizes() {
    let out = sincbound(&["verify", "--suite", "applications"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("all as expected"));
}

#[test]
fn integrals_machine_rows() {
    let out = sincbound(&["integrals", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let si = doc["si_half_pi"].as_f64().unwrap();
    let enclosure = doc["si_enclosure"].as_array().unwrap();
    assert!(enclosure[0].as_f64().unwrap() < si && si < enclosure[1].as_f64().unwrap());
    assert!((doc["catalan"].as_f64().unwrap() - 0.915_965_594_177_219).abs() < 1e-16);
    for row in doc["integrals"].as_array().unwrap() {
        assert!(row["relative_residual"].as_f64().unwrap() <= 1e-10);
    }
}

#[test]
fn integrals_text_shows_catalan() {
    let out = sincbound(&["integrals"]);
    assert!(stdout(&out).contains("0.9159655941772190"));
}
