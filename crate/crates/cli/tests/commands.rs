use std::process::Command;

use serde_json::{json, Value};
use tadic_cli::config::parse_config;
use tadic_cli::run::{run, EXIT_PRECISION};
use tadic_cli::RunConfig;

fn config(pairs: &[(&str, &str)]) -> RunConfig {
    let pairs: Vec<(String, String)> = pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    RunConfig::from_pairs(&pairs).unwrap()
}

fn doc(pairs: &[(&str, &str)]) -> Value {
    let out = run(&config(pairs)).unwrap();
    assert_eq!(out.exit, 0, "{}", out.render());
    out.json
}

#[test]
fn hodge_of_cubic() {
    let d = doc(&[("command", "hodge"), ("poly", "x1^3"), ("p", "7")]);
    assert_eq!(d["vertices"], json!([[0, 0], [1, 0], [2, 2], [3, 6]]));
    assert_eq!(d["certified_upto"], json!(3));
    assert_eq!(d["D"], json!(3));
}

#[test]
fn hodge_with_fractional_vertex() {
    let d = doc(&[("command", "hodge"), ("poly", "x1^3"), ("p", "7")]);
    assert_eq!(d["absolute"]["vertices"][2], json!([2, {"num": "1", "den": "3"}]));
}

#[test]
fn trace_check_for_linear_polynomial() {
    let d = doc(&[("command", "verify"), ("what", "trace"), ("k", "1"), ("poly", "x1"), ("p", "2")]);
    assert_eq!(d["pass"], json!(true));
    assert!(d["modulus"].as_str().unwrap().starts_with("pi^"));
}

#[test]
fn np_report_has_all_polygons() {
    let d = doc(&[
        ("command", "np"),
        ("poly", "x1^3"),
        ("p", "7"),
        ("prec_p", "8"),
        ("prec_t", "36"),
        ("deg_s", "3"),
    ]);
    for key in ["np_t", "hp", "hp_absolute"] {
        assert!(d[key]["vertices"].is_array(), "{key}");
        assert!(d[key]["certified_upto"].is_i64(), "{key}");
    }
    assert_eq!(d["t_ordinary"], json!(true));
    assert_eq!(d["psi"]["1"]["ordinary"], json!(true));
}

#[test]
fn precision_underflow_exit_code() {
    let cfg = config(&[
        ("command", "np"),
        ("poly", "x1 + x2 + x1^-1*x2^-1"),
        ("p", "3"),
        ("prec_p", "6"),
        ("prec_t", "20"),
    ]);
    let e = run(&cfg).unwrap_err();
    assert_eq!(e.exit_code(), EXIT_PRECISION);
}

#[test]
fn congruence_defaults_past_the_bound() {
    let d = doc(&[("command", "congruence"), ("poly", "x1"), ("p", "3"), ("m", "1,2")]);
    for m in ["1", "2"] {
        let entries = d["m"][m]["entries"].as_array().unwrap();
        assert_eq!(entries.len(), 2);
        assert!(entries.iter().all(|e| e["pass"] == json!(true)), "{m}: {entries:?}");
    }
}

#[test]
fn sum_constant_term_counts_the_torus() {
    let d = doc(&[("command", "sum"), ("poly", "x1 + x2 + x1^-1*x2^-1"), ("p", "3"), ("k", "1,2")]);
    assert_eq!(d["sums"]["1"]["t"]["terms"]["0"], json!("4"));
    assert_eq!(d["sums"]["2"]["t"]["terms"]["0"], json!("64"));
}

#[test]
fn config_file_then_flags() {
    let text = "command = hodge\npoly = x1^3\np = 7\nhodge-depth = 1 # comment\n";
    let mut pairs = parse_config(text).unwrap();
    pairs.push(("hodge_depth".into(), "2".into()));
    let cfg = RunConfig::from_pairs(&pairs).unwrap();
    assert_eq!(cfg.hodge_depth, Some(2));
}

#[test]
fn output_is_reproducible() {
    let pairs = [
        ("command", "survey"),
        ("poly", "x1 + x2 + x1^-1*x2^-1"),
        ("p", "3"),
        ("samples", "4"),
        ("seed", "11"),
        ("deg_s", "2"),
    ];
    let a = run(&config(&pairs)).unwrap().render();
    let b = run(&config(&pairs)).unwrap().render();
    assert_eq!(a, b);
}

#[test]
fn binary_writes_json() {
    let out = Command::new(env!("CARGO_BIN_EXE_tadic"))
        .args(["hodge", "x1^3", "--p", "7"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vertices"], json!([[0, 0], [1, 0], [2, 2], [3, 6]]));
}

#[test]
fn binary_reports_parse_errors() {
    let out = Command::new(env!("CARGO_BIN_EXE_tadic"))
        .args(["hodge", "2*x1", "--p", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}
