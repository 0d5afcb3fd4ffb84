use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn rico(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rico")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn malformed_fixtures_exit_2_and_name_the_field() {
    let cases = [
        ("not_json.json", "document"),
        ("missing_points.json", "points"),
        ("five_points.json", "points"),
        ("bad_scalar.json", "points[3][0]"),
        ("zero_denominator.json", "points[3][0]"),
        ("zero_point.json", "points[5]"),
        ("number_not_string.json", "points[0][0]"),
        ("pair_without_field.json", "points[5][0]"),
        ("bad_field.json", "field.d"),
        ("unused_field.json", "field"),
    ];
    for (file, field) in cases {
        let path = fixture(&format!("malformed/{file}"));
        for sub in ["membership", "pascals", "invariants"] {
            let out = rico(&[sub, path.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(2), "{sub} {file}");
            let err = String::from_utf8_lossy(&out.stderr);
            assert!(err.contains(field), "{file}: {err}");
        }
    }
    assert_eq!(rico(&["membership", "/nonexistent/x.json"]).status.code(), Some(2));
    assert_eq!(rico(&["degree", "2", "3", "x", "7"]).status.code(), Some(2));
    assert_eq!(rico(&["shuffle", "--t", "sqrt(y)"]).status.code(), Some(2));
}

#[test]
fn degenerate_inputs_exit_3() {
    let rep = fixture("repeated.json");
    assert_eq!(rico(&["membership", rep.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(rico(&["pascals", rep.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(rico(&["construct-rico", "0", "inf", "1", "0"]).status.code(), Some(3));
    assert_eq!(rico(&["degree", "0", "inf", "1", "-1"]).status.code(), Some(3));
    assert_eq!(rico(&["degree", "2", "2", "5", "7"]).status.code(), Some(3));
    assert_eq!(rico(&["shuffle", "--t", "1"]).status.code(), Some(3));
    let svg = tmp("never.svg");
    let s4 = fixture("sigma4.json");
    assert_eq!(rico(&["plot", s4.to_str().unwrap(), svg.to_str().unwrap()]).status.code(), Some(3));
    let neg = fixture("sigma_root_minus_three.json");
    assert_eq!(rico(&["plot", neg.to_str().unwrap(), svg.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn membership_reports() {
    let v = json_of(&rico(&["membership", fixture("worked.json").to_str().unwrap()]));
    assert_eq!(v["is_rico"], true);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["alignments"].as_array().unwrap().len(), 8);
    let v = json_of(&rico(&["membership", fixture("generic.json").to_str().unwrap()]));
    assert_eq!(v["is_rico"], false);
    assert_eq!(v["agreement"], true);
    let v = json_of(&rico(&["membership", fixture("sigma_root_minus_three.json").to_str().unwrap()]));
    assert_eq!(v["is_rico"], true);
}

#[test]
fn invariants_and_pascals() {
    let v = json_of(&rico(&["invariants", fixture("worked.json").to_str().unwrap()]));
    assert_eq!(v["U6"], "0");
    assert_eq!(v["U10"], "0");
    assert_eq!(v["U6_coefficients"], "4032*I2^3 + -25025*I2*I4 + 45375*I6");
    let v = json_of(&rico(&["pascals", fixture("generic.json").to_str().unwrap()]));
    assert_eq!(v["distinct_lines"], 60);
    assert_eq!(v["lines"].as_array().unwrap().len(), 60);
    let v = json_of(&rico(&["pascals", fixture("worked.json").to_str().unwrap()]));
    assert_eq!(v["arrays"], 60);
}

#[test]
fn degree_and_shuffle() {
    let v = json_of(&rico(&["degree", "2", "3", "5", "7"]));
    assert_eq!(v["distinct_configurations"], 60);
    assert_eq!(v["from_type2"], 36);
    assert_eq!(v["from_type3"], 24);
    assert_eq!(v["orbit_sizes"]["8"], 60);
    assert_eq!(v["assignments"]["type2"], 144);
    let q = v["quadratics"].as_array().unwrap();
    assert!(q.iter().any(|x| x["assignment"] == "A->z1,B->z2,D->z3,E->z4"
        && x["coefficients"] == serde_json::json!(["13", "-112", "217"])));
    let v = json_of(&rico(&["shuffle"]));
    assert_eq!(v["order"], 8);
    assert_eq!(v["equals_generated_by_u_v"], true);
    let v = json_of(&rico(&["shuffle", "--t", "sqrt(-3)"]));
    assert_eq!(v["order"], 16);
    assert!(v["elements"].as_array().unwrap().contains(&Value::from("(A B)(C D)(E F)")));
    let v = json_of(&rico(&["shuffle", "--t", "4"]));
    assert!(!v["elements"].as_array().unwrap().contains(&Value::from("(B E)")));
}

#[test]
fn construct_then_test_membership() {
    let out = tmp("construct.json");
    let v = json_of(&rico(&["construct-rico", "-1/3", "2", "1/4", "1", "--json", out.to_str().unwrap()]));
    assert_eq!(v["t"], "4");
    assert_eq!(v["points"][4], serde_json::json!(["1/18", "1"]));
    assert_eq!(v["points"][5], serde_json::json!(["-3/2", "1"]));
    let m = json_of(&rico(&["membership", out.to_str().unwrap()]));
    assert_eq!(m["is_rico"], true);
}

#[test]
fn svg_is_deterministic() {
    let (a, b) = (tmp("a.svg"), tmp("b.svg"));
    for input in ["worked.json", "generic.json"] {
        let input = fixture(input);
        json_of(&rico(&["plot", input.to_str().unwrap(), a.to_str().unwrap()]));
        json_of(&rico(&["plot", input.to_str().unwrap(), b.to_str().unwrap()]));
        let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert_eq!(x, y);
        let text = String::from_utf8(x).unwrap();
        assert!(text.starts_with("<?xml") && text.trim_end().ends_with("</svg>"));
    }
    // Σ(4) moved off the chart boundary draws the same scene as the worked sextuple
    let s4 = fixture("sigma4.json");
    json_of(&rico(&["plot", s4.to_str().unwrap(), b.to_str().unwrap(), "--mobius", "2,-1,1,3"]));
    let w = fixture("worked.json");
    json_of(&rico(&["plot", w.to_str().unwrap(), a.to_str().unwrap()]));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
