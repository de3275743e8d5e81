use std::process::{Command, Output};

use chromatic::cli::cases::RunReport;
use chromatic::cli::manifest::Manifest;
use serde_json::Value;

fn chromatic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chromatic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn reports(o: &Output) -> Vec<RunReport> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("one report per line")).collect()
}

fn without_timing(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("timing");
            v
        })
        .collect()
}

#[test]
fn tanabe_dimension_case_passes_with_dimension_twelve() {
    let o = chromatic(&["run", "tanabe-dim", "--p", "3", "--n", "1", "--r", "1", "--q", "4", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &reports(&o)[0];
    assert!(r.pass);
    assert_eq!(r.measured["dimension"], 12);
    assert!(!r.overridden);
}

#[test]
fn invalid_parameters_exit_two() {
    let o = chromatic(&["run", "tanabe-dim", "--p", "3", "--q", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid parameters"));
    assert_eq!(chromatic(&["kring", "--p", "4"]).status.code(), Some(2));
    assert_eq!(chromatic(&["run", "no-such-case"]).status.code(), Some(2));
    assert_eq!(chromatic(&["ss", "--bounds", "60"]).status.code(), Some(2));
}

#[test]
fn nk_identities_case_checks_all_five() {
    let o = chromatic(&["run", "nk-identities"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &reports(&o)[0];
    assert!(r.pass);
    for name in ["A", "B", "C", "D", "E"] {
        assert_eq!(r.checks.get(&format!("identity_{name}")), Some(&true));
    }
}

#[test]
fn dimension_table_as_csv() {
    let o = chromatic(&["kring", "--d", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d,dim,ps_coeff,match");
    assert_eq!(&lines[1..], ["0,1,1,true", "1,3,3,true", "2,6,6,true", "3,12,12,true", "4,21,21,true"]);
}

#[test]
fn kring_json_reports_socle_and_lambda() {
    let o = chromatic(&["kring", "--d", "3"]);
    let rows: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 4);
    // the socle is spanned by c3^4, whose normal form is 2 c2^3
    let socle = rows[3]["socle_generator"].as_array().unwrap();
    assert_eq!(socle.len(), 1);
    assert_eq!(socle[0]["monomial"], "c2^3");
    let lambda = rows[3]["lambda"].as_u64().unwrap();
    assert!(lambda % 3 != 0);
    assert_eq!(rows[2]["lambda"], Value::Null);
}

#[test]
fn empty_selection_is_an_empty_array() {
    for args in [vec!["run"], vec!["run", "--format", "json"]] {
        let o = chromatic(&args);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), "[]");
    }
}

#[test]
fn orbit_table_at_level_two() {
    let o = chromatic(&["char", "orbits", "--level", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let expected: Value = serde_json::json!([
        { "representative": [0], "size": 1 },
        { "representative": [1], "size": 3 },
        { "representative": [2], "size": 3 },
        { "representative": [3], "size": 1 },
        { "representative": [6], "size": 1 },
    ]);
    assert_eq!(v, expected);
}

#[test]
fn identical_flags_give_identical_reports() {
    let args = ["run", "nk-identities", "orbit-counts", "tanabe-dim-d2", "hc-twist"];
    let a = chromatic(&args);
    let b = chromatic(&args);
    assert_eq!(without_timing(&a), without_timing(&b));
    let ids: Vec<String> = reports(&a).into_iter().map(|r| r.case).collect();
    assert_eq!(ids, ["hc-twist", "nk-identities", "orbit-counts", "tanabe-dim-d2"]);
}

#[test]
fn cached_and_cold_runs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let cases = ["run", "tanabe-dim", "soc-soc", "divisor-relation-d2"];
    let cold = chromatic(&cases);
    let mut with_cache = cases.to_vec();
    with_cache.extend(["--cache-dir", cache]);
    let first = chromatic(&with_cache);
    let second = chromatic(&with_cache);
    assert_eq!(without_timing(&cold), without_timing(&first));
    assert_eq!(without_timing(&first), without_timing(&second));
    let hits: u32 = reports(&second).iter().map(|r| r.timing.cache_hits).sum();
    assert_eq!(hits, 3);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 2);
}

#[test]
fn golden_reports() {
    let o = chromatic(&["run", "nk-identities", "orbit-counts", "tanabe-dim-d2", "gauss-brute", "socle-char"]);
    let golden: Value = serde_json::from_str(include_str!("golden/run_small.json")).unwrap();
    assert_eq!(Value::Array(without_timing(&o)), golden);
}

#[test]
fn failing_expectation_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("manifest.json");
    std::fs::write(
        &path,
        r#"{ "version": 1, "cases": [
            { "id": "wrong-dim", "claim": "tanabe-dim", "params": { "d": 2 },
              "expected": { "kind": "exact", "field": "dimension", "value": 7 }, "citation": "deliberately wrong" } ] }"#,
    )
    .unwrap();
    let o = chromatic(&["run", "wrong-dim", "--manifest", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = &reports(&o)[0];
    assert!(!r.pass);
    assert_eq!(r.witness.as_ref().unwrap()["measured"], 6);
}

#[test]
fn overrides_skip_exact_expectations() {
    let o = chromatic(&["run", "tanabe-dim", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &reports(&o)[0];
    assert!(r.overridden && r.pass);
    assert_eq!(r.measured["dimension"], 6);
    assert!(!r.checks.contains_key("expected"));
}

#[test]
fn exhausted_budget_reports_unsaturated() {
    let o = chromatic(&["run", "tanabe-dim-h2-d3", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let r = &reports(&o)[0];
    assert_eq!(r.measured["status"], "unsaturated");
    assert!(r.witness.is_some());
}

#[test]
fn ss_tables_in_both_formats() {
    let o = chromatic(&["ss", "--k", "1", "--bounds", "30,9", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("internal,bott,groupoid,page_dim,homology_dim,next_page_dim,match"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
    let o = chromatic(&["ss", "--k", "1", "--bounds", "30,9"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert!(!v["report"]["entries"].as_array().unwrap().is_empty());
}

#[test]
fn char_products_and_verification() {
    let o = chromatic(&["char", "products", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    // trivial times trivial: convolution counts splittings of F_4^2, HC counts lines
    let row = rows.iter().find(|r| r["left"] == "(0)" && r["right"] == "(0)").unwrap();
    assert_eq!(row["convolution"][0], serde_json::json!({ "class": "(0)^2", "value": "20" }));
    assert_eq!(row["harish_chandra"][0], serde_json::json!({ "class": "(0)^2", "value": "5" }));
    let o = chromatic(&["char", "verify", "--d", "4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn fgl_series_output() {
    let o = chromatic(&["fgl", "--p", "3", "--n", "1", "--trunc", "12"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["log"][3], "1/3");
    assert_eq!(v["log"][9], "1/9");
    assert_eq!(v["wdegree"], 3);
    let o = chromatic(&["fgl", "--m", "-1", "--trunc", "6", "--precision", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // [-1](x) = -x at height one: -1 mod 9
    assert_eq!(v["series"][1], 8);
    assert_eq!(v["modulus"], 9);
}

#[test]
fn builtin_manifest_is_valid_and_lists() {
    let m = Manifest::builtin();
    assert!(m.cases.len() >= 30);
    let o = chromatic(&["run", "--list"]);
    assert_eq!(stdout(&o).lines().count(), m.cases.len());
    assert!(Manifest::parse(r#"{ "version": 2, "cases": [] }"#).is_err());
}
