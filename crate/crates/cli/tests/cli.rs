use std::process::{Command, Output};

use serde_json::Value;

use locc_rates::Execution;
use locc_rates_cli::{run_suite, Suite};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locc-rates"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = bin(&all);
    let v = serde_json::from_slice(&out.stdout).expect("valid JSON on stdout");
    (v, out.status.code().unwrap())
}

fn record<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == name)
        .unwrap_or_else(|| panic!("no record {name}"))
}

#[test]
fn rate_bipartite_is_entropy() {
    let (v, code) = json(&["rate", "--from", "schmidt:[0.9,0.1]", "--to", "ghz:r=2,k=2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "rate");
    let r = record(&v, "rate");
    assert!((r["value"].as_f64().unwrap() - 0.468996).abs() < 1e-6);
    assert!(r["note"].as_str().unwrap().starts_with("exact"));
}

#[test]
fn rate_epr_to_ghz_is_zero() {
    let (v, code) = json(&["rate", "--from", "epr:pair=(1,2),k=3", "--to", "ghz:r=2,k=3"]);
    assert_eq!(code, 0);
    assert_eq!(record(&v, "rate")["value"], 0.0);
}

#[test]
fn every_numeric_record_has_a_tolerance() {
    let (v, _) = json(&["continuity", "--state-a", "ghz:r=2,k=3", "--state-b", "epr:pair=(1,3),k=3"]);
    for r in v["results"].as_array().unwrap() {
        assert!(r["tolerance"].is_number(), "{r}");
        assert!(r["value"].is_number() || r["value"].is_null(), "{r}");
    }
    assert_eq!(v["inputs"]["dims"], serde_json::json!([2, 2, 2]));
}

#[test]
fn output_is_byte_identical_for_same_seed() {
    let args = ["concentrate", "--n", "300", "--p", "0.25", "--simulate", "--shots", "3000", "--seed", "7", "--json"];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(bin(&seq).stdout, a.stdout);
    let other = bin(&["concentrate", "--n", "300", "--p", "0.25", "--simulate", "--shots", "3000", "--seed", "8", "--json"]);
    assert_ne!(other.stdout, a.stdout);
}

#[test]
fn concentrate_csv_has_one_row_per_n() {
    let out = bin(&["concentrate", "--n", "40", "--p", "0.1"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,yield,expected_log_ghz");
    assert_eq!(lines.len(), 41);
    assert!(lines[1].starts_with("1,0,0"));
    assert!(String::from_utf8(out.stderr).unwrap().contains("checks passed"));
}

#[test]
fn monoid_rate_table_and_witness() {
    let out = bin(&[
        "monoid-rate", "--from", "schmidt:[0.75,0.25]", "--to", "ghz:r=2,k=2", "--nmax", "30",
    ]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().next(), Some("n,d,m,ratio"));
    assert_eq!(csv.lines().count(), 31);
    let (v, code) = json(&[
        "monoid-rate", "--from", "schmidt:[0.75,0.25]", "--to", "ghz:r=2,k=2", "--nmax", "30",
    ]);
    assert_eq!(code, 0);
    let best = record(&v, "best_ratio")["value"].as_f64().unwrap();
    let rows = v["table"]["rows"].as_array().unwrap();
    let max = rows.iter().map(|r| r[3].as_f64().unwrap()).fold(0.0, f64::max);
    assert_eq!(best, max);
    assert!(best <= 0.8113 + 0.05);
}

#[test]
fn monoid_rate_rejects_multipartite() {
    let out = bin(&["monoid-rate", "--from", "ghz:r=2,k=3", "--to", "ghz:r=2,k=3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("requires 2 parties"));
}

#[test]
fn parse_errors_carry_positions() {
    let out = bin(&["rate", "--from", "ghz:r=2,k=x", "--to", "ghz:r=2,k=2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("position 8"));
    let out = bin(&["rate", "--from", "schmidt:[0.9,0.2]", "--to", "ghz:r=2,k=2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = bin(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("unknown suite"));
}

#[test]
fn degenerate_continuity_pair_is_reported() {
    let (v, code) = json(&["continuity", "--state-a", "schmidt:[0.9,0.1]", "--state-b", "schmidt:[0.9,0.1]"]);
    assert_eq!(code, 0);
    assert_eq!(record(&v, "purified distance")["value"], 0.0);
    assert!(record(&v, "construction")["note"].as_str().unwrap().contains("degenerate"));
}

#[test]
fn all_suites_pass_and_are_deterministic() {
    for suite in Suite::ALL {
        let a = run_suite(suite, 42, Execution::Parallel).unwrap();
        assert!(a.pass(), "{suite}: {}", a.to_text());
        let b = run_suite(suite, 42, Execution::Sequential).unwrap();
        assert_eq!(a.to_json(), b.to_json(), "{suite}");
    }
}

#[test]
fn suites_pass_for_other_seeds() {
    for seed in [1, 7, 1234] {
        for suite in [Suite::Axioms, Suite::Continuity, Suite::Protocols] {
            let r = run_suite(suite, seed, Execution::Parallel).unwrap();
            assert!(r.pass(), "{suite} seed {seed}: {}", r.to_text());
        }
    }
}

#[test]
fn verify_binary_exit_code() {
    let out = bin(&["verify", "--suite", "continuity", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS") && !text.contains("FAIL"));
}
