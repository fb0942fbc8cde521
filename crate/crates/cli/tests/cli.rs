use std::process::{Command, Output};

use grasslab_cli::{run_verify, Format, RunConfig, Stage};
use serde_json::Value;

fn grasslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grasslab")).args(args).output().unwrap()
}

const FIXTURE: [&str; 8] = ["--q", "2", "--n", "7", "--k", "3", "--i", "2"];

fn with_fixture<'a>(cmd: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend(FIXTURE);
    v.extend(extra);
    v
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn partition_reports_fixture_sizes() {
    let out = grasslab(&with_fixture("partition", &["--seed", "0"]));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let counts: Vec<u64> = v["data"]["classes"].as_array().unwrap().iter().map(|c| c["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![96, 9, 72, 9, 24]);
    assert_eq!(v["data"]["classes"][1]["members"].as_array().unwrap().len(), 9);
    assert_eq!(v["passed"], true);
}

#[test]
fn excluded_parameters_are_usage_errors() {
    let out = grasslab(&["partition", "--q", "2", "--n", "7", "--k", "3", "--i", "1"]);
    assert_eq!(out.status.code(), Some(64));
    let out = grasslab(&["partition", "--q", "2", "--n", "6", "--k", "3", "--i", "2"]);
    assert_eq!(out.status.code(), Some(64));
    let out = grasslab(&["partition", "--q", "6", "--n", "7", "--k", "3", "--i", "2"]);
    assert_eq!(out.status.code(), Some(64));
    let out = grasslab(&["verify", "--q", "2"]);
    assert_eq!(out.status.code(), Some(64));
    let out = grasslab(&with_fixture("verify", &["--local-budget", "0"]));
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(grasslab(&["--help"]).status.code(), Some(0));
}

#[test]
fn tampered_table_fails_and_is_named() {
    let out = grasslab(&with_fixture("verify", &["--tamper", "A_COMB", "--skip", "witnesses,bfs"]));
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("A_COMB/"), "{stderr}");
    let v = json(&out);
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].starts_with("A_COMB/"));
}

#[test]
fn witness_prints_a_verified_matrix() {
    let out = grasslab(&with_fixture(
        "witness",
        &["--z", "2:7:3:1000000,0100000,0000010", "--z2", "2:7:3:1000000,0100000,0000001"],
    ));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["data"]["class"], "A+");
    assert_eq!(v["data"]["sigma"].as_array().unwrap().len(), 7);
    assert_eq!(v["passed"], true);
}

#[test]
fn cross_class_witness_is_a_class_error() {
    let out = grasslab(&with_fixture(
        "witness",
        &["--z", "2:7:3:1000000,0100000,0000010", "--z2", "2:7:3:0100000,0010000,0001000"],
    ));
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("A+") && stderr.contains("A-"), "{stderr}");
}

#[test]
fn non_neighbor_witness_is_a_domain_error() {
    let out = grasslab(&with_fixture(
        "witness",
        &["--z", "2:7:3:0001000,0000100,0000010", "--z2", "2:7:3:1000000,0100000,0000010"],
    ));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_subspace_is_a_parse_error() {
    let out = grasslab(&with_fixture("witness", &["--z", "2:7:3:10x0000", "--z2", "2:7:3:1000000"]));
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn markdown_output() {
    let out = grasslab(&with_fixture("verify", &["--format", "markdown", "--skip", "bfs"]));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# grasslab verify: q=2 n=7 k=3 i=2 seed=0"));
    assert!(text.contains("| `STRUCTURE/B,B` | pass | `29` | `29` |"));
    assert!(text.contains("- bfs: skipped on request"));
}

#[test]
fn timings_are_opt_in() {
    let plain = json(&grasslab(&with_fixture("verify", &["--skip", "bfs,witnesses"])));
    assert!(plain.get("timings_ms").is_none());
    let timed = json(&grasslab(&with_fixture("verify", &["--skip", "bfs,witnesses", "--timings"])));
    assert!(timed["timings_ms"].is_object());
}

#[test]
fn q3_verify_skips_local_spectrum() {
    let mut cfg = RunConfig::new(3, 7, 3, 2, 0).unwrap();
    cfg.skip = vec![Stage::LocalSpectrum];
    cfg.witness_samples = 5;
    let r = run_verify(&cfg).unwrap();
    assert!(r.passed, "{:#?}", r.failing().collect::<Vec<_>>());
    let skipped: Vec<&str> = r.skipped.iter().map(|s| s.stage.as_str()).collect();
    assert_eq!(skipped, vec!["bfs", "local-spectrum"]);
    assert!(r.checks.iter().any(|c| c.name == "EIGEN/brute_char_poly" && c.passed));
    assert!(r.checks.windows(2).all(|w| w[0].name <= w[1].name));
}

#[test]
fn local_spectrum_budget_is_reported_as_skip() {
    let mut cfg = RunConfig::new(2, 7, 3, 2, 1).unwrap();
    cfg.local_budget = 100;
    cfg.skip = vec![Stage::Bfs, Stage::Witnesses];
    let r = run_verify(&cfg).unwrap();
    assert!(r.passed);
    let local = r.skipped.iter().find(|s| s.stage == "local-spectrum").unwrap();
    assert!(local.reason.contains("needs 210"), "{}", local.reason);
    let _ = r.render(Format::Json);
}

#[test]
fn every_seed_is_deterministic_in_process() {
    for seed in [0, 3] {
        let mut cfg = RunConfig::new(2, 9, 4, 3, seed).unwrap();
        cfg.skip = vec![Stage::Bfs];
        let a = run_verify(&cfg).unwrap().render(Format::Json);
        let b = run_verify(&cfg).unwrap().render(Format::Json);
        assert_eq!(a, b);
    }
}
