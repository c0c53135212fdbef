use std::process::Command;

use nodal_certify::{run, run_all, Config, Verdict};
use nodal_core::lattice::gram_l;
use proptest::prelude::*;
use serde_json::Value;

fn verify(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .env_remove("VERIFY_PRIME")
        .env_remove("VERIFY_SLICE_PRIME")
        .env_remove("VERIFY_RANK_PRIME")
        .env_remove("VERIFY_SEED")
        .env_remove("VERIFY_EXACT_RATIONALS")
        .output()
        .expect("verify runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn strip_timing(mut report: Value) -> Value {
    for c in report["certificates"].as_array_mut().unwrap() {
        c["elapsed_ms"] = Value::from(0);
    }
    report
}

#[test]
fn gram_lattice_reports_signature_one_four() {
    let (code, out) = verify(&["gram-L", "--json", "-"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    let cert = &report["certificates"][0];
    assert_eq!(cert["verdict"], "pass");
    assert_eq!(
        cert["witnesses"]["report"]["signature"],
        serde_json::json!([1, 4, 0])
    );
    assert!(!cert["paper_anchor"].as_str().unwrap().is_empty());
}

#[test]
fn unknown_claim_is_a_usage_error() {
    assert_eq!(verify(&["nope"]).0, 2);
}

#[test]
fn composite_primes_are_usage_errors() {
    assert_eq!(verify(&["gram-L", "--prime", "1000"]).0, 2);
    assert_eq!(verify(&["gram-L", "--slice-prime", "15"]).0, 2);
    assert_eq!(verify(&["gram-L", "--rank-prime", "1"]).0, 2);
}

#[test]
fn environment_supplies_defaults() {
    let out = Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(["bb-gamma", "--json", "-"])
        .env("VERIFY_SEED", "5")
        .output()
        .unwrap();
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["config"]["seed"], 5);
    assert_eq!(report["certificates"][0]["seed"], 5);
}

#[test]
fn cubics_through_scroll_form_a_thirteen_dimensional_space() {
    let cert = run("cubics-13", &Config::default()).unwrap();
    assert_eq!(cert.verdict, Verdict::Pass);
    for domain in ["over_fp", "over_q"] {
        assert_eq!(cert.witnesses[domain]["h0"], 13);
        assert_eq!(cert.witnesses[domain]["h1"], 0);
    }
}

#[test]
fn heuristic_verdict_is_distinct_from_pass() {
    let cert = run("smooth-cubic", &Config::default()).unwrap();
    assert_eq!(cert.verdict, Verdict::HeuristicPass);
    assert_eq!(
        serde_json::to_value(cert.verdict).unwrap(),
        "heuristic-pass"
    );
}

#[test]
fn exact_rationals_repeats_span_over_q() {
    let config = Config {
        exact_rationals: true,
        ..Config::default()
    };
    for id in ["gamma-span-7", "unique-sextic"] {
        let cert = run(id, &config).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass, "{id}");
        assert!(cert.witnesses.get("over_q").is_some(), "{id}");
    }
}

#[test]
fn forced_bad_gram_matrix_fails_the_aggregate() {
    let mut bad = gram_l();
    bad.gram[0][1] = 4;
    bad.gram[1][0] = 4;
    let config = Config {
        gram_override: Some(bad),
        ..Config::default()
    };
    let report = run_all(&config);
    assert!(!report.all_passed);
    assert_ne!(report.exit_code(), 0);
    let gram = report
        .certificates
        .iter()
        .find(|c| c.claim_id == "gram-L")
        .unwrap();
    assert_eq!(gram.verdict, Verdict::Fail);
}

#[test]
fn default_suite_is_deterministic_modulo_timing() {
    let dir = std::env::temp_dir().join(format!("verify-determinism-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let reports: Vec<Value> = ["a.json", "b.json"]
        .iter()
        .map(|name| {
            let path = dir.join(name);
            let (code, out) = verify(&["all", "--json", path.to_str().unwrap()]);
            assert_eq!(code, 0, "{out}");
            assert_eq!(out.lines().count(), 20);
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
        })
        .collect();
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(reports[0]["all_passed"], true);
    assert_eq!(
        strip_timing(reports[0].clone()),
        strip_timing(reports[1].clone())
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn identical_configs_give_identical_witnesses(seed in any::<u64>()) {
        let config = Config { seed, ..Config::default() };
        for id in ["scroll-ideal", "secant-dim-5", "gram-L"] {
            let a = run(id, &config).unwrap();
            let b = run(id, &config).unwrap();
            prop_assert_eq!(&a.witnesses, &b.witnesses);
            prop_assert_eq!(a.verdict, Verdict::Pass);
        }
    }
}
