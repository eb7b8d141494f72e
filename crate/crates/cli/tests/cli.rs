//! End-to-end checks of the command-line surface: exit codes, report
//! schema, witness content, and byte-level determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcpi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = run(&full);
    let code = out.status.code().expect("exit code");
    let value: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (value, code)
}

#[test]
fn principal_klein_refuted_with_witness() {
    let (report, code) = run_json(&["principal", "--group", "klein"]);
    assert_eq!(code, 1);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["command"], "principal");
    assert_eq!(report["result"]["verdict"], "not_principal");
    assert_eq!(report["result"]["witness"]["a"], "c");
    assert_eq!(report["result"]["witness"]["S"], serde_json::json!(["x"]));
    assert_eq!(report["result"]["witness"]["n"], 2);
    assert_eq!(report["result"]["condition_b"]["index"], 2);
    assert_eq!(report["result"]["condition_b"]["coset_representative"], "c");
    assert!(!report["citations"].as_array().unwrap().is_empty());
}

#[test]
fn principal_verdicts_for_principal_groups() {
    let (report, code) = run_json(&["principal", "--group", "z", "--rank", "3"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["verdict"], "principal");
    assert!(report["result"]["witness_search"]["witness"].is_null());

    let (report, code) = run_json(&["principal", "--group", "heisenberg"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["verdict"], "principal");
}

#[test]
fn tc_reports() {
    let (report, code) = run_json(&["tc", "--group", "z", "--rank", "4"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["lower"], 4);
    assert_eq!(report["result"]["upper"], 4);
    assert_eq!(report["result"]["exact"], 4);

    let (report, _) = run_json(&["tc", "--group", "free", "--rank", "2"]);
    assert_eq!(report["result"]["exact"], 2);

    let (report, _) = run_json(&["tc", "--group", "z", "--rank", "1"]);
    assert_eq!(report["result"]["lower"], 1);
    assert_eq!(report["result"]["upper"], 3);
    assert!(report["result"]["exact"].is_null());
    assert!(!report["result"]["notes"].as_array().unwrap().is_empty());

    let (report, _) = run_json(&["tc", "--group", "klein"]);
    assert_eq!(report["result"]["lower"], 2);
    assert_eq!(report["result"]["upper"], 4);
}

#[test]
fn cdd_reports_binomial_ranks() {
    let (report, code) = run_json(&["cdd", "--rank", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["cd_d"], 2);
    assert_eq!(report["result"]["ranks_per_degree"], serde_json::json!([1, 2, 1]));
    assert_eq!(report["result"]["torsion_free"], true);

    let (report, code) = run_json(&["cdd", "--rank", "1"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["ranks_per_degree"], serde_json::json!([1, 1]));
}

#[test]
fn join_reports() {
    let (report, code) = run_json(&["join", "--points", "3", "--dim", "1"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["wedge_formula_holds"], true);
    assert_eq!(report["result"]["expected_top_rank"], 4);

    let (report, code) = run_json(&["join", "--points", "4", "--dim", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["expected_top_rank"], 27);
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        vec!["principal", "--group", "dihedral"],
        vec!["cdd", "--rank", "0"],
        vec!["cdd", "--rank", "9"],
        vec!["tc", "--group", "klein", "--rank", "2"],
        vec!["join", "--points", "100", "--dim", "2"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn reports_are_deterministic_up_to_wall_time() {
    let strip = |mut v: Value| {
        v["wall_time_ms"] = Value::Null;
        serde_json::to_string(&v).unwrap()
    };
    for args in [
        vec!["principal", "--group", "klein"],
        vec!["tc", "--group", "heisenberg"],
        vec!["cdd", "--rank", "3"],
        vec!["join", "--points", "2", "--dim", "1"],
    ] {
        let (a, _) = run_json(&args);
        let (b, _) = run_json(&args);
        assert_eq!(strip(a), strip(b), "nondeterministic report for {args:?}");
    }
}

#[test]
fn radius_cap_env_var_clamps_searches() {
    let out = Command::new(env!("CARGO_BIN_EXE_tcpi"))
        .args(["principal", "--group", "klein", "--radius", "5", "--json"])
        .env("BREDON_TC_RADIUS_CAP", "2")
        .output()
        .expect("binary runs");
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["parameters"]["radius"], 2);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_passes_and_reports_every_check() {
    let (report, code) = run_json(&["selftest", "--radius", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["failed"], 0);
    let checks = report["result"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 22);
    for check in checks {
        assert_eq!(check["passed"], true, "check {} failed", check["name"]);
        assert!(check["millis"].is_number());
    }
}

#[test]
fn human_output_mentions_the_witness() {
    let out = run(&["principal", "--group", "klein"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("NOT principal"));
    assert!(text.contains("a = c"));
    assert!(text.contains("n = 2"));
}
