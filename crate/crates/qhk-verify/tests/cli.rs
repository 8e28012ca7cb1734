//! Command-line contract: exit codes, JSON schema stability, determinism.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_qhk-verify"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).into_owned(),
        String::from_utf8_lossy(&output.stderr).into_owned(),
    )
}

fn normalized_json(raw: &str) -> serde_json::Value {
    let mut value: serde_json::Value = serde_json::from_str(raw).expect("valid JSON");
    for key in ["reports", "kernel"] {
        if let Some(items) = value.get_mut(key).and_then(|v| v.as_array_mut()) {
            for item in items {
                item["elapsed_ms"] = serde_json::json!(0);
            }
        }
    }
    value
}

#[test]
fn all_checks_at_n2_exit_zero() {
    let (code, stdout, _) = run(&["--n", "2", "--check", "all"]);
    assert_eq!(code, 0, "stdout:\n{stdout}");
    assert!(stdout.contains("[pass] lemma1"));
    assert!(stdout.contains("[pass] structure"));
    assert!(stdout.contains("[vacuous] lemma3_l30_nonvanishing"));
    assert!(stdout.contains("kernel (n = 2)"));
}

#[test]
fn unknown_check_is_a_usage_error() {
    let (code, _, stderr) = run(&["--check", "nonsense"]);
    assert_eq!(code, 2, "stderr:\n{stderr}");
}

#[test]
fn model_size_below_two_is_a_usage_error() {
    let (code, _, stderr) = run(&["--n", "1", "--check", "lemma2"]);
    assert_eq!(code, 2, "stderr:\n{stderr}");
}

#[test]
fn kernel_size_guard_requires_force() {
    let (code, _, stderr) = run(&["--n", "5", "--check", "kernel"]);
    assert_eq!(code, 2, "stderr:\n{stderr}");
    assert!(stderr.contains("force"), "stderr:\n{stderr}");
}

#[test]
fn mutated_run_fails_with_exit_one() {
    let (code, _, _) = run(&["--n", "2", "--check", "lemma1", "--flip-omega-h"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["--n", "2", "--check", "lemma2", "--perturb-coeff", "wedge-part"]);
    assert_eq!(code, 1);
}

#[test]
fn json_report_matches_golden() {
    let (code, stdout, _) = run(&["--n", "2", "--check", "lemma2", "--format", "json"]);
    assert_eq!(code, 0);
    let golden = include_str!("golden/lemma2_n2.json");
    assert_eq!(normalized_json(&stdout), normalized_json(golden));
}

#[test]
fn json_reports_are_deterministic() {
    let (c1, first, _) = run(&["--n", "2,3", "--check", "traces", "--format", "json", "--seed", "7"]);
    let (c2, second, _) = run(&["--n", "2,3", "--check", "traces", "--format", "json", "--seed", "7"]);
    assert_eq!((c1, c2), (0, 0));
    let a = serde_json::to_string(&normalized_json(&first)).unwrap();
    let b = serde_json::to_string(&normalized_json(&second)).unwrap();
    assert_eq!(a, b, "same config and seed must be byte-identical modulo elapsed");
}

#[test]
fn report_goes_to_file_with_out_flag() {
    let dir = std::env::temp_dir().join("qhk_verify_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (code, stdout, _) = run(&[
        "--n",
        "2",
        "--check",
        "corollary",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let contents = std::fs::read_to_string(&path).unwrap();
    let value = normalized_json(&contents);
    let reports = value["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["name"], "corollary");
    assert_eq!(reports[1]["name"], "corollary_d1_nonvanishing");
    assert_eq!(reports[1]["status"], "vacuous");
    std::fs::remove_file(&path).ok();
}

#[test]
fn scalars_serialize_as_exact_strings() {
    let (_, stdout, _) = run(&["--n", "3", "--check", "lemma2", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let actual = value["reports"][0]["actual"].as_str().unwrap();
    assert!(actual.contains("56/15+0/1*i"), "actual section:\n{actual}");
}
