use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn submaj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_submaj")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Writes a real matrix in the `{rows, cols, entries}` format.
fn write_matrix(dir: &Path, name: &str, rows: usize, cols: usize, entries: &[f64]) -> PathBuf {
    let pairs: Vec<[f64; 2]> = entries.iter().map(|&x| [x, 0.0]).collect();
    let text = serde_json::json!({ "rows": rows, "cols": cols, "entries": pairs }).to_string();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn reproduce_prints_profiles_and_failure() {
    let out = submaj(&["reproduce", "counterexample-tr", "--lambda", "2", "--mu", "0", "--theta", "0.5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("[2.718281828459, 0.000000000000]"), "{text}");
    assert!(text.contains("margin = 1.718281828459"));
    assert!(text.contains("submajorization fails"));

    let out = submaj(&["reproduce", "counterexample-tr", "--lambda", "1", "--mu", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn reproduce_accepts_negative_parameters() {
    let out = submaj(&["reproduce", "counterexample-tr", "--lambda", "-1", "--mu", "-2", "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"]["holds"], false);
}

#[test]
fn check_reports_verdicts_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let small = dir.path().join("small.json");
    let large = dir.path().join("large.json");
    std::fs::write(&small, r#"{"values": [1, 1]}"#).unwrap();
    std::fs::write(&large, r#"{"values": [2, 0]}"#).unwrap();

    let out = submaj(&["check", s(&small), s(&large)]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["holds"], true);

    let out = submaj(&["check", s(&large), s(&small)]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["worst_t"], 1.0);
    assert_eq!(v["margin"], 1.0);

    let m = write_matrix(dir.path(), "m.json", 2, 2, &[3.0, 0.0, 0.0, 1.0]);
    assert_eq!(code(&submaj(&["check", s(&small), s(&m)])), 0);
    assert_eq!(code(&submaj(&["check", s(&small), "/nonexistent.json"])), 2);
    assert_eq!(code(&submaj(&["check", s(&small), s(&large), "--tol", "-1"])), 2);
}

#[test]
fn certify_emits_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_matrix(dir.path(), "a.json", 3, 3, &[3.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 1.0]);
    let out = submaj(&["certify", s(&a), "--k", "2"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["attained"].as_f64().unwrap() - 5.0).abs() < 1e-12);
    assert!((v["ky_fan_reference"].as_f64().unwrap() - 5.0).abs() < 1e-12);
    assert_eq!(v["support_rank"], 2);
    assert_eq!(v["c"]["rows"], 3);
    assert_eq!(code(&submaj(&["certify", s(&a), "--k", "4"])), 2);
}

#[test]
fn strip_emits_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_matrix(dir.path(), "a.json", 2, 2, &[1.0, 0.0, 0.0, 2.0]);
    let b = write_matrix(dir.path(), "b.json", 2, 2, &[0.5, 0.0, 0.0, -0.5]);
    let c = write_matrix(dir.path(), "c.json", 2, 2, &[1.0, 0.0, 0.0, 1.0]);
    let out = submaj(&["strip", s(&a), s(&b), s(&c), "--ymax", "1", "--ystep", "0.5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,y,re,im,abs"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 11 * 5);
    // diagonal inputs: F is constant, a₁₁c₁₁e^{b₁₁} + a₂₂c₂₂e^{b₂₂}
    let expected = 0.5f64.exp() + 2.0 * (-0.5f64).exp();
    for row in rows {
        let abs: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!((abs - expected).abs() < 1e-12);
    }
    let nonherm = write_matrix(dir.path(), "n.json", 2, 2, &[0.0, 1.0, 0.0, 0.0]);
    assert_eq!(code(&submaj(&["strip", s(&a), s(&nonherm), s(&c)])), 2);
}

#[test]
fn spectral_matches_ab_and_ba() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_matrix(dir.path(), "a.json", 2, 2, &[0.0, 1.0, 0.0, 0.0]);
    let b = write_matrix(dir.path(), "b.json", 2, 2, &[0.0, 0.0, 1.0, 0.0]);
    let out = submaj(&["spectral", s(&a), s(&b)]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["report"]["holds"], true);
    assert_eq!(v["lambda_ab"].as_array().unwrap().len(), 2);
    let wide = write_matrix(dir.path(), "w.json", 1, 2, &[1.0, 2.0]);
    assert_eq!(code(&submaj(&["spectral", s(&wide), s(&b)])), 2);
}

#[test]
fn verify_runs_suites_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let csv = dir.path().join("report.csv");
    let out = submaj(&[
        "verify", "--suite", "bik_theorem_general", "--inequality", "counterexample_tr", "--sizes", "2,3", "--trials",
        "3", "--seed", "9", "--json", s(&json), "--csv", s(&csv),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["config"]["seed"], 9);
    assert_eq!(report["summary"]["passed"], true);
    assert!(report["trials"][0]["wall_time_ms"].is_number());
    let rows = std::fs::read_to_string(&csv).unwrap().lines().count();
    assert_eq!(rows as u64, 1 + report["summary"]["total_verdicts"].as_u64().unwrap());

    let descriptor = report["trials"][0]["descriptor"].as_str().unwrap().to_string();
    let out = submaj(&["verify", "--replay", &descriptor, "--json", "-", "--no-timing"]);
    assert_eq!(code(&out), 0);
    let replayed: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(replayed["trials"][0]["verdicts"], report["trials"][0]["verdicts"]);
    assert!(replayed["trials"][0].get("wall_time_ms").is_none());
}

#[test]
fn verify_reads_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(
        &config,
        r#"{"seed": 3, "sizes": [2], "trials_per_size": 2, "p_grid": [1, "inf"], "suites": ["golden_thompson_exp_sum"]}"#,
    )
    .unwrap();
    let out = submaj(&["verify", "--config", s(&config), "--json", "-"]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["summary"]["total_verdicts"], 4);
    assert_eq!(report["config"]["p_grid"][1], "inf");
}

#[test]
fn verify_input_errors_exit_two() {
    assert_eq!(code(&submaj(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&submaj(&["verify", "--sizes", "0"])), 2);
    assert_eq!(code(&submaj(&["verify", "--trials", "0"])), 2);
    assert_eq!(code(&submaj(&["verify", "--config", "/nonexistent.json"])), 2);
    assert_eq!(code(&submaj(&["verify", "--replay", "garbage"])), 2);
    assert_eq!(code(&submaj(&["verify", "--seed", "notanumber"])), 2);
}

#[test]
fn verify_with_empty_suite_list_passes() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"suites": []}"#).unwrap();
    let out = submaj(&["verify", "--config", s(&config)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("total verdicts=0"));
}

#[test]
fn tolerance_override_can_turn_a_pass_into_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    // spectral margins are rounding-sized and positive, so a zero tolerance flags them
    std::fs::write(
        &config,
        r#"{"sizes": [8], "trials_per_size": 4, "suites": ["spectral_identity"], "tolerances": {"spectral": 0}}"#,
    )
    .unwrap();
    let out = submaj(&["verify", "--config", s(&config)]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
}
