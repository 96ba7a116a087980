use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_reliance-lens"));
    cmd.env_remove("RELIANCE_LENS_PALETTE");
    cmd
}

fn exec(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Derived-schema CSV with one block of rows per `(condition, [ca, wa, co, wo])`.
fn dataset(dir: &TempDir, name: &str, conditions: &[(&str, [u64; 4])]) -> PathBuf {
    let mut s = String::from("condition,trial,ai_correct,adhered\n");
    let mut i = 0;
    for (c, [ca, wa, co, wo]) in conditions {
        for ((ai, ad), k) in [((1, 1), ca), ((0, 1), wa), ((0, 0), co), ((1, 0), wo)] {
            for _ in 0..*k {
                i += 1;
                s.push_str(&format!("{c},t{i},{ai},{ad}\n"));
            }
        }
    }
    let path = dir.path().join(name);
    std::fs::write(&path, s).unwrap();
    path
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn intervention(dir: &TempDir) -> PathBuf {
    dataset(
        dir,
        "study.csv",
        &[("control", [35, 15, 15, 35]), ("blue", [3, 0, 3, 4]), ("purple", [6, 3, 0, 1])],
    )
}

#[test]
fn analyze_best_and_worst_ten_trial_cases() {
    let dir = TempDir::new().unwrap();
    for (name, counts, accuracy, q) in [("best.csv", [7, 0, 3, 0], 1.0, 1.0), ("worst.csv", [4, 3, 0, 3], 0.4, 0.0)] {
        let path = dataset(&dir, name, &[("c", counts)]);
        let out = exec(&["analyze", path_str(&path)]);
        assert!(out.status.success(), "{}", stderr(&out));
        let reports: Value = serde_json::from_str(&stdout(&out)).unwrap();
        let r = &reports[0];
        assert_eq!(r["adherence"], 0.7);
        assert_eq!(r["ai_accuracy"], 0.7);
        assert_eq!(r["final_accuracy"], accuracy);
        assert_eq!(r["quality"], q);
        assert_eq!(r["envelope"]["lo"], 0.4);
        assert_eq!(r["envelope"]["hi"], 1.0);
    }
}

#[test]
fn chance_level_ai_is_a_data_error() {
    let dir = TempDir::new().unwrap();
    let path = dataset(&dir, "chance.csv", &[("coin", [3, 2, 3, 2])]);
    let out = exec(&["analyze", path_str(&path)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("coin"), "{}", stderr(&out));
}

#[test]
fn malformed_input_reports_line() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "condition,trial,ai_correct,adhered\nc,t1,1,1\nc,t2,maybe,0\n").unwrap();
    let out = exec(&["analyze", path_str(&path)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(exec(&["analyze"]).status.code(), Some(2));
    assert_eq!(exec(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(exec(&["simulate", "--acc", "0.7"]).status.code(), Some(2));
}

#[test]
fn compare_tags_intervention_conditions() {
    let dir = TempDir::new().unwrap();
    let path = intervention(&dir);
    let out = exec(&["compare", path_str(&path), "--baseline", "control"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let tags: Vec<(&str, &str)> = report["treatments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["report"]["condition"].as_str().unwrap(), t["tag"].as_str().unwrap()))
        .collect();
    assert_eq!(tags, [("blue", "QualityDriven"), ("purple", "QuantityDriven")]);

    let missing = exec(&["compare", path_str(&path), "--baseline", "nope"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn simulate_then_analyze_closes_the_loop() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("sim.json");
    let sim = exec(&[
        "simulate", "--acc", "0.8", "--p-adhere-correct", "0.9", "--p-adhere-wrong", "0.3", "--n", "20000",
        "--seed", "11", "--condition", "model", "--out", path_str(&data),
    ]);
    assert!(sim.status.success(), "{}", stderr(&sim));
    assert!(stdout(&sim).contains("expected profile"));

    let out = exec(&["analyze", path_str(&data)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = &serde_json::from_str::<Value>(&stdout(&out)).unwrap()[0];
    assert_eq!(r["condition"], "model");
    assert_eq!(r["ai_accuracy"], 0.8);
    // 0.8 * 0.9 + 0.2 * 0.3
    assert!((r["adherence"].as_f64().unwrap() - 0.78).abs() < 0.01);
    // 0.8 * 0.9 + 0.2 * 0.7
    assert!((r["final_accuracy"].as_f64().unwrap() - 0.86).abs() < 0.01);
}

#[test]
fn simulate_is_seed_deterministic() {
    let args = ["simulate", "--acc", "0.7", "--p-adhere-correct", "0.6", "--p-adhere-wrong", "0.4", "--n", "500"];
    let run = |seed: &str| exec(&[&args[..], &["--seed", seed]].concat()).stdout;
    assert_eq!(run("3"), run("3"));
    assert_ne!(run("3"), run("4"));
}

#[test]
fn oracle_table_and_domain_errors() {
    let out = exec(&["oracle", "--n", "10", "--acc-numerator", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("{40%, 60%, 80%, 100%}"));
    assert!(text.contains("verdict: PASS (11/11"));

    assert_eq!(exec(&["oracle", "--n", "25", "--acc-numerator", "20"]).status.code(), Some(1));
    assert_eq!(exec(&["oracle", "--n", "10", "--acc-numerator", "5"]).status.code(), Some(1));
}

#[test]
fn plot_with_baseline_draws_arrows() {
    let dir = TempDir::new().unwrap();
    let path = intervention(&dir);
    let out = exec(&["plot", path_str(&path), "--baseline", "control"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let svg = stdout(&out);
    assert_eq!(svg.matches("<circle").count(), 3);
    assert_eq!(svg.matches("id=\"arrow-").count(), 2);
    assert!(svg.contains("#1f77b4") && svg.contains("#8e4585"));
}

#[test]
fn plot_single_condition_without_arrows() {
    let dir = TempDir::new().unwrap();
    let path = dataset(&dir, "one.csv", &[("only", [5, 1, 1, 3])]);
    let svg = stdout(&exec(&["plot", path_str(&path)]));
    assert_eq!(svg.matches("<circle").count(), 1);
    assert_eq!(svg.matches("id=\"arrow-").count(), 0);
}

#[test]
fn plot_rejects_mixed_ai_accuracy() {
    let dir = TempDir::new().unwrap();
    let path = dataset(&dir, "mixed.csv", &[("a", [5, 1, 1, 3]), ("b", [6, 1, 2, 1])]);
    let out = exec(&["plot", path_str(&path)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("0.8"), "{}", stderr(&out));
}

#[test]
fn palette_from_environment_and_flags() {
    let dir = TempDir::new().unwrap();
    let path = intervention(&dir);
    let out = bin()
        .args(["plot", path_str(&path), "--palette-above", "#00aa00"])
        .env("RELIANCE_LENS_PALETTE", "region-below=#112233")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let svg = stdout(&out);
    assert!(svg.contains("#112233") && svg.contains("#00aa00"));

    let bad = exec(&["plot", path_str(&path), "--palette-line", "red\"/><script>"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn raw_schema_with_declared_labels() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("raw.csv");
    std::fs::write(
        &path,
        "condition,trial,ai_decision,human_decision,ground_truth\n\
         c,1,yes,yes,yes\nc,2,yes,no,no\nc,3,no,no,no\nc,4,yes,yes,no\nc,5,no,no,no\n",
    )
    .unwrap();
    let out = exec(&["analyze", path_str(&path), "--schema", "raw", "--labels", "yes,no"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = &serde_json::from_str::<Value>(&stdout(&out)).unwrap()[0];
    assert_eq!(r["counts"]["correct_adherence"], 3);
    assert_eq!(r["counts"]["wrong_adherence"], 1);
    assert_eq!(r["counts"]["correct_override"], 1);

    let wrong = exec(&["analyze", path_str(&path), "--schema", "raw", "--labels", "a,b"]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn participant_column_adds_macro_averages() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("people.csv");
    std::fs::write(
        &path,
        "condition,trial,ai_correct,adhered,participant\n\
         c,1,1,1,p1\nc,2,1,1,p1\nc,3,0,0,p1\nc,4,1,0,p2\nc,5,1,1,p2\nc,6,0,1,p2\n",
    )
    .unwrap();
    let out = exec(&["analyze", path_str(&path)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stderr(&out).contains("warning"));
    let r = &serde_json::from_str::<Value>(&stdout(&out)).unwrap()[0];
    assert_eq!(r["per_participant"]["participants"], 2);
}

#[test]
fn bootstrap_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let path = intervention(&dir);
    let args = ["analyze", path_str(&path), "--bootstrap", "200", "--seed", "5"];
    let a = exec(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, exec(&args).stdout);
    let reports: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let control = reports.as_array().unwrap().iter().find(|r| r["condition"] == "control").unwrap();
    let ci = &control["bootstrap"]["final_accuracy"];
    assert!(ci[0].as_f64().unwrap() <= 0.5 && ci[1].as_f64().unwrap() >= 0.5);
}

#[test]
fn table_view_shows_percentages() {
    let dir = TempDir::new().unwrap();
    let path = intervention(&dir);
    let out = exec(&["analyze", path_str(&path), "--table"]);
    let text = stdout(&out);
    assert!(text.contains("purple") && text.contains("90.0%"));
}
