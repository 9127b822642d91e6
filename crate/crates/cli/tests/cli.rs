//! End-to-end runs of the `kato` binary: exit codes, golden reports and
//! byte-for-byte determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use kato_hodge::diamond::parse_diamond;
use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn kato(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kato"))
        .args(args)
        .output()
        .expect("spawn kato")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON report on stdout")
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

/// Compares against `tests/golden/<name>`; `KATO_BLESS=1` rewrites it.
fn assert_golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("KATO_BLESS").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap();
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

#[test]
fn two_point_blowups_render() {
    let input = fixture("seq_n3_r2.json");
    let o = kato(&["hodge", "--input", input.to_str().unwrap(), "--render"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report = json(&o);
    let d = parse_diamond(report["rendered"].as_str().unwrap(), true).unwrap();
    assert_eq!((d.entry(1, 1), d.entry(2, 2)), (2, 2));
    assert_eq!(d.entry(1, 2), 0);
    assert_eq!(report["betti"]["b"], serde_json::json!([1, 1, 2, 0, 2, 1, 1]));
    assert_eq!(check(&report, "routes_agree")["pass"], true);
}

#[test]
fn hodge_report_is_golden() {
    let input = fixture("seq_n3_r2.json");
    let o = kato(&["hodge", "--input", input.to_str().unwrap(), "--render"]);
    assert_golden("seq_n3_r2.json", &stdout(&o));
}

#[test]
fn toric_report_is_golden() {
    let input = fixture("script_n3.json");
    let o = kato(&["toric", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_golden("script_n3.json", &stdout(&o));
}

#[test]
fn output_file_matches_stdout_report() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let input = fixture("seq_n3_r2.json");
    let to_file = kato(&[
        "hodge",
        "--input",
        input.to_str().unwrap(),
        "--render",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&to_file), 0);
    let to_stdout = kato(&["hodge", "--input", input.to_str().unwrap(), "--render"]);
    assert_eq!(fs::read(&out).unwrap(), to_stdout.stdout);
    // Only the diamond goes to stdout when the report is written to a file.
    let rendered = json(&to_stdout)["rendered"].as_str().unwrap().to_string();
    assert_eq!(stdout(&to_file), rendered);
}

#[test]
fn malformed_json_exits_2() {
    let input = fixture("malformed.json");
    let o = kato(&["hodge", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("error:"));
}

#[test]
fn missing_input_exits_2() {
    let o = kato(&["hodge", "--input", "/nonexistent/sequence.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn infeasible_blowdown_names_failing_check() {
    let input = fixture("infeasible_blowdown.json");
    let o = kato(&["hodge", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let report = json(&o);
    assert_eq!(check(&report, "sequence_feasible")["pass"], false);
    assert!(String::from_utf8_lossy(&o.stderr).contains("sequence_feasible"));
}

#[test]
fn unsmooth_fan_fails_validation() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("fan.json");
    let fan = r#"{"n": 3, "rays": [[1,0,0],[0,1,0],[1,1,2]], "max_cones": [[0,1,2]]}"#;
    fs::write(&path, fan).unwrap();
    let o = kato(&["toric", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let report = json(&o);
    assert_eq!(check(&report, "cones_smooth")["pass"], false);
    assert!(report.get("numbers").is_none());
}

#[test]
fn toric_script_matches_point_blowups() {
    let input = fixture("script_n3.json");
    let o = kato(&["toric", "--input", input.to_str().unwrap(), "--render"]);
    let report = json(&o);
    assert_eq!(check(&report, "matches_point_blowups")["pass"], true);
    assert_eq!(report["numbers"]["counts"]["a"], serde_json::json!([1, 5, 9, 5]));
    assert!(report["rendered"].is_string());
}

#[test]
fn germ_sample_passes() {
    let input = fixture("germ_sample.json");
    let o = kato(&["germ", "--input", input.to_str().unwrap(), "--p", "1", "--d", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report = json(&o);
    let op = &report["operators"][0];
    assert_eq!(op["p"], 1);
    assert_eq!(op["operator"]["invertible"], true);
    assert!(op["neumann"]["error"].as_f64().unwrap() < 1e-9);
    assert_eq!(check(&report, "p1/composition_pullback")["pass"], true);
}

#[test]
fn germ_limits_exit_2() {
    let input = fixture("germ_sample.json");
    let path = input.to_str().unwrap();
    assert_eq!(code(&kato(&["germ", "--input", path, "--p", "3"])), 2);
    assert_eq!(code(&kato(&["germ", "--input", path, "--d", "6"])), 2);
    assert_eq!(code(&kato(&["germ", "--input", path, "--terms", "0"])), 2);
}

#[test]
fn expanding_germ_exits_1() {
    let input = fixture("germ_expanding.json");
    let o = kato(&["germ", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let report = json(&o);
    assert_eq!(report["contraction"]["first_order_warning"], true);
    assert_eq!(check(&report, "p1/first_order_contraction")["pass"], false);
}

#[test]
fn reports_are_deterministic() {
    for (cmd, name) in [("hodge", "seq_n3_r2.json"), ("toric", "script_n3.json"), ("germ", "germ_sample.json")] {
        let input = fixture(name);
        let a = kato(&[cmd, "--input", input.to_str().unwrap()]);
        let b = kato(&[cmd, "--input", input.to_str().unwrap()]);
        assert_eq!(a.stdout, b.stdout, "{cmd} output differs between runs");
    }
}

fn verify(extra: &[&str]) -> Output {
    let mut args = vec!["verify", "--seed", "7", "--germ-count", "3"];
    args.extend_from_slice(extra);
    kato(&args)
}

#[test]
fn verify_is_reproducible_and_sorted() {
    let a = verify(&[]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    let b = verify(&[]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let names: Vec<&str> = text
        .lines()
        .map(|l| l.split_once(' ').unwrap().1.split_once(": ").unwrap().0)
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
    assert!(names.iter().any(|n| n.starts_with("germ/0002/")));
    assert!(!names.iter().any(|n| n.starts_with("germ/0003/")));
}

#[test]
fn verify_seed_changes_battery() {
    let a = verify(&[]);
    let b = kato(&["verify", "--seed", "8", "--germ-count", "3"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn verify_corpus_passes() {
    let corpus = fixture("corpus");
    let o = verify(&["--corpus", corpus.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("PASS corpus/points_n3_r2/expected_betti"));
    assert!(text.contains("PASS corpus/toric_twice/expected_betti"));
}

#[test]
fn corrupted_corpus_exits_1() {
    let dir = TempDir::new().unwrap();
    let good = fs::read_to_string(fixture("corpus/points_n3_r2.json")).unwrap();
    let bad = good.replace("[1, 1, 2, 0, 2, 1, 1]", "[1, 1, 3, 0, 3, 1, 1]");
    assert_ne!(good, bad);
    fs::write(dir.path().join("points_n3_r2.json"), bad).unwrap();
    let o = verify(&["--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL corpus/points_n3_r2/expected_betti"));
}

#[test]
fn unparseable_corpus_file_fails() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("broken.json"), "{\"kind\": \"hodge\"").unwrap();
    let o = verify(&["--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL corpus/broken/parse"));
}

#[test]
fn missing_corpus_directory_exits_2() {
    let o = verify(&["--corpus", "/nonexistent/corpus"]);
    assert_eq!(code(&o), 2);
}
