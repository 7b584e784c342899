use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use qlogic_cli::report::{CommandResult, HiddenStatus, ReportDocument};
use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn qlogic(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_qlogic"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn workspace() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (file, spec) in [
        ("b2.json", "boolean_powerset(2)"),
        ("b4.json", "boolean_powerset(4)"),
        ("mo2.json", "mo(2)"),
        ("c3.json", "chain(3)"),
        ("w.json", "wright_triangle"),
    ] {
        assert_eq!(qlogic(dir.path(), &["catalog", spec, "-o", file]).code, 0);
    }
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    for entry in fs::read_dir(data).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    dir
}

/// Runs with `--format json` and parses the report into the typed schema.
fn report(dir: &Path, args: &[&str]) -> (i32, ReportDocument, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let run = qlogic(dir, &full);
    let doc: ReportDocument = serde_json::from_str(&run.stdout)
        .unwrap_or_else(|e| panic!("report does not match the schema: {e}\n{}", run.stdout));
    assert_eq!(doc.exit_code, run.code);
    let mut value: Value = serde_json::from_str(&run.stdout).unwrap();
    if let Some(result) = value.get_mut("result").and_then(Value::as_object_mut) {
        result.remove("wall_time_ms");
    }
    (run.code, doc, value)
}

fn golden(name: &str, actual: &Value) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    let rendered = format!("{}\n", serde_json::to_string_pretty(actual).unwrap());
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &rendered).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(rendered, expected, "golden mismatch for {name}");
}

#[test]
fn golden_reports() {
    let dir = workspace();
    let d = dir.path();
    let cases: [(&str, &[&str], i32); 7] = [
        ("validate", &["validate", "w.json"], 0),
        ("analyze", &["analyze", "c3.json"], 0),
        ("clone_search", &["clone-search", "b2.json"], 0),
        ("states", &["states", "mo2.json"], 0),
        ("hidden", &["hidden", "b2.json", "--parts", "{1},{2}", "--mixtures", "5"], 0),
        ("catalog", &["catalog", "chain", "2", "-o", "c2.json"], 0),
        ("validate_missing_supplement", &["validate", "missing_supplement.json"], 1),
    ];
    for (name, args, code) in cases {
        let (actual_code, _, value) = report(d, args);
        assert_eq!(actual_code, code, "{name}");
        golden(name, &value);
    }
}

#[test]
fn validate_exit_codes() {
    let dir = workspace();
    let d = dir.path();
    let (code, doc, _) = report(d, &["validate", "b2.json"]);
    assert_eq!(code, 0);
    assert!(matches!(doc.result, CommandResult::Validate(ref r) if r.valid && r.size == Some(4)));

    let (code, doc, _) = report(d, &["validate", "missing_supplement.json"]);
    assert_eq!(code, 1);
    let CommandResult::Validate(r) = doc.result else { panic!("wrong kind") };
    assert_eq!(r.violation.unwrap().kind, "SupplementMissing");

    let run = qlogic(d, &["validate", "truncated.json"]);
    assert_eq!(run.code, 2);
    assert!(run.stdout.is_empty() && run.stderr.starts_with("error:"));
    assert_eq!(qlogic(d, &["validate", "absent.json"]).code, 2);
    assert_eq!(qlogic(d, &["frobnicate"]).code, 2);
}

#[test]
fn analyze_examples() {
    let dir = workspace();
    let (_, doc, _) = report(dir.path(), &["analyze", "c3.json"]);
    let CommandResult::Analyze(r) = doc.result else { panic!("wrong kind") };
    assert_eq!(r.atoms, ["1/3"]);
    assert!(r.iota.contains(&("1/3".to_string(), 3)));
    assert!(!r.is_boolean);

    let (_, doc, _) = report(dir.path(), &["analyze", "mo2.json"]);
    let CommandResult::Analyze(r) = doc.result else { panic!("wrong kind") };
    assert!(r.incompatible_pairs.contains(&("a_1".to_string(), "a_2".to_string())));

    let (_, doc, _) = report(dir.path(), &["analyze", "b2.json"]);
    assert!(matches!(doc.result, CommandResult::Analyze(ref r) if r.is_boolean));
}

#[test]
fn clone_search_exit_codes() {
    let dir = workspace();
    let d = dir.path();
    let (code, doc, _) = report(d, &["clone-search", "b2.json"]);
    assert_eq!(code, 0);
    let CommandResult::CloneSearch(r) = doc.result else { panic!("wrong kind") };
    let meet: Vec<[String; 3]> = [
        ["0", "0", "0"],
        ["0", "1", "0"],
        ["0", "{1}", "0"],
        ["0", "{2}", "0"],
        ["1", "0", "0"],
        ["1", "1", "1"],
        ["1", "{1}", "{1}"],
        ["1", "{2}", "{2}"],
        ["{1}", "0", "0"],
        ["{1}", "1", "{1}"],
        ["{1}", "{1}", "{1}"],
        ["{1}", "{2}", "0"],
        ["{2}", "0", "0"],
        ["{2}", "1", "{2}"],
        ["{2}", "{1}", "0"],
        ["{2}", "{2}", "{2}"],
    ]
    .iter()
    .map(|row| row.map(String::from))
    .collect();
    assert_eq!(r.witnesses[0].witness, meet);
    assert!(r.lemmas.is_some());

    assert_eq!(qlogic(d, &["clone-search", "mo2.json"]).code, 1);
    assert_eq!(qlogic(d, &["clone-search", "b4.json", "--budget", "10"]).code, 3);
}

#[test]
fn states_and_hidden_examples() {
    let dir = workspace();
    let d = dir.path();
    let (code, doc, _) = report(d, &["states", "mo2.json"]);
    assert_eq!(code, 0);
    assert!(matches!(doc.result, CommandResult::States(ref r) if r.vertex_count == 4 && r.separating));

    let (code, doc, _) = report(d, &["hidden", "b2.json", "--parts", "{1},{2}"]);
    assert_eq!(code, 0);
    let CommandResult::Hidden(r) = doc.result else { panic!("wrong kind") };
    assert_eq!(r.status, HiddenStatus::Verified);
    assert_eq!(doc.seed, Some(qlogic_cli::DEFAULT_SEED));
    assert_eq!(r.verification.unwrap().mixtures, 100);

    let (code, doc, _) = report(d, &["hidden", "b2.json", "--parts", "{1}"]);
    assert_eq!(code, 1);
    assert!(matches!(doc.result, CommandResult::Hidden(ref r) if r.status == HiddenStatus::HypothesisUnmet));
    assert_eq!(qlogic(d, &["hidden", "b2.json", "--parts", "a,b"]).code, 2);
    assert_eq!(qlogic(d, &["hidden", "c3.json"]).code, 1);
}

#[test]
fn catalog_output_validates() {
    let dir = workspace();
    let d = dir.path();
    assert_eq!(qlogic(d, &["validate", "w.json"]).code, 0);
    let printed = qlogic(d, &["catalog", "product(chain(2),chain(2))"]);
    assert_eq!(printed.code, 0);
    let file: qlogic::AlgebraFile = serde_json::from_str(&printed.stdout).unwrap();
    assert_eq!(file.elements.len(), 9);
    assert_eq!(qlogic(d, &["catalog", "boolean_powerset", "9"]).code, 2);
    assert_eq!(qlogic(d, &["catalog", "nonsense(1)"]).code, 2);
}

#[test]
fn reports_are_deterministic() {
    let dir = workspace();
    let d = dir.path();
    for args in [&["clone-search", "--all", "mo2.json"][..], &["hidden", "b2.json", "--seed", "7"], &["states", "w.json"]] {
        let (_, _, first) = report(d, args);
        let (_, _, second) = report(d, args);
        assert_eq!(first, second);
    }
}

#[test]
fn clone_search_reproduces_the_equivalence_table() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let specs = [
        "boolean_powerset(1)",
        "boolean_powerset(2)",
        "boolean_powerset(3)",
        "boolean_powerset(4)",
        "mo(1)",
        "mo(2)",
        "mo(3)",
        "mo(4)",
        "wright_triangle",
        "horizontal_sum(boolean_powerset(2),boolean_powerset(3))",
        "chain(2)",
        "chain(4)",
        "chain(6)",
        "product(chain(2),chain(2))",
        "product(boolean_powerset(1),boolean_powerset(2))",
    ];
    for spec in specs {
        assert_eq!(qlogic(d, &["catalog", spec, "-o", "alg.json"]).code, 0);
        let (_, doc, _) = report(d, &["analyze", "alg.json"]);
        let CommandResult::Analyze(analysis) = doc.result else { panic!("wrong kind") };
        let search = qlogic(d, &["clone-search", "alg.json"]);
        assert_eq!(search.code == 0, analysis.is_boolean, "{spec}");
        assert_ne!(search.code, 3, "{spec}");
    }
}
