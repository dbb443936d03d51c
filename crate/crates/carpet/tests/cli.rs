//! End-to-end runs of the command line driver against golden output.

use std::fs;
use std::path::Path;

use carpet::cli::run_from;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run_from(std::iter::once("carpet").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn worked_example_distance() {
    let (code, text) = run(&["distance", "--level", "4", "a670", "b432"]);
    assert_eq!(code, 0);
    assert_eq!(text, golden("distance_a670_b432.txt"));
    assert_eq!(field(&text, "value"), "29");
    assert_eq!(field(&text, "h"), "3");
    assert_eq!(field(&text, "l"), "2");
    assert_eq!(field(&text, "corners"), "(3,3),(6,3),(6,6),(3,6)");
}

#[test]
fn worked_example_as_json() {
    let (code, text) = run(&["distance", "--level", "4", "a670", "b432", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(text, golden("distance_a670_b432.json"));
}

#[test]
fn distance_with_search_agrees() {
    let (code, text) = run(&["distance", "--level", "4", "a670", "b432", "--method", "both"]);
    assert_eq!(code, 0);
    assert_eq!(field(&text, "bfs"), "29");
    assert_eq!(field(&text, "agree"), "true");
}

#[test]
fn opposite_corners_of_a_square() {
    let (code, text) = run(&["distance", "--level", "1", "a", "c"]);
    assert_eq!(code, 0);
    assert_eq!(field(&text, "value"), "2");
}

#[test]
fn two_names_for_one_vertex() {
    let (code, text) = run(&["distance", "--level", "3", "c45", "d64"]);
    assert_eq!(code, 0);
    assert_eq!(field(&text, "value"), "0");
    assert_eq!(field(&text, "canonical2"), "c45");
}

#[test]
fn wiener_single_level() {
    let (code, text) = run(&["wiener", "--level", "3", "--no-timing"]);
    assert_eq!(code, 0);
    let row = text.lines().nth(1).expect("data row");
    assert_eq!(row.split_whitespace().nth(2), Some("31264"));
}

#[test]
fn wiener_both_engines_at_level_one() {
    let (code, text) = run(&["wiener", "--level", "1", "--method", "both", "--format", "json", "--no-timing"]);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&text).unwrap();
    let v = &rows[0];
    assert_eq!(v["wiener"], 8);
    assert_eq!(v["oracle_wiener"], 8);
    assert_eq!(v["agree"], true);
}

#[test]
fn wiener_table_golden() {
    let args = ["wiener", "--level", "3", "--table", "--method", "both", "--no-timing"];
    assert_eq!(run(&args), (0, golden("table3.tsv")));
    let mut json = args.to_vec();
    json.extend(["--format", "json"]);
    assert_eq!(run(&json), (0, golden("table3.json")));
}

#[test]
fn literal_rule_disagreement_exits_one() {
    let (code, text) = run(&["wiener", "--level", "4", "--method", "both", "--no-timing"]);
    assert_eq!(code, 1);
    assert!(text.contains("4644848") && text.contains("4646288"));
    let (code, _) = run(&["wiener", "--level", "4", "--method", "both", "--rule", "complete", "--no-timing"]);
    assert_eq!(code, 0);
}

#[test]
fn validate_emits_counterexamples() {
    let (code, text) = run(&["validate", "--level", "4", "--exhaustive", "--no-timing"]);
    assert_eq!(code, 1);
    let lines: Vec<_> = text.lines().filter(|l| l.starts_with("mismatch ")).collect();
    assert_eq!(lines.len(), 720);
    assert!(lines.iter().all(|l| l.contains("case=") && l.contains("corners=")));
    let (code, _) = run(&["validate", "--level", "4", "--exhaustive", "--rule", "complete", "--no-timing"]);
    assert_eq!(code, 0);
}

#[test]
fn sampled_validation_is_reproducible() {
    let args = ["validate", "--level", "4", "--sample", "20000", "--seed", "7", "--no-timing"];
    let first = run(&args);
    assert_eq!(first, run(&args));
    assert_eq!(field(&first.1, "pairs_checked"), "20000");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["wiener", "--level", "99"]).0, 3);
    assert_eq!(run(&["validate", "--level", "7", "--exhaustive"]).0, 3);
    assert_eq!(run(&["distance", "--level", "3", "e45", "a00"]).0, 2);
    assert_eq!(run(&["distance", "--level", "3", "a4", "a00"]).0, 2);
    assert_eq!(run(&["distance", "--level", "3", "a48", "a00"]).0, 2);
    assert_eq!(run(&["wiener", "--level", "0"]).0, 2);
    assert_eq!(run(&["validate", "--level", "2"]).0, 2);
    assert_eq!(run(&["validate", "--level", "2", "--exhaustive", "--sample", "3"]).0, 2);
    assert_eq!(run(&["wiener", "--level", "3", "--symmetry"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn unwritable_output_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.dot");
    let code = run(&["export", "--level", "1", "--format", "dot", "-o", path.to_str().unwrap()]).0;
    assert_eq!(code, 4);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("level2.edges");
    let (code, text) = run(&["export", "--level", "2", "--format", "edges", "-o", path.to_str().unwrap()]);
    assert_eq!((code, text.as_str()), (0, ""));
    assert_eq!(fs::read_to_string(path).unwrap(), golden("level2.edges"));
}

#[test]
fn exports_are_golden() {
    for (level, format, name) in [
        ("1", "dot", "level1.dot"),
        ("1", "edges", "level1.edges"),
        ("2", "edges", "level2.edges"),
        ("2", "csv", "level2.csv"),
    ] {
        let args = ["export", "--level", level, "--format", format];
        let (code, text) = run(&args);
        assert_eq!(code, 0);
        assert_eq!(text, golden(name), "{name}");
        assert_eq!(run(&args).1, text, "{name} is not stable");
    }
}

#[test]
fn export_counts() {
    let (_, edges) = run(&["export", "--level", "2", "--format", "edges"]);
    assert!(edges.starts_with("# carpet level 2: 16 vertices, 24 edges\n"));
    assert_eq!(edges.lines().filter(|l| !l.starts_with('#')).count(), 24);
    let (_, csv) = run(&["export", "--level", "3", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 97);
}
