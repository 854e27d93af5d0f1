//! End-to-end tests of the `kapoly` binary: exit codes, JSON shapes,
//! byte determinism, and input round-trips, driven through the compiled
//! executable exactly as a user would run it.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::Command;

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).expect("test fixture write");
    path
}

/// Runs the binary with the given arguments; returns (exit code, stdout).
fn run(args: &[&str]) -> (i32, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_kapoly"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = output.status.code().expect("no signal");
    (code, String::from_utf8(output.stdout).expect("utf8 stdout"))
}

fn parse(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("stdout is one JSON document")
}

fn path_arg(p: &Path) -> &str {
    p.to_str().expect("utf8 path")
}

#[test]
fn kpoly_reports_the_half_coefficients_and_sum_two() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(dir.path(), "ex1.json", r#"{"matrix": [[2,1,0],[0,1,2]]}"#);
    let (code, stdout) = run(&["kpoly", "--matrix", path_arg(&matrix)]);
    assert_eq!(code, 0, "stdout: {stdout}");
    let doc = parse(&stdout);
    assert_eq!(doc["sum"], "2");
    assert_eq!(doc["latticeIndex"], "2");
    assert_eq!(doc["codim"], 1);
    let terms = doc["kPoly"].as_array().unwrap();
    assert_eq!(terms.len(), 4);
    for term in terms {
        assert_eq!(term["num"], 1);
        assert_eq!(term["den"], 2);
    }
    let exps: Vec<&Value> = terms.iter().map(|t| &t["exp"]).collect();
    assert_eq!(exps[0], &serde_json::json!([1, 1]));
    assert_eq!(exps[3], &serde_json::json!([2, 2]));
}

#[test]
fn kpoly_rejects_a_degenerate_grading_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(dir.path(), "ex2.json", r#"{"matrix": [[1,1,0],[0,0,1]]}"#);
    let (code, stdout) = run(&["kpoly", "--matrix", path_arg(&matrix)]);
    assert_eq!(code, 2, "stdout: {stdout}");
    let doc = parse(&stdout);
    assert_eq!(doc["error"]["kind"], "DegenerateMap");
    assert_eq!(doc["error"]["witness"], serde_json::json!([1, 0]));
}

#[test]
fn phi_at_stride_one_echoes_the_numerator() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(dir.path(), "ex1.json", r#"{"matrix": [[2,1,0],[0,1,2]]}"#);
    let poly = write(
        dir.path(),
        "f.json",
        r#"[{"exp":[1,1],"num":3,"den":1},{"exp":[0,0],"num":1,"den":1}]"#,
    );
    let (code, first) =
        run(&["phi", "--matrix", path_arg(&matrix), "--poly", path_arg(&poly), "--r", "1"]);
    assert_eq!(code, 0, "stdout: {first}");
    let doc = parse(&first);
    let terms = doc.as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["exp"], serde_json::json!([0, 0]));
    assert_eq!(terms[0]["num"], 1);
    assert_eq!(terms[1]["exp"], serde_json::json!([1, 1]));
    assert_eq!(terms[1]["num"], 3);

    // Round-trip: the output document is itself a valid polynomial input,
    // and sifting it at stride one reproduces it byte for byte.
    let echoed = write(dir.path(), "echo.json", &first);
    let (code, second) =
        run(&["phi", "--matrix", path_arg(&matrix), "--poly", path_arg(&echoed), "--r", "1"]);
    assert_eq!(code, 0);
    assert_eq!(first, second);
}

#[test]
fn output_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(dir.path(), "ex1.json", r#"{"matrix": [[2,1,0],[0,1,2]]}"#);
    let (_, first) = run(&["kpoly", "--matrix", path_arg(&matrix)]);
    let (_, second) = run(&["kpoly", "--matrix", path_arg(&matrix)]);
    assert_eq!(first, second);
}

#[test]
fn concavity_flags_a_support_gap_with_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(dir.path(), "a.json", r#"{"matrix": [[1,1]]}"#);
    let poly = write(
        dir.path(),
        "gap.json",
        r#"[{"exp":[0],"num":1,"den":1},{"exp":[2],"num":1,"den":1}]"#,
    );
    let (code, stdout) =
        run(&["concavity", "--matrix", path_arg(&matrix), "--poly", path_arg(&poly)]);
    assert_eq!(code, 4, "stdout: {stdout}");
    let doc = parse(&stdout);
    assert_eq!(doc["logConcave"], false);
    assert_eq!(doc["quasiConcave"], false);
    assert_eq!(doc["logWitness"]["kind"], "segment");
    assert_eq!(doc["logWitness"]["point"], serde_json::json!([1]));
}

#[test]
fn concavity_accepts_the_computed_k_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(dir.path(), "ex1.json", r#"{"matrix": [[2,1,0],[0,1,2]]}"#);
    let (code, stdout) = run(&["concavity", "--matrix", path_arg(&matrix)]);
    assert_eq!(code, 0, "stdout: {stdout}");
    let doc = parse(&stdout);
    assert_eq!(doc["logConcave"], true);
    assert_eq!(doc["quasiConcave"], true);
    assert_eq!(doc["logWitness"], Value::Null);
}

#[test]
fn carries_verifies_the_stochastic_structure() {
    let dir = tempfile::tempdir().unwrap();
    let matrix =
        write(dir.path(), "carry.json", r#"{"matrix": [[1,1,0,0,-1],[0,0,1,1,1]]}"#);
    let (code, stdout) = run(&[
        "carries",
        "--matrix",
        path_arg(&matrix),
        "--r",
        "2",
        "--compare-r",
        "3",
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    let doc = parse(&stdout);
    assert_eq!(doc["r"], 2);
    assert_eq!(doc["index"].as_array().unwrap().len(), 4);
    assert_eq!(doc["report"]["columnSumsOk"], true);
    assert_eq!(doc["report"]["stationaryOk"], true);
    assert_eq!(doc["report"]["spectrumOk"], true);
    assert_eq!(doc["report"]["eigenspacesStable"], true);
}

#[test]
fn asymptotic_evaluates_a_codimension_term() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(dir.path(), "a.json", r#"{"matrix": [[1,1,2]]}"#);
    let expansion =
        write(dir.path(), "e.json", r#"{"codim":1,"terms":[{"s":[3],"mu":1}]}"#);
    let (code, stdout) = run(&[
        "asymptotic",
        "--matrix",
        path_arg(&matrix),
        "--expansion",
        path_arg(&expansion),
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    let doc = parse(&stdout);
    assert_eq!(doc["growthOrder"], 1);
    let limit = doc["limit"].as_array().unwrap();
    assert_eq!(limit.len(), 2);
    assert_eq!(limit[0]["exp"], serde_json::json!([1]));
    assert_eq!(limit[0]["num"], 1);
    assert_eq!(limit[1]["exp"], serde_json::json!([3]));
    assert_eq!(limit[1]["num"], -1);
}

#[test]
fn asymptotic_surfaces_a_degenerate_submatrix() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(dir.path(), "a.json", r#"{"matrix": [[2,1]]}"#);
    let expansion =
        write(dir.path(), "e.json", r#"{"codim":1,"terms":[{"s":[2],"mu":1}]}"#);
    let (code, stdout) = run(&[
        "asymptotic",
        "--matrix",
        path_arg(&matrix),
        "--expansion",
        path_arg(&expansion),
    ]);
    assert_eq!(code, 2, "stdout: {stdout}");
    let doc = parse(&stdout);
    assert_eq!(doc["error"]["kind"], "DegenerateMap");
    assert_eq!(doc["error"]["witness"]["term"], 0);
}

#[test]
fn size_cap_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(dir.path(), "ex1.json", r#"{"matrix": [[2,1,0],[0,1,2]]}"#);
    let poly = write(dir.path(), "one.json", r#"[{"exp":[0,0],"num":1,"den":1}]"#);
    let (code, stdout) = run(&[
        "expand",
        "--matrix",
        path_arg(&matrix),
        "--poly",
        path_arg(&poly),
        "--bound",
        "4",
        "--term-cap",
        "5",
    ]);
    assert_eq!(code, 3, "stdout: {stdout}");
    assert_eq!(parse(&stdout)["error"]["kind"], "SizeLimit");
}

#[test]
fn invalid_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let rankdef = write(dir.path(), "rankdef.json", r#"{"matrix": [[1,2],[2,4]]}"#);
    let (code, stdout) = run(&["analyze", "--matrix", path_arg(&rankdef)]);
    assert_eq!(code, 1);
    assert_eq!(parse(&stdout)["error"]["kind"], "RankDeficient");

    let notacyclic = write(dir.path(), "na.json", r#"{"matrix": [[1,-1]]}"#);
    let (code, stdout) = run(&["analyze", "--matrix", path_arg(&notacyclic)]);
    assert_eq!(code, 1);
    let doc = parse(&stdout);
    assert_eq!(doc["error"]["kind"], "NotAcyclic");
    assert_eq!(doc["error"]["witness"], serde_json::json!([1, 1]));

    let missing = dir.path().join("missing.json");
    let (code, stdout) = run(&["kpoly", "--matrix", path_arg(&missing)]);
    assert_eq!(code, 1);
    assert_eq!(parse(&stdout)["error"]["kind"], "ParseError");

    let (code, _) = run(&["kpoly", "--no-such-flag"]);
    assert_eq!(code, 1);
}

#[test]
fn expand_matches_the_sifting_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(dir.path(), "ex1.json", r#"{"matrix": [[2,1,0],[0,1,2]]}"#);
    let poly = write(dir.path(), "one.json", r#"[{"exp":[0,0],"num":1,"den":1}]"#);
    let (code, stdout) = run(&[
        "expand",
        "--matrix",
        path_arg(&matrix),
        "--poly",
        path_arg(&poly),
        "--bound",
        "2",
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    let doc = parse(&stdout);
    assert_eq!(doc["bound"]["num"], 2);
    let terms = doc["terms"].as_array().unwrap();
    // Hilbert coefficients of the full ring at the origin and at (1,1):
    // exactly one monomial each (the empty product, and any single column).
    let origin = terms.iter().find(|t| t["exp"] == serde_json::json!([0, 0])).unwrap();
    assert_eq!(origin["num"], 1);
    assert!(terms.iter().any(|t| t["exp"] == serde_json::json!([1, 1])));
}

#[test]
fn convergence_reports_growth_and_stabilization() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(dir.path(), "ex1.json", r#"{"matrix": [[2,1,0],[0,1,2]]}"#);
    let poly = write(dir.path(), "one.json", r#"[{"exp":[0,0],"num":1,"den":1}]"#);
    let (code, stdout) = run(&[
        "convergence",
        "--matrix",
        path_arg(&matrix),
        "--poly",
        path_arg(&poly),
        "--r-max",
        "8",
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    let doc = parse(&stdout);
    assert_eq!(doc["latticeIndex"], 2);
    assert_eq!(doc["observedGrowth"], 1);
    assert_eq!(doc["empiricalR0"], 2);
    // Odd strides oscillate against the even ones on this grading.
    assert_eq!(doc["oscillation"], true);
    assert!(doc["observedLimit"].as_array().unwrap().len() == 4);
}

#[test]
fn text_format_renders_aligned_lines() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(dir.path(), "ex1.json", r#"{"matrix": [[2,1,0],[0,1,2]]}"#);
    let (code, stdout) = run(&["kpoly", "--format", "text", "--matrix", path_arg(&matrix)]);
    assert_eq!(code, 0);
    assert!(stdout.contains("sum: 2\n"), "stdout: {stdout}");
    assert!(stdout.contains("latticeIndex: 2\n"));
}
