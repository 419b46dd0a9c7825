use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyannulus")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_square_fixture_within_guarantee() {
    let truth: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("square_truth.json")).unwrap()).unwrap();
    let out = run(&[
        "solve",
        "--polytope",
        path_str(&fixture("square.json")),
        "--points",
        path_str(&fixture("square_points.csv")),
        "--epsilon",
        "0.25",
        "--oracle-check",
    ]);
    let res = stdout_json(&out);
    let width = res["width"].as_f64().unwrap();
    assert!(width <= 1.25 * truth["width"].as_f64().unwrap() + 1e-9);
    assert_eq!(res["mode"], "translation");
    assert_eq!(res["center"].as_array().unwrap().len(), 2);
}

#[test]
fn sample_then_solve_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.csv");
    let truth = dir.path().join("truth.json");
    let out = run(&[
        "sample",
        "--shape",
        "triangle",
        "--delta",
        "0.05",
        "--band",
        "0.05",
        "--scale",
        "2",
        "--translate",
        "-1,3",
        "--seed",
        "5",
        "--output",
        path_str(&pts),
        "--truth",
        path_str(&truth),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let truth: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&truth).unwrap()).unwrap();
    let res = stdout_json(&run(&["solve", "--shape", "triangle", "--points", path_str(&pts), "--epsilon", "0.1"]));
    assert!(res["width"].as_f64().unwrap() <= 1.1 * truth["width"].as_f64().unwrap() + 1e-9);
}

#[test]
fn malformed_csv_reports_line() {
    let out = run(&["solve", "--shape", "square", "--points", path_str(&fixture("bad_points.csv"))]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["solve", "--shape", "square"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn missing_shape_is_an_input_error() {
    let out = run(&["solve", "--points", path_str(&fixture("square_points.csv"))]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn render_matches_golden_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let out = run(&[
        "render",
        "--polytope",
        path_str(&fixture("square.json")),
        "--points",
        path_str(&fixture("square_points.csv")),
        "--result",
        path_str(&fixture("square_result.json")),
        "--output",
        path_str(&svg),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read(&svg).unwrap(), std::fs::read(fixture("square.svg")).unwrap());
}

#[test]
fn results_are_deterministic_apart_from_timing() {
    let pts = fixture("square_points.csv");
    let solve = |threads: &str| {
        let mut v = stdout_json(&run(&[
            "solve-rigid",
            "--shape",
            "hexagon",
            "--points",
            path_str(&pts),
            "--epsilon",
            "0.5",
            "--threads",
            threads,
        ]));
        v["elapsed_ms"] = serde_json::Value::Null;
        v
    };
    let first = solve("1");
    assert_eq!(first, solve("1"));
    assert_eq!(first, solve("2"));
}

#[test]
fn stats_reads_a_result() {
    let res = stdout_json(&run(&["stats", "--result", path_str(&fixture("square_result.json"))]));
    let f = res["slimness"].as_f64().unwrap();
    let fc = res["concentric_fatness"].as_f64().unwrap();
    assert!((1.0 / f - (1.0 - 1.0 / fc)).abs() < 1e-9);
}

#[test]
fn fixed_center_without_rotations_is_a_single_evaluation() {
    let res = stdout_json(&run(&[
        "solve-fixed-center",
        "--shape",
        "square",
        "--points",
        path_str(&fixture("square_points.csv")),
        "--center",
        "1,-2",
    ]));
    assert_eq!(res["evaluations"], 1);
    assert_eq!(res["center"], serde_json::json!([1.0, -2.0]));
}

#[test]
fn oracle_reports_a_sandwich() {
    let rep = stdout_json(&run(&[
        "oracle",
        "--polytope",
        path_str(&fixture("square.json")),
        "--points",
        path_str(&fixture("square_points.csv")),
    ]));
    assert!(rep["lower"].as_f64().unwrap() <= rep["upper"].as_f64().unwrap());
}

#[test]
fn bench_prints_csv() {
    let out = run(&["bench", "--shape", "square", "--sizes", "200", "--epsilons", "0.5", "--rigid-sizes", "40"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,epsilon,dim,mode,ms,evaluations,width\n"));
    let modes: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(modes, ["planar", "direct", "rigid"]);
}
