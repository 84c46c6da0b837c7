//! End-to-end checks of the command-line surface: exit codes, artifact
//! shapes, determinism, and the verdict gates.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wishart"))
}

fn write_doc(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process exited with a code")
}

const EXISTS_DOC: &str = r#"{"d": 2, "p": 1.5, "omega": [[0.64, -0.32], [-0.32, 0.16]], "sigma": [[1.0, 0.2], [0.2, 0.8]]}"#;
const OPEN_DOC: &str = r#"{"d": 3, "p": 0.5, "omega": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]], "sigma": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]}"#;
const NOT_EXISTS_DOC: &str = r#"{"d": 3, "p": 0.5, "omega": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], "sigma": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]}"#;
const TRIVIAL_DOC: &str =
    r#"{"d": 2, "p": 0.0, "omega": [[0.0, 0.0], [0.0, 0.0]], "sigma": [[1.0, 0.0], [0.0, 1.0]]}"#;

#[test]
fn validate_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let open = write_doc(dir.path(), "open.json", OPEN_DOC);
    let exists = write_doc(dir.path(), "exists.json", EXISTS_DOC);
    let not_exists = write_doc(dir.path(), "ne.json", NOT_EXISTS_DOC);

    let out = bin()
        .args(["validate", "--input"])
        .arg(&open)
        .output()
        .unwrap();
    assert_eq!(
        exit_code(&out),
        4,
        "open problem without --allow-open exits 4"
    );
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"]["status"], "OpenProblem");
    assert_eq!(report["verdict"]["rule"], "sec1.open-question");

    let out = bin()
        .args(["validate", "--allow-open", "--input"])
        .arg(&open)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);

    let out = bin()
        .args(["validate", "--input"])
        .arg(&exists)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"]["status"], "Exists");

    // A NotExists verdict is still a successful validation.
    let out = bin()
        .args(["validate", "--input"])
        .arg(&not_exists)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"]["status"], "NotExists");
}

#[test]
fn invalid_document_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_doc(dir.path(), "bad.json", r#"{"d": 2, "p": "not a number"}"#);
    let out = bin()
        .args(["validate", "--input"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 1);

    let asym = write_doc(
        dir.path(),
        "asym.json",
        r#"{"d": 2, "p": 1.0, "omega": [[1.0, 0.5], [0.0, 1.0]], "sigma": [[1.0, 0.0], [0.0, 1.0]]}"#,
    );
    let out = bin()
        .args(["validate", "--input"])
        .arg(&asym)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 1);

    let missing = dir.path().join("nope.json");
    let out = bin()
        .args(["validate", "--input"])
        .arg(&missing)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn sample_blocks_follow_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let not_exists = write_doc(dir.path(), "ne.json", NOT_EXISTS_DOC);
    let open = write_doc(dir.path(), "open.json", OPEN_DOC);

    let out = bin()
        .args(["sample", "--n", "5", "--seed", "1", "--input"])
        .arg(&not_exists)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 2, "NotExists blocks sampling with exit 2");

    let out = bin()
        .args(["sample", "--n", "5", "--seed", "1", "--input"])
        .arg(&open)
        .output()
        .unwrap();
    assert_eq!(
        exit_code(&out),
        4,
        "open problem without --allow-open exits 4"
    );

    // Even with --allow-open there is no sampler for the open region.
    let out = bin()
        .args([
            "sample",
            "--n",
            "5",
            "--seed",
            "1",
            "--allow-open",
            "--input",
        ])
        .arg(&open)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn sample_trivial_point_mass_is_all_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let trivial = write_doc(dir.path(), "trivial.json", TRIVIAL_DOC);
    let csv = dir.path().join("samples.csv");
    let out = bin()
        .args(["sample", "--n", "4", "--seed", "9", "--output"])
        .arg(&csv)
        .args(["--input"])
        .arg(&trivial)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);

    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "k, x_11, x_12, x_21, x_22");
    for (k, line) in lines.enumerate() {
        assert_eq!(line, format!("{k}, 0, 0, 0, 0"));
    }

    let meta: Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("samples.csv.meta.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(meta["verdict"]["status"], "Trivial");
    assert_eq!(meta["method_tags"][0], "exact");
}

#[test]
fn sample_runs_are_byte_identical_under_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let exists = write_doc(dir.path(), "exists.json", EXISTS_DOC);
    let mut artifacts = Vec::new();
    for run in 0..2 {
        let csv = dir.path().join(format!("s{run}.csv"));
        let out = bin()
            .args(["sample", "--n", "50", "--seed", "4242", "--output"])
            .arg(&csv)
            .args(["--input"])
            .arg(&exists)
            .output()
            .unwrap();
        assert_eq!(exit_code(&out), 0);
        artifacts.push(fs::read(&csv).unwrap());
    }
    assert_eq!(artifacts[0], artifacts[1]);
}

#[test]
fn sample_meta_records_entropy_seed() {
    let dir = tempfile::tempdir().unwrap();
    let exists = write_doc(dir.path(), "exists.json", EXISTS_DOC);
    let csv = dir.path().join("s.csv");
    let out = bin()
        .args(["sample", "--n", "2", "--output"])
        .arg(&csv)
        .args(["--input"])
        .arg(&exists)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
    let meta: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("s.csv.meta.json")).unwrap())
            .unwrap();
    assert!(
        meta["seed"].as_u64().unwrap() != 0,
        "entropy-derived seed must be recorded"
    );
}

#[test]
fn laplace_is_never_blocked_by_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let not_exists = write_doc(dir.path(), "ne.json", NOT_EXISTS_DOC);
    let csv = dir.path().join("l.csv");
    let out = bin()
        .args(["laplace", "--seed", "3", "--grid", "4x0.1,1,10", "--output"])
        .arg(&csv)
        .args(["--input"])
        .arg(&not_exists)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(
        text.lines().count(),
        1 + 12,
        "4 directions x 3 scales plus header"
    );
    let meta: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("l.csv.meta.json")).unwrap())
            .unwrap();
    assert_eq!(
        meta["verdict"]["status"], "NotExists",
        "verdict is stamped, not enforced"
    );

    // Values are formula evaluations in (0, 1].
    for line in text.lines().skip(1) {
        let value: f64 = line.rsplit(',').next().unwrap().trim().parse().unwrap();
        assert!(value > 0.0 && value <= 1.0);
    }
}

#[test]
fn simulate_emits_full_path() {
    let dir = tempfile::tempdir().unwrap();
    let proc_doc = write_doc(
        dir.path(),
        "proc.json",
        r#"{"d": 2, "p": 1.0, "alpha": [[0.5, 0.0], [0.0, 0.5]], "beta": [[0.1, 0.0], [0.0, -0.1]], "mode": "strict", "x0": [[1.0, 0.0], [0.0, 1.0]]}"#,
    );
    let csv = dir.path().join("path.csv");
    let out = bin()
        .args([
            "simulate", "--seed", "5", "--t", "0.5", "--steps", "20", "--output",
        ])
        .arg(&csv)
        .args(["--input"])
        .arg(&proc_doc)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 21, "header plus steps+1 states");
    assert!(text.lines().next().unwrap().starts_with("t, x_11"));
}

#[test]
fn simulate_rejects_formal_mode_processes() {
    let dir = tempfile::tempdir().unwrap();
    let proc_doc = write_doc(
        dir.path(),
        "formal.json",
        r#"{"d": 3, "p": 0.5, "alpha": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], "beta": [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]], "mode": "formal"}"#,
    );
    let out = bin()
        .args(["simulate", "--seed", "5", "--t", "0.5", "--input"])
        .arg(&proc_doc)
        .output()
        .unwrap();
    assert_eq!(
        exit_code(&out),
        1,
        "no process exists below the drift condition"
    );
}

#[test]
fn mode_flag_overrides_the_document() {
    let dir = tempfile::tempdir().unwrap();
    // p = 0.5 < (d−1)/2 = 1: strict construction is impossible.
    let proc_doc = write_doc(
        dir.path(),
        "sub.json",
        r#"{"d": 3, "p": 0.5, "alpha": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], "beta": [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]], "mode": "strict"}"#,
    );
    let out = bin()
        .args(["riccati", "--t", "0.5", "--steps", "50", "--input"])
        .arg(&proc_doc)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 1, "strict mode rejects the shape");

    // The transform-level machinery is still available formally.
    let out = bin()
        .args(["riccati", "--t", "0.5", "--steps", "50", "--mode", "formal", "--input"])
        .arg(&proc_doc)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);

    // But no formal process can be simulated.
    let out = bin()
        .args(["simulate", "--t", "0.5", "--mode", "formal", "--seed", "3", "--input"])
        .arg(&proc_doc)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn convert_round_trips_through_the_a_parameterization() {
    let dir = tempfile::tempdir().unwrap();
    let exists = write_doc(dir.path(), "exists.json", EXISTS_DOC);
    let letac = dir.path().join("letac.json");
    let out = bin()
        .args(["convert", "--to", "letac", "--output"])
        .arg(&letac)
        .args(["--input"])
        .arg(&exists)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
    let letac_doc: Value = serde_json::from_str(&fs::read_to_string(&letac).unwrap()).unwrap();
    assert!(letac_doc.get("a").is_some());

    let back = dir.path().join("back.json");
    let out = bin()
        .args(["convert", "--to", "gamma", "--output"])
        .arg(&back)
        .args(["--input"])
        .arg(&letac)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
    let original: Value = serde_json::from_str(EXISTS_DOC).unwrap();
    let returned: Value = serde_json::from_str(&fs::read_to_string(&back).unwrap()).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let a = original["omega"][i][j].as_f64().unwrap();
            let b = returned["omega"][i][j].as_f64().unwrap();
            assert!((a - b).abs() < 1e-10, "omega[{i}][{j}] drifted: {a} vs {b}");
        }
    }
}

#[test]
fn convert_to_letac_requires_invertible_scale() {
    let dir = tempfile::tempdir().unwrap();
    let degenerate = write_doc(
        dir.path(),
        "degenerate.json",
        r#"{"d": 2, "p": 1.0, "omega": [[0.0, 0.0], [0.0, 0.0]], "sigma": [[1.0, 0.0], [0.0, 0.0]]}"#,
    );
    let out = bin()
        .args(["convert", "--to", "letac", "--input"])
        .arg(&degenerate)
        .output()
        .unwrap();
    assert_eq!(
        exit_code(&out),
        3,
        "singular scale is a numerical failure for this conversion"
    );
}

#[test]
fn riccati_table_reports_small_deviation() {
    let dir = tempfile::tempdir().unwrap();
    let proc_doc = write_doc(
        dir.path(),
        "proc.json",
        r#"{"d": 2, "p": 1.2, "alpha": [[0.6, 0.1], [0.1, 0.4]], "beta": [[0.2, -0.3], [0.4, 0.1]], "mode": "strict", "u": [[0.9, 0.2], [0.2, 0.5]]}"#,
    );
    let csv = dir.path().join("riccati.csv");
    let out = bin()
        .args(["riccati", "--t", "1.0", "--steps", "400", "--output"])
        .arg(&csv)
        .args(["--input"])
        .arg(&proc_doc)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
    let text = fs::read_to_string(&csv).unwrap();
    for line in text.lines().skip(1) {
        let dev: f64 = line.rsplit(',').next().unwrap().trim().parse().unwrap();
        assert!(dev < 1e-8, "closed form vs integrator drifted: {dev}");
    }
}

#[test]
fn verify_example_passes_with_seed_42() {
    let dir = tempfile::tempdir().unwrap();
    let exists = write_doc(dir.path(), "exists.json", EXISTS_DOC);
    let report_path = dir.path().join("report.json");
    let out = bin()
        .args(["verify", "--seed", "42", "--n", "20000", "--output"])
        .arg(&report_path)
        .args(["--input"])
        .arg(&exists)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 0);
    let report: Value = serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    for suite in report["identity_suites"].as_array().unwrap() {
        assert_eq!(suite["passed"], true, "suite {} failed", suite["name"]);
    }
    let within = report["points_within_3se"].as_u64().unwrap();
    assert!(
        within >= 18,
        "expected at least 18/20 z-scores within ±3, got {within}"
    );
}
