//! End-to-end tests driving the compiled binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use heisenspec::report::BoundReport;

const K4: &str = "4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
const P3: &str = "3 2\n1 2\n2 3\n";
const PRISM: &str = "6 9\n1 2\n2 3\n1 3\n4 5\n5 6\n4 6\n1 4\n2 5\n3 6\n";
const TWO_TRIANGLES: &str = "6 6\n1 2\n2 3\n1 3\n4 5\n5 6\n4 6\n";
const C6: &str = "6 6\n1 2\n2 3\n3 4\n4 5\n5 6\n1 6\n";

struct Scratch {
    dir: tempfile::TempDir,
}

impl Scratch {
    fn new() -> Scratch {
        Scratch {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn graph(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heisenspec"))
        .args(args)
        .env_remove("HEISENSPEC_TEST_CORRUPT")
        .env_remove("HEISENSPEC_CAP")
        .output()
        .unwrap()
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn parse_report(out: &Output) -> BoundReport {
    serde_json::from_str(&stdout_of(out)).unwrap()
}

#[test]
fn spectrum_prints_plain_sorted_eigenvalues() {
    let scratch = Scratch::new();
    let k4 = scratch.graph("k4.txt", K4);
    let p3 = scratch.graph("p3.txt", P3);

    let out = run(&["spectrum", k4.to_str().unwrap(), "--k", "2"]);
    assert_eq!(stdout_of(&out).trim(), "0 4 4 4 6 6");

    let out = run(&["spectrum", p3.to_str().unwrap(), "--k", "2"]);
    assert_eq!(stdout_of(&out).trim(), "0 1 3");

    let out = run(&["spectrum", p3.to_str().unwrap(), "--k", "0"]);
    assert_eq!(stdout_of(&out).trim(), "0");
}

#[test]
fn upper_reports_are_byte_identical_per_seed() {
    let scratch = Scratch::new();
    let c6 = scratch.graph("c6.txt", C6);
    let args = [
        "upper",
        c6.to_str().unwrap(),
        "--k",
        "2",
        "--j",
        "3",
        "--seed",
        "11",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn upper_json_round_trips_through_the_typed_schema() {
    let scratch = Scratch::new();
    let c6 = scratch.graph("c6.txt", C6);
    let out = run(&[
        "upper",
        c6.to_str().unwrap(),
        "--k",
        "1",
        "--j",
        "2",
        "--with-exact",
    ]);
    let text = stdout_of(&out);
    let report: BoundReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.to_json(), text.trim_end());
    assert_eq!(report.graph.n, 6);
    assert_eq!(report.rows.len(), 1);
    let row = &report.rows[0];
    let upper = row.upper.as_ref().unwrap();
    assert!(upper.bound.0 >= row.exact.unwrap() - 1e-9);
}

#[test]
fn upper_reproduces_the_half_split_prism_bound() {
    let scratch = Scratch::new();
    let prism = scratch.graph("prism.txt", PRISM);
    let report = parse_report(&run(&[
        "upper",
        prism.to_str().unwrap(),
        "--k",
        "2",
        "--j",
        "1",
        "--with-exact",
    ]));
    let upper = report.rows[0].upper.as_ref().unwrap();
    assert_eq!(upper.mu, 12.0);
    assert_eq!(upper.set_count, 15);
    assert_eq!(upper.bound.0, 10.5);
    assert!(report.rows[0].exact.unwrap() <= 10.5);
}

#[test]
fn upper_flags_disconnected_graphs_with_an_exact_zero() {
    let scratch = Scratch::new();
    let split = scratch.graph("split.txt", TWO_TRIANGLES);
    let report = parse_report(&run(&[
        "upper",
        split.to_str().unwrap(),
        "--k",
        "1",
        "--j",
        "1",
        "--with-exact",
    ]));
    assert_eq!(report.graph.components, 2);
    let upper = report.rows[0].upper.as_ref().unwrap();
    assert_eq!(upper.bound.0, 0.0);
    assert_eq!(upper.diameter.to_string(), "inf");
    assert!(upper.note.is_some());
    assert!(report.rows[0].exact.unwrap().abs() <= 1e-9);
}

#[test]
fn pseudocode_exponent_loosens_the_bound() {
    let scratch = Scratch::new();
    let prism = scratch.graph("prism.txt", PRISM);
    let base = ["upper", prism.to_str().unwrap(), "--k", "2", "--j", "1"];
    let certified = parse_report(&run(&base));
    let mut args = base.to_vec();
    args.push("--pseudocode-exponent");
    let loose = parse_report(&run(&args));

    let c = certified.rows[0].upper.as_ref().unwrap();
    let l = loose.rows[0].upper.as_ref().unwrap();
    assert_eq!(c.exponent, "1/(d-1)");
    assert!(c.certified);
    assert_eq!(l.exponent, "1/d");
    assert!(!l.certified);
    assert!(l.bound.0 < c.bound.0);
}

#[test]
fn lower_marks_the_three_path_pair_case_not_applicable() {
    let scratch = Scratch::new();
    let p3 = scratch.graph("p3.txt", P3);
    let report = parse_report(&run(&[
        "lower",
        p3.to_str().unwrap(),
        "--k",
        "2",
        "--j",
        "1",
    ]));
    assert_eq!(report.rows.len(), 2);
    for row in &report.rows {
        let lower = row.lower.as_ref().unwrap();
        assert_eq!(lower.a_k, 0.0);
        assert!(lower.bound.is_none());
        assert!(lower.reason.as_ref().unwrap().contains("family floor"));
    }
}

#[test]
fn lower_grid_rows_stay_below_the_exact_value() {
    let scratch = Scratch::new();
    let c6 = scratch.graph("c6.txt", C6);
    let report = parse_report(&run(&[
        "lower",
        c6.to_str().unwrap(),
        "--k",
        "2",
        "--j",
        "1",
        "--delta-grid",
        "3,4,inf",
        "--with-exact",
    ]));
    assert_eq!(report.rows.len(), 3);
    let exact = report.rows[0].exact.unwrap();
    for row in &report.rows {
        let lower = row.lower.as_ref().unwrap();
        assert!(lower.certified);
        let bound = lower.bound.unwrap();
        assert!(bound > 0.0);
        assert!(bound <= exact + 1e-9, "bound {bound} vs exact {exact}");
    }
    // the "inf" entry must survive the JSON round trip as a string
    assert!(stdout_of(&run(&[
        "lower",
        c6.to_str().unwrap(),
        "--k",
        "2",
        "--j",
        "1",
        "--delta-grid",
        "inf",
    ]))
    .contains("\"delta\": \"inf\""));
}

#[test]
fn csv_output_parses_with_one_record_per_grid_entry() {
    let scratch = Scratch::new();
    let c6 = scratch.graph("c6.txt", C6);
    let out = run(&[
        "lower",
        c6.to_str().unwrap(),
        "--k",
        "1",
        "--j",
        "1",
        "--delta-grid",
        "3,4",
        "--format",
        "csv",
    ]);
    let text = stdout_of(&out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert!(headers.iter().any(|h| h == "lower_bound"));
    assert!(headers.iter().any(|h| h == "upper_witness"));
    let records: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), 2);
    for record in &records {
        assert_eq!(record.len(), headers.len());
    }
}

#[test]
fn validate_passes_clean_graphs_and_prints_suite_lines() {
    let scratch = Scratch::new();
    for text in [K4, P3] {
        let path = scratch.graph("g.txt", text);
        let out = run(&["validate", path.to_str().unwrap()]);
        let stdout = stdout_of(&out);
        assert!(stdout.contains("suite decomposition: PASS"));
        assert!(stdout.contains("suite meanfield: PASS"));
        assert!(!stdout.contains("FAIL"));
    }
}

#[test]
fn corrupt_hook_fails_validation_with_exit_one() {
    let scratch = Scratch::new();
    let k4 = scratch.graph("k4.txt", K4);
    let out = Command::new(env!("CARGO_BIN_EXE_heisenspec"))
        .args(["validate", k4.to_str().unwrap()])
        .env("HEISENSPEC_TEST_CORRUPT", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("suite decomposition: FAIL"));
}

#[test]
fn input_errors_exit_two() {
    let scratch = Scratch::new();

    let out = run(&["spectrum", "/nonexistent/graph.txt", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let bad = scratch.graph("bad.txt", "3 2\n1 2\n2 5\n");
    let out = run(&["spectrum", bad.to_str().unwrap(), "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertex 5 out of range"));

    let p3 = scratch.graph("p3.txt", P3);
    let out = run(&["upper", p3.to_str().unwrap(), "--k", "2", "--j", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn size_caps_exit_three() {
    let scratch = Scratch::new();

    let mut big = String::from("9 8\n");
    for v in 1..9 {
        big.push_str(&format!("{} {}\n", v, v + 1));
    }
    let path = scratch.graph("p9.txt", &big);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size cap"));

    // the cap override follows the process environment
    let k4 = scratch.graph("k4.txt", K4);
    let out = Command::new(env!("CARGO_BIN_EXE_heisenspec"))
        .args(["spectrum", k4.to_str().unwrap(), "--k", "2"])
        .env("HEISENSPEC_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_cap_override_is_refused() {
    let scratch = Scratch::new();
    let k4 = scratch.graph("k4.txt", K4);
    let out = Command::new(env!("CARGO_BIN_EXE_heisenspec"))
        .args(["spectrum", k4.to_str().unwrap(), "--k", "1"])
        .env("HEISENSPEC_CAP", "banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("HEISENSPEC_CAP"));
}

#[test]
fn thread_count_flag_is_accepted() {
    let scratch = Scratch::new();
    let c6 = scratch.graph("c6.txt", C6);
    let out = run(&[
        "--threads",
        "2",
        "lower",
        c6.to_str().unwrap(),
        "--k",
        "1",
        "--j",
        "1",
    ]);
    assert!(out.status.success());
}
