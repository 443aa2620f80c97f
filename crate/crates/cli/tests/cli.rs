use std::io::Write;
use std::process::{Command, Output};

use molien::{parse_polynomial, parse_scalar};
use molien_cli::report::Report;
use tempfile::NamedTempFile;

const C4: &str =
    r#"{"dimension": 2, "backend": "exact", "generators": [[["0", "-1"], ["1", "0"]]]}"#;
const S2: &str =
    r#"{"dimension": 2, "backend": "exact", "generators": [[["0", "1"], ["1", "0"]]]}"#;
const PM: &str =
    r#"{"dimension": 2, "backend": "exact", "generators": [[["-1", "0"], ["0", "-1"]]]}"#;
const TRIVIAL2: &str =
    r#"{"dimension": 2, "backend": "exact", "generators": [[["1", "0"], ["0", "1"]]]}"#;
const Q8: &str = r#"{"dimension": 2, "backend": "exact", "generators": [[["i", "0"], ["0", "-i"]], [["0", "-1"], ["1", "0"]]]}"#;

fn spec_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn molien(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_molien"))
        .args(args)
        .output()
        .unwrap()
}

fn with_file(text: &str, args: &[&str]) -> Output {
    let f = spec_file(text);
    let mut all: Vec<&str> = args.to_vec();
    all.push(f.path().to_str().unwrap());
    molien(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn series_text() {
    let o = with_file(C4, &["series", "--degree", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "group_order = 4\na = [1, 0, 1, 0, 3]\n");
    let o = with_file(TRIVIAL2, &["series", "--degree", "2"]);
    assert!(stdout(&o).contains("a = [1, 2, 3]\n"));
}

#[test]
fn invariants_text() {
    let o = with_file(S2, &["invariants", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "group_order = 2\na_2 = 2\nx1^2 + x2^2\nx1*x2\n");
    let o = with_file(PM, &["invariants", "--degree", "3"]);
    assert_eq!(stdout(&o), "group_order = 2\na_3 = 0\n");
    let o = with_file(C4, &["invariants", "--degree", "0"]);
    assert_eq!(stdout(&o), "group_order = 4\na_0 = 1\n1\n");
}

#[test]
fn verify_text_ends_ok() {
    let o = molien(&[
        "verify", "--degree", "6", "--perm", "(1 2 3)", "--perm", "(1 2)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("group_order = 6\n"));
    assert!(out.ends_with("OK\n"));
    assert_eq!(out.lines().count(), 1 + 1 + 7 + 1);
    let o = with_file(Q8, &["verify", "--degree", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("OK\n"));
}

#[test]
fn json_reports_round_trip() {
    let o = with_file(Q8, &["--format", "json", "verify", "--degree", "6"]);
    let report: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.group_order, 8);
    let series: Vec<u64> = report.degrees.iter().map(|r| r.series.unwrap()).collect();
    assert_eq!(series, [1, 0, 0, 0, 2, 0, 1]);
    assert!(report
        .degrees
        .iter()
        .all(|r| r.agree && r.trace == r.series && r.rank == r.series));

    let o = with_file(C4, &["invariants", "--degree", "4", "--format", "json"]);
    let report: Report = serde_json::from_str(&stdout(&o)).unwrap();
    let inv = report.invariants.unwrap();
    assert_eq!(inv.dimension, 3);
    for text in &inv.basis {
        let f = parse_polynomial(text, 2, parse_scalar).unwrap();
        assert_eq!(&f.to_string(), text);
    }
}

#[test]
fn float_backend_matches_exact() {
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let c8 = format!(
        r#"{{"dimension": 2, "backend": "float", "generators": [[[{c}, {}], [{c}, {c}]]]}}"#,
        -c
    );
    let o = with_file(&c8, &["series", "--degree", "8"]);
    assert_eq!(
        stdout(&o),
        "group_order = 8\na = [1, 0, 1, 0, 1, 0, 1, 0, 3]\n"
    );
    let f4 = r#"{"dimension": 2, "backend": "float", "generators": [[[0, -1], [1, 0]]]}"#;
    assert_eq!(
        stdout(&with_file(f4, &["verify", "-d", "5"])),
        stdout(&with_file(C4, &["verify", "-d", "5"]))
    );
}

#[test]
fn input_errors_exit_one() {
    let o = with_file(
        r#"{"dimension": 1, "backend": "exact", "generators": [[["1//2"]]]}"#,
        &["series", "-d", "2"],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:parse:"));

    let o = with_file(
        r#"{"dimension": 2, "backend": "exact", "generators": [[["2", "0"], ["0", "1"]]]}"#,
        &["verify", "-d", "2"],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:validation:"));
    assert!(o.stdout.is_empty());

    let o = with_file("{not json", &["series", "-d", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:parse:"));

    let o = molien(&["series", "-d", "1", "/nonexistent/group.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:io:"));

    let o = molien(&["series", "-d", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:usage:"));

    let o = molien(&["series", "-d", "1", "--perm", "(1 2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:parse:"));
}

#[test]
fn help_exits_zero() {
    let o = molien(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}

#[test]
fn closure_overflow_exits_three() {
    let (s, c) = 1f64.sin_cos();
    let spec = format!(
        r#"{{"dimension": 2, "backend": "float", "generators": [[[{c}, {}], [{s}, {c}]]]}}"#,
        -s
    );
    let o = with_file(&spec, &["series", "-d", "2", "--max-order", "50"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error:overflow:"));
    let o = molien(&[
        "series",
        "-d",
        "2",
        "--max-order",
        "5",
        "--perm",
        "(1 2 3 4 5 6)",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn loose_tolerance_mismatch_exits_two() {
    let f4 = r#"{"dimension": 2, "backend": "float", "generators": [[[0, -1], [1, 0]]]}"#;
    let o = with_file(f4, &["verify", "-d", "4", "--tolerance", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).ends_with("MISMATCH\n"));
    assert!(stderr(&o).starts_with("error:mismatch:"));
}

#[test]
fn near_group_exits_four() {
    let (s, c) = (std::f64::consts::FRAC_PI_2 + 1e-4).sin_cos();
    let spec = format!(
        r#"{{"dimension": 2, "backend": "float", "generators": [[[{c}, {}], [{s}, {c}]]], "tolerance": 1e-3}}"#,
        -s
    );
    let o = with_file(&spec, &["series", "-d", "4"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).starts_with("error:consistency:"));
}

#[test]
fn verify_is_deterministic() {
    let a = with_file(Q8, &["verify", "-d", "6"]);
    let b = with_file(Q8, &["verify", "-d", "6"]);
    assert_eq!(a.stdout, b.stdout);
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let c8 = format!(
        r#"{{"dimension": 2, "backend": "float", "generators": [[[{c}, {}], [{c}, {c}]]]}}"#,
        -c
    );
    let a = with_file(&c8, &["--format", "json", "verify", "-d", "8"]);
    let b = with_file(&c8, &["--format", "json", "verify", "-d", "8"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn perm_and_file_are_exclusive() {
    let o = with_file(C4, &["series", "-d", "1", "--perm", "(1 2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:usage:"));
    let o = molien(&["series", "-d", "3", "--perm", "(1 2)", "--dimension", "3"]);
    assert_eq!(stdout(&o), "group_order = 2\na = [1, 2, 4, 6]\n");
}
