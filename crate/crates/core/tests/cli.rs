use std::process::Command;

use clap::Parser;
use qdeform::cli::{run, Cli};

fn output(args: &[&str]) -> (bool, String) {
    let cli = Cli::try_parse_from(std::iter::once("qdeform").chain(args.iter().copied())).unwrap();
    let mut buf = Vec::new();
    let ok = run(&cli, &mut buf).unwrap();
    (ok, String::from_utf8(buf).unwrap())
}

#[test]
fn presets_are_listed() {
    let (ok, text) = output(&["presets"]);
    assert!(ok);
    for name in ["sl2", "sl2-lambda", "sl3", "sl3-plus", "uq-sl2-N5"] {
        assert!(text.lines().any(|l| l.trim() == name), "{text}");
    }
}

#[test]
fn reduce_in_each_algebra() {
    let (_, text) = output(&["--preset", "sl2", "reduce", "e*f - q^-2*f*e"]);
    assert_eq!(text.trim(), "(q/(q^2 - 1))*K^2 - (q/(q^2 - 1))");
    let (_, text) = output(&["--preset", "sl2", "reduce", "--algebra", "graded", "e*f - q^-2*f*e"]);
    assert_eq!(text.trim(), "0");
    let (_, text) = output(&["--preset", "sl2", "reduce", "--algebra", "cleft", "e*f"]);
    assert_eq!(text.trim(), "q^-2*f*e - (q/(q^2 - 1))");
}

#[test]
fn dimension_table() {
    let (ok, text) = output(&["--preset", "uq-sl2-N5", "dims"]);
    assert!(ok);
    assert!(text.contains("total 125 125"), "{text}");
    let (_, text) = output(&["--preset", "sl2", "--emit", "dims", "dims"]);
    assert!(text.lines().count() >= 6, "{text}");
}

#[test]
fn verification_suites() {
    let (ok, text) = output(&["--preset", "sl2", "verify", "all"]);
    assert!(ok, "{text}");
    assert!(text.trim_end().ends_with("ALL PASS"));
    let (ok, text) = output(&["--preset", "sl3-plus", "verify", "double"]);
    assert!(ok);
    assert!(text.contains("DOUBLE SKIP"));
}

#[test]
fn cocycle_dump() {
    let (_, text) = output(&["--preset", "sl2", "--max-degree", "2", "--emit", "cocycle", "deform"]);
    assert!(text.contains("sigma(e ; f) = -q/(q^2 - 1)"), "{text}");
}

#[test]
fn double_with_quotient() {
    let (ok, text) = output(&["--preset", "sl2", "double", "--quotient", "--verify"]);
    assert!(ok, "{text}");
    assert!(text.contains("e*f -> q^-2*f*e"), "{text}");
}

#[test]
fn primitives_of_sl3_plus() {
    let (_, text) = output(&["--preset", "sl3-plus", "primitives", "--degree", "3"]);
    assert!(text.contains("E1*E1*E2"), "{text}");
    let (_, text) = output(&["--preset", "sl3-plus", "primitives", "--degree", "2"]);
    assert!(!text.contains('*'), "{text}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qdeform");
    let ok = Command::new(bin).args(["--preset", "sl2", "verify", "confluence"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["--preset", "nope", "dims"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
    let parse = Command::new(bin).args(["--preset", "sl2", "reduce", "e*"]).output().unwrap();
    assert_eq!(parse.status.code(), Some(2));
}
