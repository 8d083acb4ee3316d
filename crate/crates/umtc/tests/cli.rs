//! End-to-end tests of the command-line binary: exit codes, report
//! determinism, and bundle round trips through the filesystem.

use std::path::Path;
use std::process::{Command, Output};

fn umtc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umtc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 report")
}

#[test]
fn validate_catalog_entry_exits_zero() {
    let out = umtc(&["validate", "fibonacci"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {:?}", out.stderr);
    let text = stdout(&out);
    assert!(text.contains("pentagon"));
    assert!(text.contains("hexagon"));
}

#[test]
fn modularity_verdicts_drive_exit_codes() {
    assert_eq!(umtc(&["modularity", "fibonacci"]).status.code(), Some(0));
    // Degenerate bundle: verdict failure, witness named.
    let out = umtc(&["modularity", "rep-z2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("g1"));
}

#[test]
fn unknown_bundle_is_an_input_error() {
    let out = umtc(&["modularity", "no-such-bundle"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{not json").unwrap();
    let out = umtc(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_deterministic() {
    let a = umtc(&["smatrix", "ising-p1-ref"]);
    let b = umtc(&["smatrix", "ising-p1-ref"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn catalog_export_round_trips_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    let out = umtc(&["catalog", "--export", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut count = 0;
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let check = umtc(&["validate", path.to_str().unwrap()]);
        assert_eq!(check.status.code(), Some(0), "{:?} failed validate", path);
        count += 1;
    }
    assert_eq!(count, 19);
}

#[test]
fn product_then_prime_factor_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let prod = dir.path().join("product.json");
    let out = umtc(&[
        "product",
        "ising-p1-ref",
        "fibonacci",
        "--save",
        prod.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(Path::new(&prod).exists());
    let out = umtc(&["prime-factor", prod.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("2 prime factors"));
}

#[test]
fn solve_braidings_reports_eight_ising_structures() {
    let dir = tempfile::tempdir().unwrap();
    // Export the catalog to obtain F-table bundles for both kappa classes.
    let export = umtc(&["catalog", "--export", dir.path().to_str().unwrap()]);
    assert_eq!(export.status.code(), Some(0));
    let p1 = dir.path().join("ising-p1-b0.json");
    let m1 = dir.path().join("ising-m1-b0.json");
    let out = umtc(&[
        "solve-braidings",
        "--ring",
        p1.to_str().unwrap(),
        "--f-table",
        m1.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {:?}", out.stderr);
    assert!(stdout(&out).contains("8 fingerprint-distinct braided structures"));
}

#[test]
fn point_check_modes() {
    // Monodromy pairing of {1,psi} with itself passes.
    let out = umtc(&[
        "point-check",
        "--bundle",
        "ising-p1-ref",
        "--left",
        "1,psi",
        "--right",
        "1,psi",
        "--mode",
        "monodromy",
    ]);
    assert_eq!(out.status.code(), Some(0));
    // Comparability on the same pair is a degenerate-sector obstruction.
    let out = umtc(&[
        "point-check",
        "--bundle",
        "ising-p1-ref",
        "--left",
        "1,psi",
        "--right",
        "1,psi",
        "--mode",
        "comparability",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("DegenerateSector"));
    // Collapse verdict on Fibonacci.
    let out = umtc(&[
        "point-check",
        "--bundle",
        "fibonacci",
        "--left",
        "1,tau",
        "--right",
        "1",
        "--mode",
        "comparability",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("right collapses"));
}

#[test]
fn centralizer_reports_exclusions() {
    let out = umtc(&["centralizer", "ising-p1-ref", "--members", "sigma"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("centralizer {1}"));
}

#[test]
fn tolerance_env_var_is_honored() {
    // An absurdly tight tolerance makes coherence residuals fail.
    let out = Command::new(env!("CARGO_BIN_EXE_umtc"))
        .args(["validate", "fibonacci"])
        .env("UMTC_TOL", "1e-18")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
