//! End-to-end checks of the binary: exit codes, byte determinism, formats.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radial-duality"))
        .args(args)
        .output()
        .expect("binary launches")
}

#[test]
fn map_flagship_row() {
    let out = run(&["map", "--d", "3", "--l", "1", "--beta", "-1", "--K", "-1", "--E", "-0.125"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "D,L,dual_energy,dual_coupling,dual_exponent,coord_exponent,physical"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("4.0000000000000000e0,2.0000000000000000e0,4.0000000000000000e0,5.0000000000000000e-1,2.0000000000000000e0"));
    assert!(row.ends_with("true"));
}

#[test]
fn singular_exponent_exits_two() {
    let out = run(&["map", "--d", "3", "--l", "0", "--beta", "-2", "--K", "1", "--E", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("singular"), "stderr: {stderr}");
}

#[test]
fn usage_error_exits_two() {
    let out = run(&["ratio", "--system", "nonsense", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wallis_rows_match_exact_rationals() {
    let out = run(&["ratio", "--system", "wallis", "--n", "1,2,3"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let values: Vec<f64> = stdout
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values, vec![4.0 / 3.0, 64.0 / 45.0, 256.0 / 175.0]);
}

#[test]
fn symmetric_pair_is_swap_invariant() {
    let a = run(&["ratio", "--system", "symmetric", "--l", "3", "--k", "5"]);
    let b = run(&["ratio", "--system", "symmetric", "--l", "5", "--k", "3"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn identical_arguments_are_byte_identical() {
    let args = ["ratio", "--system", "hydrogen", "--range", "2^4..2^10"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "stdout must be deterministic");
}

#[test]
fn json_rows_parse_shape() {
    let out = run(&["ratio", "--system", "oscillator", "--n", "0,1", "--format", "json"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    for line in stdout.lines() {
        assert!(line.starts_with('{') && line.ends_with('}'));
        assert!(line.contains("\"index\":") && line.contains("\"value\":"));
    }
    assert_eq!(stdout.lines().count(), 2);
}

#[test]
fn verify_identities_passes_and_exits_zero() {
    let out = run(&["verify", "--suite", "identities"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.lines().count() > 5);
    for line in stdout.lines().skip(1) {
        assert!(line.contains(",true,"), "check row not passing: {line}");
    }
}

#[test]
fn spectrum_reports_levels_with_nodes() {
    let out = run(&["spectrum", "--system", "oscillator", "--L", "1", "--levels", "2"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    // Levels 3, 5 at ω = 1 with node counts 0, 1.
    assert!(rows[0].starts_with("0,") && rows[0].ends_with(",0"));
    assert!(rows[1].starts_with("1,") && rows[1].ends_with(",1"));
}

#[test]
fn variational_requires_matching_index_flag() {
    let out = run(&["variational", "--system", "hydrogen", "--L", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn variational_reports_even_dimension_ratio() {
    let out = run(&["variational", "--system", "hydrogen", "--l", "0", "--d", "4"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let row = stdout.lines().nth(1).unwrap();
    let ratio: f64 = row.split(',').nth(5).unwrap().parse().unwrap();
    assert!((ratio - 0.883_572_933_822_129_3).abs() < 1e-12, "ratio {ratio}");
}
