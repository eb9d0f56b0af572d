//! End-to-end tests that spawn the `invpow` binary.

use std::process::{Command, Output};

/// Reference potential: A = 4, C = 2, D = -2, three dimensions, l = 0.
const REFERENCE_3D: [&str; 6] = ["--A", "4", "--C", "2", "--D", "-2"];

const B_3D: f64 = 5.870_015_428_226_070_3;
const B_2D: f64 = 5.650_332_279_244_097_7;
const ENERGY_3D: f64 = -0.164_242_035_822_595_2;
const NORMALIZATION_3D: f64 = 0.070_280_431_948_908_46;
const PEAK_3D: f64 = 6.812_933_946_093_599_9;

fn invpow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invpow"))
        .args(args)
        .env_remove("INVPOW_CONFIG")
        .output()
        .expect("spawn invpow")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

/// Value of `name` in a single-row table printed as `name  value` lines.
fn field(table: &str, name: &str) -> f64 {
    for line in table.lines() {
        let mut parts = line.split_whitespace();
        if parts.next() == Some(name) {
            let value = parts
                .next()
                .unwrap_or_else(|| panic!("no value for {name}"));
            return value
                .parse()
                .unwrap_or_else(|_| panic!("unparsable {name}: {value}"));
        }
    }
    panic!("field {name} missing from:\n{table}");
}

fn assert_close(actual: f64, expected: f64, tol: f64) {
    assert!(
        (actual - expected).abs() <= tol * expected.abs().max(1.0),
        "expected {expected}, got {actual}"
    );
}

/// Checks the C-style scientific format `-?d.(d{frac})e[+-]dd`.
fn is_sci(token: &str, frac_digits: usize) -> bool {
    let token = token.strip_prefix('-').unwrap_or(token);
    let bytes = token.as_bytes();
    bytes.len() == frac_digits + 6
        && bytes[0].is_ascii_digit()
        && bytes[1] == b'.'
        && bytes[2..2 + frac_digits].iter().all(|b| b.is_ascii_digit())
        && bytes[2 + frac_digits] == b'e'
        && matches!(bytes[3 + frac_digits], b'+' | b'-')
        && bytes[4 + frac_digits..].iter().all(|b| b.is_ascii_digit())
}

fn csv_column(text: &str, name: &str) -> Vec<String> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().expect("csv header").split(',').collect();
    let index = header
        .iter()
        .position(|h| *h == name)
        .unwrap_or_else(|| panic!("column {name} missing from {header:?}"));
    lines
        .map(|line| line.split(',').nth(index).unwrap().to_string())
        .collect()
}

#[test]
fn solve_reports_the_reference_ground_state() {
    let output = invpow(&[&["solve"], &REFERENCE_3D[..]].concat());
    assert_eq!(exit_code(&output), 0, "{}", stderr_of(&output));
    let table = stdout_of(&output);
    assert_close(field(&table, "B"), B_3D, 1e-9);
    assert_close(field(&table, "a"), -2.0, 1e-12);
    assert_close(field(&table, "b"), -0.405_267_856_883_068_4, 1e-9);
    assert_close(field(&table, "c"), 2.467_503_857_056_517_6, 1e-9);
    assert_close(field(&table, "E"), ENERGY_3D, 1e-9);
    assert_close(field(&table, "N"), NORMALIZATION_3D, 1e-9);
    assert_close(field(&table, "r_peak"), PEAK_3D, 1e-9);
}

#[test]
fn two_dimensional_channel_changes_the_solution() {
    let output = invpow(&[&["solve"], &REFERENCE_3D[..], &["--dim", "2"]].concat());
    assert_eq!(exit_code(&output), 0, "{}", stderr_of(&output));
    let table = stdout_of(&output);
    assert_close(field(&table, "B"), B_2D, 1e-9);
    assert_close(field(&table, "E"), -0.171_804_861_320_032_1, 1e-9);
}

#[test]
fn explicit_coupling_must_satisfy_the_constraint() {
    let output = invpow(&["solve", "--A", "4", "--B", "5.87", "--C", "2", "--D", "-2"]);
    assert_eq!(exit_code(&output), 2);
    let err = stderr_of(&output);
    assert_eq!(err.lines().count(), 1, "expected one line, got: {err}");
    assert!(err.starts_with("error:"), "{err}");
    assert!(err.contains("constraint"), "{err}");
    assert!(stdout_of(&output).is_empty());
}

#[test]
fn missing_couplings_are_reported() {
    let output = invpow(&["solve", "--A", "4", "--C", "2"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("missing coupling D"));
}

#[test]
fn angular_flags_are_dimension_specific() {
    let output = invpow(&[&["solve"], &REFERENCE_3D[..], &["--dim", "2", "--ell", "1"]].concat());
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("--ell applies to --dim 3"));

    let output = invpow(&[&["solve"], &REFERENCE_3D[..], &["--m", "1"]].concat());
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("--m applies to --dim 2"));
}

#[test]
fn malformed_flags_compress_to_one_error_line() {
    let output = invpow(&["solve", "--A", "fast", "--C", "2", "--D", "-2"]);
    assert_eq!(exit_code(&output), 2);
    let err = stderr_of(&output);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error:"), "{err}");

    let output = invpow(&["frobnicate"]);
    assert_eq!(exit_code(&output), 2);
    assert_eq!(stderr_of(&output).lines().count(), 1);
}

#[test]
fn sample_emits_stable_csv() {
    let args = [
        &["sample"],
        &REFERENCE_3D[..],
        &["--r-lo", "0.1", "--r-hi", "30", "--points", "40"],
    ]
    .concat();
    let first = invpow(&args);
    assert_eq!(exit_code(&first), 0, "{}", stderr_of(&first));
    let second = invpow(&args);
    assert_eq!(
        first.stdout, second.stdout,
        "sample output must be byte-stable"
    );

    let text = stdout_of(&first);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,R"));
    let mut count = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 2, "bad row: {line}");
        for cell in &cells {
            assert!(is_sci(cell, 10), "bad cell format: {cell}");
        }
        count += 1;
    }
    assert_eq!(count, 40);
    assert!(text.ends_with('\n') && !text.ends_with("\n\n"));
}

#[test]
fn sample_profile_rises_then_falls() {
    let output = invpow(
        &[
            &["sample"],
            &REFERENCE_3D[..],
            &["--r-lo", "0.1", "--r-hi", "30", "--points", "300"],
        ]
        .concat(),
    );
    assert_eq!(exit_code(&output), 0, "{}", stderr_of(&output));
    let text = stdout_of(&output);
    let radii: Vec<f64> = csv_column(&text, "r")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    let values: Vec<f64> = csv_column(&text, "R")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();

    assert!(
        values[0] >= 0.0 && values[0] < 1e-8,
        "barrier suppresses R near 0"
    );
    assert!(values.iter().all(|v| *v >= 0.0), "nodeless profile");
    let peak = values
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, _)| i)
        .unwrap();
    assert!((radii[peak] - PEAK_3D).abs() < 0.11, "peak near {PEAK_3D}");
    for window in values[..=peak].windows(2) {
        assert!(window[0] <= window[1], "rises before the peak");
    }
    for window in values[peak..].windows(2) {
        assert!(window[0] >= window[1], "falls after the peak");
    }
}

#[test]
fn normalized_sampling_rescales_by_the_normalization_constant() {
    let base = [
        &["sample"],
        &REFERENCE_3D[..],
        &["--r-lo", "5", "--r-hi", "7", "--points", "3"],
    ]
    .concat();
    let plain = invpow(&base);
    let scaled = invpow(&[&base[..], &["--normalized"]].concat());
    let plain_values: Vec<f64> = csv_column(&stdout_of(&plain), "R")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    let scaled_values: Vec<f64> = csv_column(&stdout_of(&scaled), "R")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    for (s, p) in scaled_values.iter().zip(&plain_values) {
        assert_close(s / p, NORMALIZATION_3D, 1e-8);
    }
}

#[test]
fn scan_rederives_the_coupling_per_row() {
    let output = invpow(&[
        "scan", "--vary", "angular", "--lo", "0", "--hi", "3", "--steps", "4", "--A", "4", "--C",
        "6", "--D", "-2", "--format", "csv",
    ]);
    assert_eq!(exit_code(&output), 0, "{}", stderr_of(&output));
    let text = stdout_of(&output);
    let couplings: Vec<f64> = csv_column(&text, "B")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(couplings.len(), 4);
    for window in couplings.windows(2) {
        assert!(
            window[0] < window[1],
            "B grows with the barrier: {couplings:?}"
        );
    }
    assert!(csv_column(&text, "error").iter().all(String::is_empty));
}

#[test]
fn scan_failures_stay_on_their_rows() {
    let output = invpow(&[
        "scan", "--vary", "D", "--lo", "-1", "--hi", "1", "--steps", "3", "--A", "4", "--C", "2",
        "--format", "csv",
    ]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    let errors = csv_column(&text, "error");
    let couplings = csv_column(&text, "B");
    assert!(errors[0].is_empty() && !couplings[0].is_empty());
    for row in 1..3 {
        assert!(!errors[row].is_empty(), "row {row} must fail");
        assert!(couplings[row].is_empty(), "failed rows leave B blank");
        assert!(
            !errors[row].contains(','),
            "messages must not break the dialect"
        );
    }
}

#[test]
fn single_step_scan_matches_solve() {
    let output = invpow(&[
        "scan", "--vary", "C", "--lo", "2", "--hi", "9", "--steps", "1", "--A", "4", "--D", "-2",
        "--format", "csv",
    ]);
    assert_eq!(exit_code(&output), 0, "{}", stderr_of(&output));
    let text = stdout_of(&output);
    let coupling: f64 = csv_column(&text, "B")[0].parse().unwrap();
    assert_close(coupling, B_3D, 1e-10);
    let swept: f64 = csv_column(&text, "C")[0].parse().unwrap();
    assert_eq!(swept, 2.0);
}

#[test]
fn scan_rejects_an_explicit_coupling() {
    let output = invpow(&[
        "scan", "--vary", "C", "--lo", "1", "--hi", "2", "--A", "4", "--B", "5.87", "--D", "-2",
    ]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("drop --B"));
}

#[test]
fn verify_passes_on_the_reference_case() {
    let output = invpow(&[&["verify"], &REFERENCE_3D[..], &["--format", "json-lines"]].concat());
    assert_eq!(exit_code(&output), 0, "{}", stderr_of(&output));
    let report: serde_json::Value = serde_json::from_str(stdout_of(&output).trim()).unwrap();
    assert_eq!(report["passed"], serde_json::json!(true));
    assert!(report["notes"].is_null());
    let analytic = report["analytic_energy"].as_f64().unwrap();
    assert_close(analytic, ENERGY_3D, 1e-12);
    let shot = report["shot_energy"].as_f64().unwrap();
    assert_close(shot, ENERGY_3D, 1e-6);
    assert!(report["residual_max"].as_f64().unwrap() < 1e-10);
}

#[test]
fn verify_signals_failure_with_exit_one() {
    let output = invpow(
        &[
            &["verify"],
            &REFERENCE_3D[..],
            &["--energy-rel-tol", "1e-12", "--format", "json-lines"],
        ]
        .concat(),
    );
    assert_eq!(exit_code(&output), 1);
    assert!(stderr_of(&output).starts_with("error: verification failed"));
    let report: serde_json::Value = serde_json::from_str(stdout_of(&output).trim()).unwrap();
    assert_eq!(report["passed"], serde_json::json!(false));
    assert!(report["notes"].as_str().unwrap().contains("disagrees"));
}

#[test]
fn verify_requires_a_complete_energy_bracket() {
    let output = invpow(&[&["verify"], &REFERENCE_3D[..], &["--energy-lo", "-1"]].concat());
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("--energy-hi"));
}

#[test]
fn audit_confirms_the_inconsistency_pattern() {
    let output = invpow(&[&["audit"], &REFERENCE_3D[..]].concat());
    assert_eq!(exit_code(&output), 0, "{}", stderr_of(&output));
    let table = stdout_of(&output);
    assert_close(field(&table, "ground_b"), -0.405_267_856_883_068_4, 1e-9);
    assert_close(field(&table, "excited_b"), -0.288_391_892_618_939, 1e-9);
    assert_close(
        field(&table, "coupling_ratio"),
        1.405_267_856_883_068_4,
        1e-9,
    );
    assert_close(field(&table, "residual_floor"), 6.404_004_160_027_189, 1e-9);
    assert!(table.contains("coupling_conflict       true"));
    assert!(table.contains("minus_branch_is_ground  true"));
}

#[test]
fn bessel_evaluates_the_reference_orders() {
    let output = invpow(&["bessel", "--nu", "0", "--x", "1"]);
    assert_eq!(exit_code(&output), 0);
    assert_close(
        field(&stdout_of(&output), "K"),
        0.421_024_438_240_708_33,
        1e-10,
    );

    let negative = invpow(&["bessel", "--nu", "-0.5", "--x", "4"]);
    let positive = invpow(&["bessel", "--nu", "0.5", "--x", "4"]);
    assert_eq!(
        stdout_of(&negative).replace("-5.000000000e-01", "5.000000000e-01"),
        stdout_of(&positive)
    );
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("planar.conf");
    std::fs::write(
        &path,
        "# planar reference case\ndim = 2\nA = 4\nC = 2\nD = -2\n",
    )
    .unwrap();
    let output = invpow(&["solve", "--config", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0, "{}", stderr_of(&output));
    assert_close(field(&stdout_of(&output), "B"), B_2D, 1e-9);
}

#[test]
fn environment_variable_names_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("planar.conf");
    std::fs::write(&path, "dim = 2\nA = 4\nC = 2\nD = -2\n").unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_invpow"))
        .args(["solve"])
        .env("INVPOW_CONFIG", &path)
        .output()
        .expect("spawn invpow");
    assert_eq!(exit_code(&output), 0, "{}", stderr_of(&output));
    assert_close(field(&stdout_of(&output), "B"), B_2D, 1e-9);
}

#[test]
fn flags_override_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("planar.conf");
    std::fs::write(&path, "dim = 2\nA = 4\nC = 2\nD = -2\n").unwrap();
    let output = invpow(&["solve", "--dim", "3", "--config", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0, "{}", stderr_of(&output));
    assert_close(field(&stdout_of(&output), "B"), B_3D, 1e-9);
}

#[test]
fn unknown_config_keys_fail_loudly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("typo.conf");
    std::fs::write(&path, "dimension = 2\n").unwrap();
    let output = invpow(
        &[
            &["solve"],
            &REFERENCE_3D[..],
            &["--config", path.to_str().unwrap()],
        ]
        .concat(),
    );
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("unknown configuration key `dimension`"));
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("solution.csv");
    let output = invpow(
        &[
            &["solve"],
            &REFERENCE_3D[..],
            &["--format", "csv", "--output", path.to_str().unwrap()],
        ]
        .concat(),
    );
    assert_eq!(exit_code(&output), 0, "{}", stderr_of(&output));
    assert!(stdout_of(&output).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("B,a,b,c,E,N,r_peak\n"));
    assert!(is_sci(
        written.lines().nth(1).unwrap().split(',').next().unwrap(),
        10
    ));
}

#[test]
fn multiple_constraint_roots_emit_a_note() {
    let output = invpow(&["solve", "--A", "1", "--C", "-0.23", "--D", "-0.01"]);
    assert_eq!(exit_code(&output), 0, "{}", stderr_of(&output));
    let note = stderr_of(&output);
    assert!(note.starts_with("note: 3 couplings"), "{note}");
    assert_close(field(&stdout_of(&output), "B"), -0.628_095_322_277, 1e-9);
}
