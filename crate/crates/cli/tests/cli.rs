//! End-to-end checks of the binary: exit codes, output stability and the
//! documented table shapes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pasipcs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn spectrum_default_passes_and_is_byte_stable() {
    let first = run(&["spectrum"]);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let second = run(&["spectrum"]);
    assert_eq!(first.stdout, second.stdout, "output must be byte-stable");

    let text = stdout(&first);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("# {"), "metadata comment line, got {header}");
    assert!(header.contains("\"command\":\"spectrum\""));
    assert_eq!(lines.next().unwrap(), "n,E_partial_sum,E_closed_form,abs_diff");
    // Default n_count = 11 rows; first row is the zero level.
    let first_row = lines.next().unwrap();
    assert!(first_row.starts_with("0,"), "{first_row}");
    assert_eq!(text.lines().count(), 2 + 11);
}

#[test]
fn spectrum_rows_match_closed_form() {
    let out = run(&["spectrum"]);
    let text = stdout(&out);
    // Row n = 1 for the default (λ = 1, ρ = 2): E_1 = 5.
    let row: Vec<&str> = text.lines().nth(3).unwrap().split(',').collect();
    assert_eq!(row[0], "1");
    assert_eq!(row[1], "5.00000000000e0");
    assert_eq!(row[3], "0.00000000000e0");
}

#[test]
fn empty_range_yields_header_only() {
    let dir = std::env::temp_dir().join("pasipcs-empty-range");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.txt");
    std::fs::write(&cfg, "n_count = 0\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "spectrum"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2, "metadata + header only");
}

#[test]
fn malformed_config_names_the_field() {
    let dir = std::env::temp_dir().join("pasipcs-bad-config");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.txt");
    std::fs::write(&cfg, "l = banana\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "spectrum"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("`l`"), "diagnostic must name the field: {err}");
}

#[test]
fn state_table_sums_to_unity() {
    let out = run(&["state", "--choice", "gamma"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let total: f64 = text
        .lines()
        .skip(2)
        .map(|row| row.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-10, "Σ|amp|² = {total}");
}

#[test]
fn thermal_cold_sweep_reaches_minus_one() {
    let out = run(&["thermal", "--m", "1", "--beta", "50"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    let q: f64 = row[6].parse().unwrap();
    assert!((q + 1.0).abs() < 1e-8, "Q = {q}");
}

#[test]
fn figure1_emits_five_positive_curves() {
    let dir = std::env::temp_dir().join("pasipcs-figure1");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.txt");
    std::fs::write(&cfg, "x_min = 0.2\nx_max = 10\nx_count = 8\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "figure1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert_eq!(
        text.lines().nth(1).unwrap(),
        "x,omega_m0,omega_m1,omega_m2,omega_m3,omega_m4"
    );
    for row in text.lines().skip(2) {
        for cell in row.split(',').skip(1) {
            let v: f64 = cell.parse().unwrap();
            assert!(v > 0.0, "curve value {v} in {row}");
        }
    }
}

#[test]
fn moments_pass_within_tolerance_and_fail_when_impossible() {
    let dir = std::env::temp_dir().join("pasipcs-moments");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.txt");
    std::fs::write(&cfg, "choice = gamma\nn_count = 4\nm = 0\n").unwrap();
    let ok = run(&["--config", cfg.to_str().unwrap(), "moments"]);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
    // An absurd tolerance must flip the exit status.
    let too_tight = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "moments",
        "--tol",
        "1e-15",
    ]);
    assert!(!too_tight.status.success());
}

#[test]
fn json_format_is_valid() {
    let out = run(&["spectrum", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["meta"]["command"], "spectrum");
    assert_eq!(doc["columns"][0], "n");
}

#[test]
fn coeffs_cross_check_columns() {
    let out = run(&["coeffs", "--m", "0,1", "--choice", "gamma"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .contains("raw_vs_closed_rel"));
    for row in text.lines().skip(2) {
        let dev: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
        assert!(dev <= 1e-10);
    }
}

#[test]
fn output_file_flag_writes_table() {
    let dir = std::env::temp_dir().join("pasipcs-outfile");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let out = run(&["spectrum", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("# {"));
}
