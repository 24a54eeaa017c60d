//! End-to-end tests of the binary: exit codes, output contracts, formats.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spinsqueeze"))
}

fn workspace_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn spinsqueeze")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 stdout")
}

fn temp_config(content: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    file.write_all(content.as_bytes())
        .expect("write temp config");
    file.flush().expect("flush temp config");
    file
}

#[test]
fn unknown_flag_exits_2() {
    let out = run(&["--definitely-not-a-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_formula_exits_2() {
    let out = run(&["optimize", "--formula", "nope", "--depth", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("unknown squeezing formula"),
        "stderr: {stderr}"
    );
}

#[test]
fn empty_grid_exits_2() {
    let cfg = temp_config(
        r#"{"waist_um": 20.0, "length_cm": 1.0, "density_per_cm3": 1.0e10,
            "power_uw": 1.0, "grid": {"start_mhz": 0.0, "stop_mhz": 1.0, "points": 0}}"#,
    );
    let out = run(&["spectrum", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("grid"), "stderr: {stderr}");
}

#[test]
fn empty_sweep_exits_2() {
    let out = run(&[
        "sweep",
        "--formula",
        "cycling",
        "--d-min",
        "1",
        "--d-max",
        "10",
        "--points",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn small_angle_violation_exits_1() {
    // An amplitude-modulated probe of 1e9 atoms at 150 MHz detuning
    // accumulates hundreds of radians of carrier phase.
    let cfg = temp_config(
        r#"{"scheme": "am", "waist_um": 50.0, "n_atoms": 1.0e9,
            "n_photons": 1.0e8, "detuning_mhz": 150.0}"#,
    );
    let out = run(&["squeeze", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("small-angle"), "stderr: {stderr}");
}

#[test]
fn inconsistent_density_exits_2() {
    let cfg = temp_config(
        r#"{"scheme": "mz1", "waist_um": 50.0, "n_atoms": 1.0e6,
            "n_photons": 1.0e8, "detuning_mhz": 150.0,
            "length_cm": 1.0, "density_per_cm3": 1.0e10}"#,
    );
    let out = run(&["squeeze", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("disagrees"), "stderr: {stderr}");
}

#[test]
fn spectrum_marks_poles_and_reports_zero_crossing() {
    // A single grid point exactly on the 4 -> 4' component.
    let cfg = temp_config(
        r#"{"waist_um": 20.0, "length_cm": 1.0, "density_per_cm3": 1.0e10,
            "power_uw": 1.0,
            "grid": {"start_mhz": -4012.475885, "stop_mhz": -4012.475885, "points": 1}}"#,
    );
    let stdout = run_ok(&["spectrum", "--config", cfg.path().to_str().unwrap()]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "# spinsqueeze spectrum");
    assert!(
        lines[1].starts_with("# zero_index_freq_mhz_rel = "),
        "missing zero-crossing header: {}",
        lines[1]
    );
    assert_eq!(lines[2], "freq_mhz_rel,n_refractive,light_shift_hz");
    assert_eq!(lines[3], "-4012.475885,pole,pole");
}

#[test]
fn spectrum_ndjson_has_header_and_rows() {
    let cfg = temp_config(
        r#"{"waist_um": 20.0, "length_cm": 1.0, "density_per_cm3": 1.0e10,
            "power_uw": 1.0,
            "grid": {"start_mhz": -7000.0, "stop_mhz": 7000.0, "points": 3}}"#,
    );
    let stdout = run_ok(&[
        "spectrum",
        "--config",
        cfg.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 4);
    let header: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert!(header["zero_index_freq_mhz_rel"].is_f64());
    for line in &lines[1..] {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(row["freq_mhz_rel"].is_f64());
        assert!(row["n_refractive"].is_f64());
        assert!(row["light_shift_hz"].is_f64());
    }
}

#[test]
fn sweep_ndjson_rows_parse() {
    let stdout = run_ok(&[
        "sweep",
        "--formula",
        "cycling",
        "--d-min",
        "10",
        "--d-max",
        "100",
        "--points",
        "3",
        "--format",
        "json",
    ]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 3);
    for line in lines {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(row["d"].is_f64());
        assert!(row["eta_opt"].is_f64());
        assert!(row["xi_squared_min"].is_f64());
        assert!(row["xi_squared_asymptote"].is_f64());
    }
}

#[test]
fn sweep_csv_leaves_missing_asymptote_blank() {
    let stdout = run_ok(&[
        "sweep",
        "--formula",
        "two-colour-d1",
        "--d-min",
        "10",
        "--d-max",
        "100",
        "--points",
        "2",
    ]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[1], "d,eta_opt,xi2_min,xi2_asymptote");
    assert!(
        lines[2].ends_with(','),
        "expected blank asymptote: {}",
        lines[2]
    );
}

#[test]
fn optimize_emits_single_line_json() {
    let stdout = run_ok(&["optimize", "--formula", "cycling", "--depth", "100"]);
    assert_eq!(stdout.lines().count(), 1);
    let report: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(report["formula"], "cycling");
    assert_eq!(report["depth"], 100.0);
}

#[test]
fn squeeze_scheme_and_formula_overrides() {
    let scenario = workspace_file("scenarios/single_probe.json");
    let stdout = run_ok(&[
        "squeeze",
        "--config",
        scenario.to_str().unwrap(),
        "--formula",
        "cycling",
    ]);
    let report: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(report["scheme"], "mz1");
    assert_eq!(report["formula"], "cycling");

    let stdout = run_ok(&[
        "squeeze",
        "--config",
        scenario.to_str().unwrap(),
        "--scheme",
        "mz2",
    ]);
    let report: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(report["scheme"], "mz2");
    assert_eq!(report["formula"], "two-colour-d1");
}

#[test]
fn squeeze_writes_out_file() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out_path = dir.path().join("report.json");
    let scenario = workspace_file("scenarios/two_colour.json");
    run_ok(&[
        "squeeze",
        "--config",
        scenario.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&out_path).expect("out file");
    let report: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(report["scheme"], "mz2");
}

#[test]
fn oracle_check_passes_and_reports_all_rows() {
    let stdout = run_ok(&["oracle-check"]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 5);
    for line in lines {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(row["pass"], true, "failed check row: {row}");
    }
}
