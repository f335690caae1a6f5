//! End-to-end tests of the `pseudogas` binary: output contracts, config
//! merging, determinism, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn pseudogas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudogas"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn pseudogas_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut command = Command::new(env!("CARGO_BIN_EXE_pseudogas"));
    command.args(args);
    for (key, value) in env {
        command.env(key, value);
    }
    command.output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn polymer_row_carries_the_dimer_fraction() {
    let out = stdout_of(&pseudogas(&["polymer", "--eta", "0.01", "--j", "2"]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("eta,x_2"));
    let row = lines.next().unwrap();
    let x2: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((x2 / 0.025475476097874812 - 1.0).abs() < 1e-11);
    assert_eq!(lines.next(), None);
}

#[test]
fn pressure_at_zero_eta_is_exactly_classical() {
    let out = stdout_of(&pseudogas(&["pressure", "--eta", "0", "--ga", "1", "--stats", "bose"]));
    assert_eq!(
        out,
        "eta,pressure_ratio_first_order,pressure_ratio_exact\n\
         0.00000000000e0,1.00000000000e0,1.00000000000e0\n"
    );
}

#[test]
fn sweep_grid_contract() {
    let out = stdout_of(&pseudogas(&[
        "sweep", "--op", "polymer", "--axis", "eta", "--log", "--from", "1e-4", "--to", "1e-2",
        "--points", "9", "--j", "3",
    ]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[0], "eta,x_3");
    let etas: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(etas[0], 1e-4);
    assert_eq!(etas[8], 1e-2);
    assert!(etas.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn empty_sweep_emits_header_only() {
    let out = stdout_of(&pseudogas(&[
        "sweep", "--op", "fugacity", "--axis", "eta-sp", "--from", "0.1", "--to", "0.2",
        "--points", "0", "--stats", "bose",
    ]));
    assert_eq!(out, "eta_sp,z\n");
}

#[test]
fn json_format_shape() {
    let out = stdout_of(&pseudogas(&[
        "fugacity", "--eta-sp", "0.1", "--stats", "bose", "--format", "json", "--precision", "6",
    ]));
    assert!(out.starts_with("{\"axis\":{\"name\":\"eta_sp\",\"values\":[1.00000e-1]}"));
    assert!(out.contains("\"columns\":[{\"name\":\"z\",\"values\":["));
    assert!(out.ends_with("]}]}\n"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "lattice", "--box-l", "1.5e-9", "--mass", "6.6465e-27", "--t", "2.0", "--n-max", "2",
        "--n", "3", "--stats", "boltzmann", "--method", "sample", "--trials", "1000",
        "--seed", "42",
    ];
    let first = pseudogas(&args);
    let second = pseudogas(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let reseeded = pseudogas(&[
        "lattice", "--box-l", "1.5e-9", "--mass", "6.6465e-27", "--t", "2.0", "--n-max", "2",
        "--n", "3", "--stats", "boltzmann", "--method", "sample", "--trials", "1000",
        "--seed", "43",
    ]);
    assert_ne!(first.stdout, reseeded.stdout);
}

#[test]
fn worker_count_does_not_change_bytes() {
    let args = [
        "sweep", "--op", "pressure", "--axis", "eta", "--log", "--from", "1e-4", "--to", "1e-1",
        "--points", "25", "--ga", "2", "--stats", "fermi",
    ];
    let single = pseudogas_env(&args, &[("PSEUDOGAS_THREADS", "1")]);
    let multi = pseudogas_env(&args, &[("PSEUDOGAS_THREADS", "4")]);
    let odd = pseudogas_env(&args, &[("PSEUDOGAS_THREADS", "7")]);
    assert!(single.status.success());
    assert_eq!(single.stdout, multi.stdout);
    assert_eq!(single.stdout, odd.stdout);
}

#[test]
fn out_flag_writes_the_table_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = pseudogas(&[
        "polymer", "--eta", "0.01", "--j", "2", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("eta,x_2\n"));
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.conf");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn config_file_supplies_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(
        dir.path(),
        "# polymer run\neta = 0.01\nj = 2\nprecision = 6\n",
    );
    let from_config = stdout_of(&pseudogas(&["polymer", "--config", &path]));
    assert_eq!(from_config, "eta,x_2\n1.00000e-2,2.54755e-2\n");

    // a flag takes precedence over the config value
    let overridden = stdout_of(&pseudogas(&["polymer", "--config", &path, "--j", "3"]));
    assert!(overridden.starts_with("eta,x_3\n"));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), "eta = 0.01\nj = 2\nwavelength = 3\n");
    let out = pseudogas(&["polymer", "--config", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("wavelength"));
}

#[test]
fn exit_codes_for_failure_classes() {
    // invalid input
    assert_eq!(
        pseudogas(&["polymer", "--eta", "0.5", "--j", "2"]).status.code(),
        Some(2)
    );
    // unknown flag (parser error)
    assert_eq!(
        pseudogas(&["polymer", "--eta", "0.01", "--nope", "1"]).status.code(),
        Some(2)
    );
    // missing required parameter
    assert_eq!(pseudogas(&["polymer", "--j", "2"]).status.code(), Some(2));
    // numerical non-convergence: no Fermi fugacity below the bracket cap
    assert_eq!(
        pseudogas(&["fugacity", "--eta-sp", "500", "--stats", "fermi"]).status.code(),
        Some(3)
    );
    // budget exceeded
    assert_eq!(
        pseudogas(&[
            "lattice", "--box-l", "1e-9", "--mass", "6.6465e-27", "--t", "1.0", "--n-max", "25",
            "--n", "2", "--stats", "bose",
        ])
        .status
        .code(),
        Some(4)
    );
    assert_eq!(
        pseudogas(&[
            "lattice", "--box-l", "1.5e-9", "--mass", "6.6465e-27", "--t", "4.0", "--n-max", "20",
            "--n", "4", "--stats", "bose", "--method", "enumerate",
        ])
        .status
        .code(),
        Some(4)
    );
}

#[test]
fn spinpair_reports_suppression_at_zero_gap() {
    let out = stdout_of(&pseudogas(&[
        "spinpair", "--ga", "2", "--stats", "fermi", "--x2", "0.01",
    ]));
    let row = out.lines().nth(1).unwrap();
    let fields: Vec<f64> = row.split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(fields[1], 3.0); // g+
    assert_eq!(fields[2], 1.0); // g-
    assert!((fields[3] - 0.0025).abs() < 1e-15); // x2/4
}

#[test]
fn props_reports_the_reduced_state() {
    let out = stdout_of(&pseudogas(&[
        "props", "--n", "2.6868e25", "--v", "1", "--t", "300", "--m", "6.6465e-27",
        "--stats", "bose",
    ]));
    let row = out.lines().nth(1).unwrap();
    let eta: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((eta / 3.4358746060792691e-6 - 1.0).abs() < 1e-11);
}

#[test]
fn printed_numbers_reparse_within_precision() {
    let out = stdout_of(&pseudogas(&[
        "sweep", "--op", "fugacity", "--axis", "eta-sp", "--log", "--from", "1e-6", "--to",
        "0.5", "--points", "12", "--stats", "bose",
    ]));
    for line in out.lines().skip(1) {
        let z: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        // reparsed value must be representable at 12 significant digits
        assert!(z > 0.0 && z < 1.0);
        let reprinted = format!("{z:.11e}");
        let back: f64 = reprinted.parse().unwrap();
        assert!((back - z).abs() <= 1e-11 * z);
    }
}
