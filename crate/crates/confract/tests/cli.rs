//! End-to-end checks of the `confract` binary: artifact shapes, the CSV
//! ingestion round trip, and error reporting beyond the acceptance
//! contract.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_confract"))
}

fn run_ok(args: &[&str]) -> String {
    let output = bin().args(args).output().unwrap();
    assert!(
        output.status.code() == Some(0),
        "command {:?} exited {:?}: {}",
        args,
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).unwrap()
}

#[test]
fn transform_csv_has_schema_and_values() {
    let out = run_ok(&["transform", "--f", "1", "--alpha", "0.3", "--s", "1,4,4"]);
    assert!(out.starts_with("# confract-transform v1"));
    assert!(out.contains("s,Re,Im"));
    // L{1}(2) = 1/2 on the second grid row
    let row: Vec<&str> = out
        .lines()
        .find(|l| l.starts_with("2."))
        .expect("s = 2 row")
        .split(',')
        .collect();
    let re: f64 = row[1].parse().unwrap();
    assert!((re - 0.5).abs() < 1e-8, "L{{1}}(2) = {re}");
}

#[test]
fn invert_partial_fractions_example() {
    let out = run_ok(&[
        "invert",
        "--rational",
        "1/(s*(s+1))",
        "--alpha",
        "1",
        "--t",
        "1",
    ]);
    let value: f64 = out
        .lines()
        .last()
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    let expected = 1.0 - (-1.0f64).exp();
    assert!(
        (value - expected).abs() < 1e-9,
        "got {value}, want {expected}"
    );
}

#[test]
fn invert_methods_agree() {
    let t = "0.5,2.0,4";
    let residues = run_ok(&[
        "invert",
        "--rational",
        "1/(s+1)",
        "--alpha",
        "0.5",
        "--t",
        t,
    ]);
    let bromwich = run_ok(&[
        "invert",
        "--rational",
        "1/(s+1)",
        "--alpha",
        "0.5",
        "--t",
        t,
        "--method",
        "bromwich",
    ]);
    let table = run_ok(&[
        "invert",
        "--rational",
        "1/(s+1)",
        "--alpha",
        "0.5",
        "--t",
        t,
        "--method",
        "pair-table",
    ]);
    let parse = |text: &str| -> Vec<f64> {
        text.lines()
            .filter(|l| !l.starts_with('#') && !l.starts_with("t,"))
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect()
    };
    let (r, b, p) = (parse(&residues), parse(&bromwich), parse(&table));
    for i in 0..r.len() {
        assert!((r[i] - b[i]).abs() < 1e-5 * (1.0 + r[i].abs()));
        assert!((r[i] - p[i]).abs() < 1e-12 * (1.0 + r[i].abs()));
    }
}

#[test]
fn convolve_matches_closed_form() {
    // 1 *_α 1 = t^α/α
    let out = run_ok(&[
        "convolve", "--f", "1", "--g", "1", "--alpha", "0.5", "--t", "4",
    ]);
    let value: f64 = out
        .lines()
        .last()
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 4.0).abs() < 1e-8, "got {value}");
}

#[test]
fn solve_dirichlet_example_value() {
    let out = run_ok(&[
        "solve",
        "--problem",
        "dirichlet-sine",
        "--alpha",
        "0.5",
        "--x-nodes",
        "5",
        "--t",
        "0,1",
    ]);
    // row x = π/2, t = 1: u = e^{-2}
    let target = std::f64::consts::FRAC_PI_2;
    let mut found = false;
    for line in out
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("x,"))
    {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        if (cols[0] - target).abs() < 1e-12 && (cols[1] - 1.0).abs() < 1e-12 {
            assert!(
                (cols[2] - (-2.0f64).exp()).abs() < 1e-12,
                "u(π/2, 1) = {}, want e^-2",
                cols[2]
            );
            found = true;
        }
    }
    assert!(found, "grid row (π/2, 1) missing:\n{out}");
}

#[test]
fn solve_from_csv_round_trips_byte_identically() {
    let dir = std::env::temp_dir();
    let first = dir.join("confract-cli-field.csv");
    let second = dir.join("confract-cli-field-2.csv");
    run_ok(&[
        "solve",
        "--problem",
        "finite-mixed",
        "--alpha",
        "0.7",
        "--kappa",
        "0.8",
        "--length",
        "2",
        "--boundary-level",
        "1.5",
        "--x-nodes",
        "7",
        "--t",
        "0.1,1.5,6",
        "--out",
        first.to_str().unwrap(),
    ]);
    run_ok(&[
        "solve",
        "--from-csv",
        first.to_str().unwrap(),
        "--out",
        second.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap(),
        "CSV ingestion must reproduce the artifact byte for byte"
    );
}

#[test]
fn solve_json_format() {
    let out = run_ok(&[
        "solve",
        "--problem",
        "first-order",
        "--alpha",
        "0.5",
        "--x",
        "0,2,3",
        "--t",
        "0,1,3",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["problem"]["problem"], "first-order");
    assert_eq!(doc["x_grid"].as_array().unwrap().len(), 3);
    assert_eq!(doc["values"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_report_shape_and_seed() {
    let out = run_ok(&["verify", "--suite", "inverse", "--seed", "11"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["suite"], "inverse");
    assert_eq!(doc["seed"], 11);
    assert_eq!(doc["pass"], true);
    let checks = doc["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["name", "lhs", "rhs", "abs_err", "rel_err", "pass"] {
            assert!(c.get(key).is_some(), "check record lacks {key}");
        }
    }
}

#[test]
fn table_prints_families_and_normalization_note() {
    let out = run_ok(&["table", "--alpha", "0.5"]);
    for needle in ["1/s", "1/(s+2)", "1/(s-1.5)", "classical normalization"] {
        assert!(
            out.contains(needle),
            "table output missing {needle}:\n{out}"
        );
    }
}

#[test]
fn unknown_identifier_diagnostic() {
    let output = bin()
        .args(["transform", "--f", "tan(t)", "--alpha", "0.5", "--s", "2"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("unknown identifier"));
    assert!(
        stderr.contains("sqrt"),
        "vocabulary should be listed: {stderr}"
    );
}

#[test]
fn invert_triple_pole_closed_form() {
    // L⁻¹{1/s³} = u²/2 at u = t^α/α
    let out = run_ok(&[
        "invert",
        "--rational",
        "1/s^3",
        "--alpha",
        "0.5",
        "--t",
        "2",
    ]);
    let value: f64 = out
        .lines()
        .last()
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    let u = 2.0f64.sqrt() * 2.0;
    assert!((value - u * u / 2.0).abs() < 1e-9, "got {value}");
}

#[test]
fn log_env_var_controls_verbosity() {
    let quiet = bin()
        .env("CONFRACT_LOG", "quiet")
        .args(["table"])
        .output()
        .unwrap();
    assert!(quiet.status.success());
    assert!(quiet.stderr.is_empty(), "quiet mode must not log");
    let info = bin()
        .env("CONFRACT_LOG", "info")
        .args(["table"])
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&info.stderr).contains("dispatching table"));
}

#[test]
fn improper_rational_rejected() {
    let output = bin()
        .args([
            "invert",
            "--rational",
            "(s^2+1)/(s+1)",
            "--alpha",
            "1",
            "--t",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
}
