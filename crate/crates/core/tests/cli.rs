//! Black-box tests of the installed binary: output schemas, determinism,
//! and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_relay-dmt"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn curve_csv_schema_and_values() {
    let out = run(&[
        "curve", "--config", "4,2,3", "--protocol", "full_duplex", "--r", "0:1:0.5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "protocol,M1,M2,M3,r,d");
    assert_eq!(lines[1], "full_duplex,4,2,3,0,6");
    assert_eq!(lines[2], "full_duplex,4,2,3,0.5,4");
    // The degrees-of-freedom endpoint r = 1 is appended to the half-open grid.
    assert_eq!(lines[3], "full_duplex,4,2,3,1,2");
}

#[test]
fn curve_json_includes_exact_breakpoints() {
    let out = run(&[
        "curve", "--config", "4,2,3", "--protocol", "fdf", "--a", "0.3", "--r", "0.25",
        "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let curves = doc["curves"].as_object().unwrap();
    let bps = curves["fdf_a0.3"]["breakpoints"].as_array().unwrap();
    // First breakpoint (0, 6) as rational pairs.
    assert_eq!(bps[0], serde_json::json!([0, 1, 6, 1]));
}

#[test]
fn sim_is_byte_deterministic() {
    let args = [
        "sim", "--config", "1,1,1", "--protocol", "ddf", "--r", "0.25", "--snr", "10:15:5",
        "--samples", "20000", "--seed", "3",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with(
        "protocol,M1,M2,M3,r,snr_db,rate_bits,n_samples,outages,p_hat,ci_low,ci_high,seed"
    ));
}

#[test]
fn bad_config_exits_2() {
    let out = run(&["curve", "--config", "0,1,1", "--protocol", "ddf", "--r", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["curve", "--config", "1,1,1", "--protocol", "fdf", "--r", "0.1"]);
    assert_eq!(out.status.code(), Some(2), "fdf without --a");
    let out = run(&["sim", "--config", "1,1,1", "--protocol", "ddf", "--r", "-1",
        "--snr", "10:20:5", "--samples", "1e5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn over_budget_sim_exits_3() {
    let out = run(&[
        "sim", "--config", "4,4,4", "--protocol", "ddf", "--r", "0.5", "--snr", "10:60:1",
        "--samples", "1e9", "--max-seconds", "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("budget"), "stderr: {err}");
}

#[test]
fn unwritable_output_exits_4() {
    let out = run(&[
        "curve", "--config", "1,1,1", "--protocol", "ddf", "--r", "0.1",
        "-o", "/nonexistent-dir/out.csv",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn reproduce_writes_curves_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["reproduce", "fig4", "--outdir", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    for name in ["fig4_full_duplex.csv", "fig4_ddf.csv", "fig4_vdf.csv"] {
        assert!(dir.path().join(name).exists(), "missing {name}");
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fig4_manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["figure"], "fig4");
    assert_eq!(manifest["grid_step"], 0.005);
    let checks = manifest["endpoint_checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["ok"] == true));

    // The environment variable supplies the default output directory.
    let dir2 = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["reproduce", "fig2"])
        .env("RELAY_DMT_OUTDIR", dir2.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir2.path().join("fig2_manifest.json").exists());
}

#[test]
fn compare_reports_ordering() {
    let out = run(&[
        "compare", "--config", "2,2,2", "--protocol", "full_duplex,fdf,vdf,ddf",
        "--a", "0.5", "--r", "0:1:0.1", "-o",
        Path::new(env!("CARGO_TARGET_TMPDIR")).join("compare.csv").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("holds: true"));
}
