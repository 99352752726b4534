//! End-to-end checks of the command-line interface: config-file runs, flag
//! overrides, exit codes, worker resolution, and byte-stable CSV bodies.

use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zetapprox"))
}

fn read(path: impl AsRef<Path>) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn config_file_run_produces_count_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("run.toml");
    fs::write(
        &config_path,
        format!(
            r#"
[model]
preset = "zeta"
n = 3

[command]
name = "count"
a = "2+0i"
t = 120.0
u = 10.0
sigma_left = -2.0
sigma_right = 3.0

[output]
dir = "{}"
"#,
            dir.path().join("out").display()
        ),
    )
    .unwrap();
    let status = bin().arg("run").arg(&config_path).status().unwrap();
    assert!(status.success());
    let csv = read(dir.path().join("out/count.csv"));
    assert!(csv.starts_with("sigmaLeft,sigmaRight,tBottom,tTop,a,winding,predicted,discrepancy\n"));
    let manifest: serde_json::Value =
        serde_json::from_str(&read(dir.path().join("out/manifest.json"))).unwrap();
    assert_eq!(manifest["command"], "count");
    assert_eq!(manifest["workers"], 1);
    // The echoed config reparses to the same document.
    let echoed = toml::to_string_pretty(&manifest["config"]).unwrap();
    assert!(echoed.contains("name = \"count\""));
}

#[test]
fn malformed_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("bad.toml");
    fs::write(&config_path, "[command]\nname = \"count\"\nwhat = 1\n").unwrap();
    let output = bin().arg("run").arg(&config_path).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("config"), "{stderr}");
}

#[test]
fn invalid_inline_model_exits_one_naming_exponents() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("bad_model.toml");
    fs::write(
        &config_path,
        r#"
[model]
coefficients = ["1+0i", "1+0i", "1+0i"]
exponents = [1.0, 0.5, 3.0]
lambda = 1.0
delta = 1.0
omega = [{ alpha = 0.5, beta = 0.0 }]

[command]
name = "count"
"#,
    )
    .unwrap();
    let output = bin().arg("run").arg(&config_path).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("exponents"));
}

#[test]
fn failed_verification_exits_five() {
    let dir = tempfile::tempdir().unwrap();
    // Clustering at this window cannot reach a 10% outside fraction; the
    // verification completes and reports failure.
    let output = bin()
        .args(["verify", "cluster", "-T", "1000", "-U", "30", "--epsilon", "0.05"])
        .arg("--out-dir")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(5), "{output:?}");
}

#[test]
fn verify_rerun_with_one_worker_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for round in 0..2 {
        let out = dir.path().join(format!("round{round}"));
        let status = bin()
            .args(["verify", "strip", "--workers", "1"])
            .arg("--out-dir")
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        bodies.push((read(out.join("strip.csv")), read(out.join("verify_strip.csv"))));
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn workers_env_var_is_honored_and_flag_wins() {
    let dir = tempfile::tempdir().unwrap();
    let out_env = dir.path().join("env");
    let status = bin()
        .args(["scan-line", "-a", "0+0i", "-T", "500", "-U", "20"])
        .arg("--out-dir")
        .arg(&out_env)
        .env("ZETAPPROX_WORKERS", "3")
        .status()
        .unwrap();
    assert!(status.success());
    let manifest: serde_json::Value =
        serde_json::from_str(&read(out_env.join("manifest.json"))).unwrap();
    assert_eq!(manifest["workers"], 3);

    let out_flag = dir.path().join("flag");
    let status = bin()
        .args(["scan-line", "-a", "0+0i", "-T", "500", "-U", "20", "--workers", "2"])
        .arg("--out-dir")
        .arg(&out_flag)
        .env("ZETAPPROX_WORKERS", "3")
        .status()
        .unwrap();
    assert!(status.success());
    let manifest: serde_json::Value =
        serde_json::from_str(&read(out_flag.join("manifest.json"))).unwrap();
    assert_eq!(manifest["workers"], 2);

    // Scan bodies agree across worker counts as well.
    assert_eq!(
        read(out_env.join("scan_line.csv")),
        read(out_flag.join("scan_line.csv"))
    );
}

#[test]
fn scan_line_census_marks_candidates() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let status = bin()
        .args(["scan-line", "-a", "2+0i", "-T", "1000", "-U", "50"])
        .arg("--out-dir")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let csv = read(out.join("scan_line.csv"));
    assert!(csv.starts_with("t,Z,kind,residual\n"));
    assert!(csv.contains(",candidate,"));
    assert!(!csv.contains(",hit,"));
}
