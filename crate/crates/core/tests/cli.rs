use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_eprsteer"));
    c.env_remove("EPRSTEER_OUT_DIR");
    c
}

fn stdout(args: &[&str]) -> String {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn teleport_prints_certified() {
    assert!(stdout(&["teleport"]).contains("certified: true, S3=0.000"));
    let out = stdout(&["teleport", "--eta-b", "0.3"]);
    assert!(out.contains("certified: false"), "{out}");
}

#[test]
fn verdicts_do_not_change_exit_status() {
    let out = stdout(&["steer", "--p-s", "0.3", "--eta-b", "0.2"]);
    assert!(out.contains("no violation"));
}

#[test]
fn usage_errors_are_nonzero() {
    assert!(!bin().arg("nonsense").status().unwrap().success());
    assert!(!bin().args(["steer", "--bogus"]).status().unwrap().success());
    let out = bin().args(["steer", "--eta-b", "1.5"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("efficiency.eta_b"));
}

#[test]
fn sweep_flips_at_one_third() {
    let out = stdout(&[
        "sweep", "--param", "eta_b", "--start", "0", "--stop", "1", "--step", "0.01",
    ]);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(
        rows[0],
        "kind,eta_a,eta_b,p_s,S3,S2,wittmann_S,wittmann_bound,steering_3,steering_2,wittmann"
    );
    let verdict = |i: usize| rows[i + 1].split(',').nth(8).unwrap().to_string();
    assert_eq!(verdict(33), "false");
    assert_eq!(verdict(34), "true");
    assert!(rows
        .last()
        .unwrap()
        .starts_with("threshold:eta_b,,,,0.33333"));
}

#[test]
fn empty_grid_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.toml");
    std::fs::write(&cfg, "[sweep]\nparameter = \"eta_b\"\nvalues = []\n").unwrap();
    let out = bin()
        .args(["--config", cfg.to_str().unwrap(), "sweep"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep"));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.toml");
    std::fs::write(&cfg, "[efficiency]\neta_a = 1.0\neta_b = 0.2\n").unwrap();
    let path = cfg.to_str().unwrap();
    let from_file = stdout(&["--config", path, "--format", "record", "steer"]);
    let v: serde_json::Value = serde_json::from_str(&from_file).unwrap();
    assert_eq!(v["eta_b"], 0.2);
    let overridden = stdout(&[
        "--config", path, "--format", "record", "steer", "--eta-b", "0.6",
    ]);
    let v: serde_json::Value = serde_json::from_str(&overridden).unwrap();
    assert_eq!(v["eta_b"], 0.6);
    assert!((v["three_setting"]["S3"].as_f64().unwrap() - 0.6).abs() < 1e-12);
}

#[test]
fn bounds_and_monogamy() {
    assert!(stdout(&["bounds", "--set", "orthogonal3"]).contains("C_3 = 0.57735"));
    let out = stdout(&[
        "--format", "record", "monogamy", "--random", "10000", "--seed", "7",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["min_slack"].as_f64().unwrap() >= -1e-9);
    assert_eq!(v["violations"], 0);
}

#[test]
fn mc_round_trip_through_env_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .env("EPRSTEER_OUT_DIR", dir.path())
        .args([
            "mc-sample",
            "--trials",
            "20000",
            "--seed",
            "1",
            "--eta-b",
            "0.6",
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let records = dir.path().join("records.csv");
    let text = std::fs::read_to_string(&records).unwrap();
    assert!(text.starts_with("trial,setting_a,setting_b,outcome_a,outcome_b\n"));
    assert_eq!(text.lines().count(), 20_001);
    let meta: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("records.csv.meta.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(meta["seed"], 1);
    assert!(meta["generator"].as_str().unwrap().starts_with("chacha20"));

    let out = stdout(&[
        "--format",
        "record",
        "mc-estimate",
        records.to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["records_consumed"], 20_000);
    let s3 = &v["S3"];
    let (val, se) = (
        s3["value"].as_f64().unwrap(),
        s3["standard_error"].as_f64().unwrap(),
    );
    assert!((val - 0.6).abs() < 5.0 * se);
}
