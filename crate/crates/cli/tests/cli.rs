use std::process::{Command, Output};

fn powvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powvol"))
        .args(args)
        .output()
        .expect("failed to spawn powvol")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn price_atm_vanilla() {
    let out = powvol(&[
        "price", "--spot", "1", "--strike", "1", "--rate", "0", "--tau", "1", "--sigma", "0.15",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("price 0.0597853"), "stdout: {}", stdout(&out));
}

#[test]
fn price_json_has_full_precision() {
    let out = powvol(&[
        "price", "--spot", "1", "--strike", "1", "--tau", "1", "--sigma", "0.15", "--json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let price = value["price"].as_f64().unwrap();
    assert!((price - 0.059785288105789530598).abs() <= 1e-14, "price {price}");
}

#[test]
fn missing_sigma_is_usage_error() {
    let out = powvol(&["price", "--spot", "1", "--strike", "1", "--tau", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("sigma"), "stderr: {}", stderr(&out));
}

#[test]
fn invalid_sigma_is_usage_error() {
    let out = powvol(&[
        "price", "--spot", "1", "--strike", "1", "--tau", "1", "--sigma", "-0.2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("sigma"));
}

#[test]
fn iv_round_trip_recovers_sigma() {
    // Price at sigma = 0.15, then invert with the iterative check on.
    let price = {
        let out = powvol(&[
            "price", "--kind", "type1", "--alpha", "2", "--spot", "1", "--strike", "0.9",
            "--rate", "0.001", "--tau", "1", "--sigma", "0.15", "--json",
        ]);
        assert!(out.status.success());
        let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        value["price"].as_f64().unwrap()
    };
    let out = powvol(&[
        "iv", "--kind", "type1", "--alpha", "2", "--spot", "1", "--strike", "0.9",
        "--rate", "0.001", "--tau", "1", "--price", &format!("{price:.17}"),
        "--check-iterative", "--json",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["status"], "solved");
    let iterative = value["iterative_sigma"].as_f64().unwrap();
    assert!((iterative - 0.15).abs() <= 1e-8, "iterative {iterative}");
    // Closed form is an estimator, not exact: near but not equal to the truth.
    let sigma = value["sigma"].as_f64().unwrap();
    assert!((sigma - 0.15).abs() <= 0.01, "sigma {sigma}");
}

#[test]
fn iv_below_lower_bound_exits_three() {
    let out = powvol(&[
        "iv", "--alpha", "1", "--spot", "1", "--strike", "2", "--rate", "0", "--tau", "1",
        "--price", "0.0001",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("negative-discriminant"));
}

#[test]
fn corrado_miller_flag_forces_alpha_one() {
    let base = powvol(&[
        "iv", "--alpha", "1", "--spot", "1.05", "--strike", "1", "--rate", "0.01", "--tau",
        "0.5", "--price", "0.08", "--json",
    ]);
    let cm = powvol(&[
        "iv", "--alpha", "3", "--corrado-miller", "--spot", "1.05", "--strike", "1", "--rate",
        "0.01", "--tau", "0.5", "--price", "0.08", "--json",
    ]);
    assert!(base.status.success() && cm.status.success());
    assert_eq!(stdout(&base), stdout(&cm));
}

#[test]
fn simulate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = powvol(&[
            "simulate", "--reps", "4", "--alphas", "0.4,1.0,2.0", "--strikes", "0.9,1.0",
            "--seed", "11", "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "stderr: {}", stderr(&out));
        // The grid summary goes to stdout when --out is given.
        assert!(stdout(&out).contains("mean_sigma"));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, std::fs::read(&b).unwrap());
}

#[test]
fn simulate_json_round_trips() {
    let out = powvol(&[
        "simulate", "--reps", "2", "--alphas", "1.0", "--strikes", "1.0", "--kinds", "type2",
        "--json",
    ]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["kind"], "type2");
    assert_eq!(rows[0]["alpha"], 1.0);
}

#[test]
fn simulate_config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("study.cfg");
    std::fs::write(&cfg, "seed = 11\nreps = 4\nalphas = 0.4, 1.0, 2.0\nstrikes = 0.9, 1.0\n")
        .unwrap();
    let from_cfg = powvol(&["simulate", "--config", cfg.to_str().unwrap()]);
    let from_flags = powvol(&[
        "simulate", "--reps", "4", "--alphas", "0.4,1.0,2.0", "--strikes", "0.9,1.0", "--seed",
        "11",
    ]);
    assert!(from_cfg.status.success() && from_flags.status.success());
    assert_eq!(stdout(&from_cfg), stdout(&from_flags));

    // A flag wins over the file entry it duplicates.
    let overridden = powvol(&["simulate", "--config", cfg.to_str().unwrap(), "--seed", "12"]);
    assert!(overridden.status.success());
    assert_ne!(stdout(&overridden), stdout(&from_cfg));
}

#[test]
fn simulate_rejects_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    let out = powvol(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown_key"));
}
