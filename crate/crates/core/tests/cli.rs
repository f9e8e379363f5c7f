use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_barrier-rhs"))
        .args(args)
        .env("BARRIER_RHS_THREADS", "1")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coefficients_csv_layout() {
    let o = run(&["--k-count", "16", "coeffs"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    let meta = lines.next().unwrap();
    assert!(meta.starts_with("# ") && meta.contains("v0=10") && meta.contains("quantity="));
    let header: Vec<_> = lines.next().unwrap().split(',').collect();
    assert_eq!(header[..3], ["k", "e", "t_re"]);
    assert_eq!(lines.count(), 16);
}

#[test]
fn free_barrier_transmits_everything() {
    let o = run(&["--v0", "0", "--k-count", "20", "--format", "json", "coeffs"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    for r in rows {
        assert!((r["t2"].as_f64().unwrap() - 1.0).abs() < 1e-14);
    }
}

#[test]
fn config_file_and_flags() {
    let path = std::env::temp_dir().join(format!("barrier-rhs-cli-{}.conf", std::process::id()));
    std::fs::write(&path, "# barrier\nv0 = 4\nb = 2\nk_count = 16\n").unwrap();
    let o = run(&["--config", path.to_str().unwrap(), "--b", "3", "coeffs"]);
    let bad = run(&["--config", path.to_str().unwrap(), "--a", "5", "coeffs"]);
    std::fs::write(&path, "colour = blue\n").unwrap();
    let unknown = run(&["--config", path.to_str().unwrap(), "coeffs"]);
    std::fs::remove_file(&path).unwrap();
    assert!(o.status.success());
    let meta = stdout(&o).lines().next().unwrap().to_string();
    assert!(meta.contains("v0=4") && meta.contains("b=3"), "{meta}");
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["--x-count", "8", "coeffs"]).status.code(), Some(2));
    assert_eq!(run(&["--v0", "-1", "coeffs"]).status.code(), Some(2));
    assert_eq!(run(&["green", "--energy", "3"]).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_barrier-rhs"))
        .arg("coeffs")
        .env("BARRIER_RHS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports_and_fails_on_fault() {
    let o = run(&["--format", "json", "verify", "--suite", "coeffs"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
    assert!(checks.iter().any(|c| c["name"] == "unitarity_left"));
    assert!(!checks.iter().any(|c| c["name"] == "parseval"));

    let o = run(&["verify", "--suite", "coeffs", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("unitarity_left"));

    let o = run(&[
        "--tol-override",
        "unitarity_left=1e-3",
        "verify",
        "--suite",
        "coeffs",
        "--inject-fault",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!String::from_utf8(o.stderr).unwrap().contains("unitarity_left,"));
    assert_eq!(
        run(&["--tol-override", "nonsense=1", "verify", "--suite", "coeffs"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn measure_suite_only() {
    let o = run(&["verify", "--suite", "measure"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let names: Vec<_> = text.lines().skip(2).map(|l| l.split(',').next().unwrap()).collect();
    assert!(!names.is_empty());
    assert!(names.iter().all(|n| n.starts_with("measure_")), "{names:?}");
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("barrier-rhs-out-{}.csv", std::process::id()));
    let o = run(&[
        "--x-count",
        "16",
        "--out",
        path.to_str().unwrap(),
        "eigen",
        "--energy",
        "4",
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().nth(1), Some("x,re,im,abs"));
    assert_eq!(text.lines().count(), 18);
}

#[test]
fn transform_round_trip_in_meta() {
    let o = run(&["transform", "--center", "-4", "--width", "0.8", "--momentum", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let meta = text.lines().next().unwrap();
    let err: f64 = meta
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix("round_trip_error="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(err < 1e-6);
}
