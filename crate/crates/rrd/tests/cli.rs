use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const CONFIG: &str = r#"
horizon = 300.0
delta = 0.1
k_list = [0, 1]
replicates = 3
base_seed = 11

[interarrival]
family = "beta1"
theta = 3.0

[[jumps]]
kind = "uniform"
lo = -2.0
hi = 2.0
weight = 0.5

[[jumps]]
kind = "laplace"
loc = 1.0
scale = 0.5
weight = 0.5
"#;

fn rrd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rrd"))
        .args(args)
        .output()
        .unwrap()
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("cfg.toml");
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn simulate_then_estimate() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), CONFIG);
    let out = tmp.path().join("out");
    let out_s = out.to_string_lossy();

    let sim = rrd(&["simulate", "--config", &cfg, "--out", &out_s]);
    assert!(
        sim.status.success(),
        "{}",
        String::from_utf8_lossy(&sim.stderr)
    );
    let inc = fs::read_to_string(out.join("increments.csv")).unwrap();
    assert!(inc.starts_with("i,increment\n1,"));
    assert_eq!(inc.lines().count(), 3001);

    let sim = rrd(&[
        "simulate", "--config", &cfg, "--out", &out_s, "--kind", "path",
    ]);
    assert!(sim.status.success());
    assert!(fs::read_to_string(out.join("path.csv"))
        .unwrap()
        .starts_with("t,jump\n"));

    let input = out.join("increments.csv");
    let est = rrd(&[
        "estimate",
        "--config",
        &cfg,
        "--out",
        &out_s,
        "--input",
        &input.to_string_lossy(),
        "--k",
        "1",
    ]);
    assert!(
        est.status.success(),
        "{}",
        String::from_utf8_lossy(&est.stderr)
    );
    let body = fs::read_to_string(out.join("estimate_k1.csv")).unwrap();
    assert!(body.starts_with("x,value\n-10,"));
    assert_eq!(body.lines().count(), 2002);
}

#[test]
fn coeffs_table() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), CONFIG);
    let out = rrd(&["coeffs", "--config", &cfg, "--k", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,p,l"));
    let first: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();
    assert!((first[1] - 0.8527).abs() < 0.003);
    assert!((first[2] - (2.0 - first[1])).abs() < 1e-12);
    let third = lines.nth(1).unwrap();
    assert!(third.starts_with("3,") && third.ends_with(','), "{third}");
}

#[test]
fn experiment_writes_report() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), CONFIG);
    let out = tmp.path().join("exp");
    let run = rrd(&[
        "experiment",
        "--config",
        &cfg,
        "--out",
        &out.to_string_lossy(),
        "--replicates",
        "2",
        "--seed",
        "5",
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let report = fs::read_to_string(out.join("report.csv")).unwrap();
    assert_eq!(String::from_utf8(run.stdout).unwrap(), report);
    assert!(report.starts_with("estimator,mean_l2,std_l2,n_ok,n_failed,kappa\noracle,"));
    for name in [
        "replicates.csv",
        "pm_table.csv",
        "estimates_naive.csv",
        "overlay.svg",
        "config.toml",
        "summary.txt",
    ] {
        assert!(out.join(name).exists(), "{name}");
    }
    let echoed = fs::read_to_string(out.join("config.toml")).unwrap();
    assert!(echoed.contains("replicates = 2") && echoed.contains("base_seed = 5"));
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(rrd(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(rrd(&["experiment"]).status.code(), Some(1));
    assert_eq!(rrd(&["--help"]).status.code(), Some(0));

    let missing = tmp.path().join("nope.toml");
    assert_eq!(
        rrd(&["coeffs", "--config", &missing.to_string_lossy()])
            .status
            .code(),
        Some(1)
    );

    let bad = write_config(tmp.path(), &CONFIG.replace("delta = 0.1", "delta = -0.1"));
    let out = rrd(&["experiment", "--config", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("delta"));

    // a valid config whose input file does not exist fails at run time
    let good = write_config(tmp.path(), CONFIG);
    let out = rrd(&[
        "estimate",
        "--config",
        &good,
        "--input",
        &missing.to_string_lossy(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
