use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn relaysim(args: &[&str], config: &Path, out: &Path) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_relaysim"));
    cmd.arg(args[0])
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .args(&args[1..]);
    cmd.output().expect("binary runs")
}

fn setup(config: &str) -> (TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    fs::write(&path, config).unwrap();
    (dir, path)
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn fringe_spans_two_periods() {
    let (dir, cfg) = setup("dark1 = 0\ndark2 = 0\ndark3 = 0\n");
    let out = dir.path().join("fringe.csv");
    let o = relaysim(&["fringe"], &cfg, &out);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["phi_rad", "p123", "c_raw", "c_net"]);
    assert_eq!(rows.len(), 400);
    let p = column(&rows, 1);
    assert_eq!(p[0], 0.0);
    assert!(p.iter().all(|&x| (0.0..=1.0).contains(&x)));
    // peaks at π and 3π, troughs at 0 and 2π
    for (i, want) in [(100, 1.0), (200, 0.0), (300, 1.0)] {
        assert!((p[i] - want).abs() < 1e-12, "p123[{i}] = {}", p[i]);
    }
    let phi = column(&rows, 0);
    assert!(phi[399] < 4.0 * std::f64::consts::PI);
}

#[test]
fn sweep_rows_match_grid_and_visibility_falls_with_p1() {
    let (dir, cfg) = setup("");
    let out = dir.path().join("sweep.csv");
    let o = relaysim(
        &[
            "sweep",
            "--grid",
            "p1=0.01:0.03:3",
            "--grid",
            "l1=0.02:0.02:1",
        ],
        &cfg,
        &out,
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let (header, rows) = read_csv(&out);
    assert_eq!(header.len(), 14);
    assert_eq!(rows.len(), 3);
    let v_ent = column(&rows, header.iter().position(|h| h == "net_v_ent").unwrap());
    assert!(v_ent[0] > v_ent[1] && v_ent[1] > v_ent[2], "{v_ent:?}");
    assert!(rows.iter().all(|r| r[13] == "ok"));

    let out = dir.path().join("grid.csv");
    let o = relaysim(
        &["sweep", "--grid", "p1=0.01:0.05:4", "l1=0.01:0.02:5"],
        &cfg,
        &out,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_csv(&out).1.len(), 20);
}

#[test]
fn scan_theta_follows_cos_squared() {
    let (dir, cfg) = setup("overlap = 1\n");
    let out = dir.path().join("theta.csv");
    let o = relaysim(&["scan-theta", "--grid", "theta=0:pi:3"], &cfg, &out);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = read_csv(&out);
    let raw = column(&rows, 1);
    assert_eq!(rows.len(), 3);
    assert!(raw[0] > raw[1] && (raw[0] - raw[2]).abs() < 1e-15 * raw[0].max(1.0));
}

#[test]
fn budget_with_fit_calibration_reaches_quoted_endpoints() {
    let (dir, cfg) = setup("kappa_mode = fit350\npump_mw = 350\n");
    let out = dir.path().join("budget.csv");
    assert_eq!(relaysim(&["budget"], &cfg, &out).status.code(), Some(0));
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["stage_label", "rate_per_window"]);
    let labels: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(
        labels,
        [
            "laser_input",
            "dfg_conversion",
            "raman_filtering",
            "intensity_modulator"
        ]
    );
    assert_eq!(column(&rows, 1), [0.8, 0.72, 0.2, 0.1]);
}

#[test]
fn outputs_are_deterministic() {
    let (dir, cfg) = setup("trials = 200000\n");
    for args in [
        vec!["oracle-check", "--seed", "5"],
        vec!["sweep", "--grid", "p1=0.01:0.02:4"],
    ] {
        let a = dir.path().join("a.csv");
        let b = dir.path().join("b.csv");
        assert_eq!(relaysim(&args, &cfg, &a).status.code(), Some(0));
        assert_eq!(relaysim(&args, &cfg, &b).status.code(), Some(0));
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{args:?}");
    }
}

#[test]
fn oracle_check_at_defaults_passes() {
    let (dir, cfg) = setup("");
    let out = dir.path().join("oracle.csv");
    let o = relaysim(&["oracle-check", "--seed", "42"], &cfg, &out);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["regime", "analytic", "estimate", "std_err", "z"]);
    assert_eq!(rows[0][0], "distinguishable");
    assert_eq!(rows[1][0], "indistinguishable");
}

#[test]
fn starved_oracle_exits_with_verification_failure() {
    // one trial per stratum sees no coincidences, so nonzero analytic rates
    // sit infinitely many standard errors away
    let (dir, cfg) = setup("trials = 9\n");
    let out = dir.path().join("oracle.csv");
    let o = relaysim(&["oracle-check"], &cfg, &out);
    assert_eq!(o.status.code(), Some(2));
    assert!(out.exists());
}

#[test]
fn input_errors_exit_one() {
    let (dir, good) = setup("");
    let out = dir.path().join("x.csv");
    for (config, args) in [
        ("eta = 1.5\n", vec!["fringe"]),
        ("bogus = 1\n", vec!["fringe"]),
        ("p1 = zero\n", vec!["sweep"]),
        ("", vec!["sweep", "--grid", "p1=0.03:0.01:3"]),
        ("", vec!["sweep", "--grid", "phi=0:1:2"]),
        ("", vec!["budget", "--grid", "p1=0:0.1:2"]),
        ("", vec!["plot"]),
    ] {
        let path = dir.path().join("bad.cfg");
        fs::write(&path, config).unwrap();
        let o = relaysim(&args, &path, &out);
        assert_eq!(o.status.code(), Some(1), "{config:?} {args:?}");
        assert!(!o.stderr.is_empty());
    }
    let missing = dir.path().join("missing.cfg");
    assert_eq!(relaysim(&["fringe"], &missing, &out).status.code(), Some(1));
    let unwritable = dir.path().join("no/such/dir/out.csv");
    assert_eq!(
        relaysim(&["budget"], &good, &unwritable).status.code(),
        Some(1)
    );
}

#[test]
fn syntax_errors_name_the_line() {
    let (dir, cfg) = setup("p1 = 0.01\n\nl1 = oops\n");
    let o = relaysim(&["fringe"], &cfg, &dir.path().join("x.csv"));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn help_exits_zero() {
    let o = Command::new(env!("CARGO_BIN_EXE_relaysim"))
        .arg("--help")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
