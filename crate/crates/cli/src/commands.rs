use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use relaysim_core::oracle::{compare_rates, run_oracle_with, ComparisonReport, SamplingPlan};
use relaysim_core::protocol::{polarization_scan_rate, threefold_fringe, AnalysisBasis};
use relaysim_core::sources::{evaluate_budget, BudgetChain, DfgSpec};
use relaysim_core::visibility::{evaluate, grid, raw_joint_rates, sweep, Regime};
use relaysim_core::{Config, Visibility};

use crate::config::{parse_config, RunConfig};
use crate::format::decimal;
use crate::manifest::{Command, GridAxis, RunManifest};
use crate::{CliError, EXIT_OK, EXIT_VERIFICATION};

/// Default phase scan: two fringe periods, endpoint excluded.
pub const FRINGE_POINTS: usize = 400;
pub const THETA_POINTS: usize = 181;
/// Default sweep grid, matching the visibility maps.
pub const SWEEP_P1: (f64, f64) = (0.005, 0.05);
pub const SWEEP_L1: (f64, f64) = (0.0025, 0.1);
pub const SWEEP_STEPS: usize = 50;
pub const ORACLE_SIGMA: f64 = 3.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Written { rows: usize },
    OracleFailed(ComparisonReport),
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Written { .. } => EXIT_OK,
            Outcome::OracleFailed(_) => EXIT_VERIFICATION,
        }
    }
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: e.into_error(),
        })?;
        fs::write(path, bytes).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

fn axis_or(manifest: &RunManifest, name: &str, default: impl FnOnce() -> Vec<f64>) -> Vec<f64> {
    manifest
        .axis(name)
        .map(GridAxis::values)
        .unwrap_or_else(default)
}

/// Rate between `c_min` and `c_max` at relative fringe position `p`.
fn between(v: &Visibility, p: f64) -> f64 {
    v.c_min + (v.c_max - v.c_min) * p
}

fn fringe(manifest: &RunManifest, cfg: &RunConfig) -> Result<Table, CliError> {
    let r = evaluate(&cfg.experiment)?;
    let phis = axis_or(manifest, "phi", || {
        (0..FRINGE_POINTS)
            .map(|i| 4.0 * PI * i as f64 / FRINGE_POINTS as f64)
            .collect()
    });
    let mut t = Table::new(&["phi_rad", "p123", "c_raw", "c_net"]);
    for phi in phis {
        let p = threefold_fringe(0.0, phi, 0.0);
        t.push(vec![
            decimal(phi),
            decimal(p),
            decimal(between(&r.raw, p)),
            decimal(between(&r.net, p)),
        ]);
    }
    Ok(t)
}

fn scan_theta(manifest: &RunManifest, cfg: &RunConfig) -> Result<Table, CliError> {
    let r = evaluate(&cfg.experiment)?;
    let thetas = axis_or(manifest, "theta", || {
        GridAxis::new("theta", 0.0, PI, THETA_POINTS)
            .expect("static axis")
            .values()
    });
    let mut t = Table::new(&["theta_rad", "rate_raw", "rate_net"]);
    for theta in thetas {
        let p = polarization_scan_rate(theta, AnalysisBasis::H);
        t.push(vec![
            decimal(theta),
            decimal(between(&r.raw, p)),
            decimal(between(&r.net, p)),
        ]);
    }
    Ok(t)
}

const SWEEP_HEADER: [&str; 14] = [
    "p1",
    "l1",
    "raw_c_max",
    "raw_c_min",
    "raw_v_two_photon",
    "raw_v_ent",
    "raw_fidelity",
    "net_c_max",
    "net_c_min",
    "net_v_two_photon",
    "net_v_ent",
    "net_fidelity",
    "net_clamped",
    "status",
];

fn metrics(v: &Visibility) -> [String; 5] {
    [v.c_max, v.c_min, v.v_two_photon, v.v_ent, v.fidelity].map(decimal)
}

fn sweep_table(manifest: &RunManifest, cfg: &RunConfig) -> Result<Table, CliError> {
    let default = |(lo, hi): (f64, f64)| {
        move || {
            GridAxis::new("", lo, hi, SWEEP_STEPS)
                .expect("static axis")
                .values()
        }
    };
    let p1s = axis_or(manifest, "p1", default(SWEEP_P1));
    let l1s = axis_or(manifest, "l1", default(SWEEP_L1));
    let rows = sweep(&cfg.experiment, &grid(&p1s, &l1s))?;
    let mut t = Table::new(&SWEEP_HEADER);
    for row in rows {
        let mut out = vec![decimal(row.p1), decimal(row.l1)];
        match row.result {
            Ok(r) => {
                out.extend(metrics(&r.raw));
                out.extend(metrics(&r.net));
                out.push(r.net.clamped.to_string());
                out.push("ok".into());
            }
            Err(e) => {
                out.extend(std::iter::repeat_n(String::new(), 11));
                out.push(e.to_string());
            }
        }
        t.push(out);
    }
    Ok(t)
}

fn budget(cfg: &RunConfig) -> Result<Table, CliError> {
    let dfg = DfgSpec::<f64>::calibrated(cfg.kappa_mode);
    let chain = BudgetChain::qubit_generator(cfg.pump_mw, &dfg)?;
    let mut t = Table::new(&["stage_label", "rate_per_window"]);
    t.push(vec!["laser_input".into(), decimal(chain.input_rate)]);
    for (label, rate) in evaluate_budget(&chain)? {
        t.push(vec![label, decimal(rate)]);
    }
    Ok(t)
}

/// The oracle samples the two pure regimes, so the overlap is set to one.
fn oracle_check(
    manifest: &RunManifest,
    cfg: &RunConfig,
) -> Result<(Table, ComparisonReport), CliError> {
    let config = Config {
        overlap: 1.0,
        ..cfg.experiment
    };
    let seed = manifest.seed.unwrap_or(cfg.seed);
    let (analytic, _) = raw_joint_rates(&config)?;
    let estimate = run_oracle_with(&config, cfg.trials, seed, SamplingPlan::Stratified)?;
    let report = compare_rates(analytic, &estimate, ORACLE_SIGMA);
    let mut t = Table::new(&["regime", "analytic", "estimate", "std_err", "z"]);
    for row in &report.rows {
        t.push(vec![
            row.regime.label().to_string(),
            decimal(row.analytic),
            decimal(row.estimate),
            decimal(row.std_err),
            decimal(row.z),
        ]);
    }
    debug_assert_eq!(report.rows[0].regime, Regime::Distinguishable);
    Ok((t, report))
}

/// Reads the config, runs the command and writes its CSV.
pub fn run(manifest: &RunManifest) -> Result<Outcome, CliError> {
    manifest.validate()?;
    let text = fs::read_to_string(&manifest.config_path).map_err(|source| CliError::Io {
        path: manifest.config_path.clone(),
        source,
    })?;
    let cfg = parse_config(&text)?;
    let (table, report) = match manifest.command {
        Command::Fringe => (fringe(manifest, &cfg)?, None),
        Command::ScanTheta => (scan_theta(manifest, &cfg)?, None),
        Command::Sweep => (sweep_table(manifest, &cfg)?, None),
        Command::Budget => (budget(&cfg)?, None),
        Command::OracleCheck => {
            let (t, r) = oracle_check(manifest, &cfg)?;
            (t, Some(r))
        }
    };
    table.write(&manifest.output_path)?;
    Ok(match report {
        Some(r) if !r.passed() => Outcome::OracleFailed(r),
        _ => Outcome::Written {
            rows: table.rows.len(),
        },
    })
}
