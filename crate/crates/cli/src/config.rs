//! Flat `key = value` run configuration.

use std::collections::HashSet;

use relaysim_core::sources::KappaCalibration;
use relaysim_core::Config;

use crate::CliError;

pub const KEYS: [&str; 14] = [
    "p1",
    "l1",
    "t2",
    "t3",
    "eta",
    "overlap",
    "window_ns",
    "dark1",
    "dark2",
    "dark3",
    "pump_mw",
    "kappa_mode",
    "trials",
    "seed",
];

pub const DEFAULT_PUMP_MW: f64 = 350.0;
pub const DEFAULT_TRIALS: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 42;

/// Experiment parameters plus the settings only some commands use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub experiment: Config,
    pub pump_mw: f64,
    pub kappa_mode: KappaCalibration,
    pub trials: u64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            experiment: Config::default(),
            pump_mw: DEFAULT_PUMP_MW,
            kappa_mode: KappaCalibration::default(),
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax {
        line,
        message: message.into(),
    }
}

fn domain(key: &str, value: impl ToString, range: &str) -> CliError {
    CliError::Domain {
        key: key.to_string(),
        value: value.to_string(),
        range: range.to_string(),
    }
}

fn number(line: usize, key: &str, raw: &str) -> Result<f64, CliError> {
    raw.parse::<f64>()
        .map_err(|_| syntax(line, format!("{key}: {raw:?} is not a number")))
}

/// Counts may be written as integers or in exponent form (`1e7`).
fn count(line: usize, key: &str, raw: &str) -> Result<u64, CliError> {
    if let Ok(n) = raw.parse::<u64>() {
        return Ok(n);
    }
    let x = number(line, key, raw)?;
    if x.fract() == 0.0 && (0.0..=u64::MAX as f64).contains(&x) {
        Ok(x as u64)
    } else {
        Err(syntax(
            line,
            format!("{key}: {raw:?} is not a non-negative integer"),
        ))
    }
}

fn check(key: &str, x: f64, ok: bool, range: &str) -> Result<f64, CliError> {
    if ok && x.is_finite() {
        Ok(x)
    } else {
        Err(domain(key, x, range))
    }
}

/// Parses a configuration document. Missing keys keep their defaults.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    let mut seen = HashSet::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| syntax(line, format!("expected `key = value`, found {content:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(syntax(line, format!("unknown key {key:?}")));
        }
        if !seen.insert(key) {
            return Err(syntax(line, format!("duplicate key {key:?}")));
        }
        if value.is_empty() {
            return Err(syntax(line, format!("{key}: missing value")));
        }
        let e = &mut cfg.experiment;
        match key {
            "p1" | "l1" => {
                let x = number(line, key, value)?;
                let x = check(key, x, (0.0..0.3).contains(&x), "[0, 0.3)")?;
                if key == "p1" {
                    e.p1 = x;
                } else {
                    e.l1 = x;
                }
            }
            "t2" | "t3" | "eta" | "overlap" => {
                let x = number(line, key, value)?;
                let x = check(key, x, (0.0..=1.0).contains(&x), "[0, 1]")?;
                match key {
                    "t2" => e.t2 = x,
                    "t3" => e.t3 = x,
                    "eta" => e.eta = x,
                    _ => e.overlap = x,
                }
            }
            "window_ns" => {
                let x = number(line, key, value)?;
                e.window_ns = check(key, x, x > 0.0, "(0, inf)")?;
            }
            "dark1" | "dark2" | "dark3" => {
                let x = number(line, key, value)?;
                let i = usize::from(key.as_bytes()[4] - b'1');
                e.dark_rates[i] = check(key, x, x >= 0.0, "[0, inf) per ns")?;
            }
            "pump_mw" => {
                let x = number(line, key, value)?;
                cfg.pump_mw = check(key, x, x >= 0.0, "[0, inf)")?;
            }
            "kappa_mode" => {
                cfg.kappa_mode = value
                    .parse()
                    .map_err(|_| domain(key, value, "peak450 | fit350"))?;
            }
            "trials" => {
                let n = count(line, key, value)?;
                if n == 0 {
                    return Err(domain(key, n, "[1, inf)"));
                }
                cfg.trials = n;
            }
            "seed" => cfg.seed = count(line, key, value)?,
            _ => unreachable!("key list checked above"),
        }
    }
    // dark probabilities must stay below one per window
    cfg.experiment.validate().map_err(CliError::from)?;
    Ok(cfg)
}
