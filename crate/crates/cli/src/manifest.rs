use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Fringe,
    ScanTheta,
    Sweep,
    Budget,
    OracleCheck,
}

impl Command {
    pub const ALL: [Command; 5] = [
        Command::Fringe,
        Command::ScanTheta,
        Command::Sweep,
        Command::Budget,
        Command::OracleCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Fringe => "fringe",
            Command::ScanTheta => "scan-theta",
            Command::Sweep => "sweep",
            Command::Budget => "budget",
            Command::OracleCheck => "oracle-check",
        }
    }

    /// Grid axes the command accepts.
    pub fn axes(self) -> &'static [&'static str] {
        match self {
            Command::Fringe => &["phi"],
            Command::ScanTheta => &["theta"],
            Command::Sweep => &["p1", "l1"],
            Command::Budget | Command::OracleCheck => &[],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown command {s:?}")))
    }
}

/// `axis=start:stop:steps`, `steps` evenly spaced points including both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

/// A number, optionally followed by `pi` (`pi`, `4pi`, `0.5pi`).
fn bound(s: &str) -> Option<f64> {
    let s = s.trim();
    match s.strip_suffix("pi") {
        Some("") => Some(std::f64::consts::PI),
        Some(m) => m.parse::<f64>().ok().map(|m| m * std::f64::consts::PI),
        None => s.parse().ok(),
    }
}

impl GridAxis {
    pub fn new(
        name: impl Into<String>,
        start: f64,
        stop: f64,
        steps: usize,
    ) -> Result<Self, CliError> {
        let name = name.into();
        if steps == 0 {
            return Err(CliError::Grid(format!("{name}: steps must be at least 1")));
        }
        if !(start.is_finite() && stop.is_finite() && start <= stop) {
            return Err(CliError::Grid(format!("{name}: need finite start <= stop")));
        }
        if steps == 1 && start != stop {
            return Err(CliError::Grid(format!(
                "{name}: one step needs start == stop"
            )));
        }
        Ok(Self {
            name,
            start,
            stop,
            steps,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / last)
            .collect()
    }
}

impl FromStr for GridAxis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Grid(format!("{s:?} is not axis=start:stop:steps"));
        let (name, spec) = s.split_once('=').ok_or_else(bad)?;
        let parts: Vec<&str> = spec.split(':').collect();
        let [start, stop, steps] = parts[..] else {
            return Err(bad());
        };
        let start = bound(start).ok_or_else(bad)?;
        let stop = bound(stop).ok_or_else(bad)?;
        let steps = steps.trim().parse().map_err(|_| bad())?;
        GridAxis::new(name.trim(), start, stop, steps)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: Command,
    pub config_path: PathBuf,
    pub output_path: PathBuf,
    pub seed: Option<u64>,
    pub grid: Vec<GridAxis>,
}

impl RunManifest {
    /// Rejects axes the command does not know and repeated axes.
    pub fn validate(&self) -> Result<(), CliError> {
        let allowed = self.command.axes();
        for (i, axis) in self.grid.iter().enumerate() {
            if !allowed.contains(&axis.name.as_str()) {
                return Err(CliError::Grid(format!(
                    "{} takes no grid axis {:?} (allowed: {})",
                    self.command,
                    axis.name,
                    if allowed.is_empty() {
                        "none".to_string()
                    } else {
                        allowed.join(", ")
                    }
                )));
            }
            if self.grid[..i].iter().any(|a| a.name == axis.name) {
                return Err(CliError::Grid(format!("axis {:?} given twice", axis.name)));
            }
        }
        Ok(())
    }

    pub fn axis(&self, name: &str) -> Option<&GridAxis> {
        self.grid.iter().find(|a| a.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_axis() {
        let a: GridAxis = "p1=0.01:0.03:3".parse().unwrap();
        assert_eq!(a.name, "p1");
        let v = a.values();
        assert_eq!(v.len(), 3);
        assert!((v[1] - 0.02).abs() < 1e-15);
        assert_eq!(v[2], 0.03);
    }

    #[test]
    fn pi_bounds() {
        let a: GridAxis = "phi=0:4pi:5".parse().unwrap();
        assert!((a.stop - 4.0 * std::f64::consts::PI).abs() < 1e-15);
        let b: GridAxis = "theta=0:pi:2".parse().unwrap();
        assert_eq!(b.values()[1], std::f64::consts::PI);
    }

    #[test]
    fn rejects_bad_axes() {
        for s in [
            "p1",
            "p1=0:1",
            "p1=1:0:3",
            "p1=0:1:0",
            "p1=0:1:1",
            "p1=a:1:2",
            "p1=0:1:2:3",
        ] {
            assert!(s.parse::<GridAxis>().is_err(), "{s}");
        }
        assert_eq!(
            "p1=0.5:0.5:1".parse::<GridAxis>().unwrap().values(),
            vec![0.5]
        );
    }

    #[test]
    fn manifest_checks_axes_against_command() {
        let mut m = RunManifest {
            command: Command::Sweep,
            config_path: "c".into(),
            output_path: "o".into(),
            seed: None,
            grid: vec!["p1=0.01:0.02:2".parse().unwrap()],
        };
        assert!(m.validate().is_ok());
        m.grid.push("p1=0.01:0.02:2".parse().unwrap());
        assert!(m.validate().is_err());
        m.grid = vec!["phi=0:1:2".parse().unwrap()];
        assert!(m.validate().is_err());
        m.command = Command::Budget;
        assert!(m.validate().is_err());
    }

    #[test]
    fn command_names_round_trip() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert!("plot".parse::<Command>().is_err());
    }
}
