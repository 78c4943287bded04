//! Sweep grids written as `start:stop:count[:log]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

/// Upper bound on grid points; a sweep row costs at least one ODE solve.
pub const MAX_POINTS: usize = 1_000_000;

impl GridSpec {
    pub fn new(start: f64, stop: f64, count: usize, spacing: Spacing) -> Result<Self, CliError> {
        let g = Self {
            start,
            stop,
            count,
            spacing,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(CliError::Config(format!("grid bounds {} and {} must be finite", self.start, self.stop)));
        }
        if self.count < 2 || self.count > MAX_POINTS {
            return Err(CliError::Config(format!("grid count {} is outside [2, {MAX_POINTS}]", self.count)));
        }
        if self.spacing == Spacing::Log && !(self.start > 0.0 && self.stop > 0.0) {
            return Err(CliError::Config("log grid needs positive bounds".into()));
        }
        Ok(())
    }

    /// Grid values; the end points are reproduced exactly.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count - 1;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == n {
                    return self.stop;
                }
                let u = i as f64 / n as f64;
                match self.spacing {
                    Spacing::Linear => self.start + (self.stop - self.start) * u,
                    Spacing::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * u).exp(),
                }
            })
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || CliError::Config(format!("grid `{s}` is not start:stop:count[:log]"));
        let (spacing, nums) = match parts.as_slice() {
            [a, b, n] => (Spacing::Linear, (a, b, n)),
            [a, b, n, kind] => {
                let spacing = match kind.trim() {
                    "log" => Spacing::Log,
                    "lin" | "linear" => Spacing::Linear,
                    _ => return Err(bad()),
                };
                (spacing, (a, b, n))
            }
            _ => return Err(bad()),
        };
        let start: f64 = nums.0.trim().parse().map_err(|_| bad())?;
        let stop: f64 = nums.1.trim().parse().map_err(|_| bad())?;
        let count: usize = nums.2.trim().parse().map_err(|_| bad())?;
        GridSpec::new(start, stop, count, spacing)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `{:?}` keeps round-trip precision for f64.
        write!(f, "{:?}:{:?}:{}", self.start, self.stop, self.count)?;
        if self.spacing == Spacing::Log {
            write!(f, ":log")?;
        }
        Ok(())
    }
}

impl TryFrom<String> for GridSpec {
    type Error = CliError;

    fn try_from(s: String) -> Result<Self, CliError> {
        s.parse()
    }
}

impl From<GridSpec> for String {
    fn from(g: GridSpec) -> String {
        g.to_string()
    }
}
