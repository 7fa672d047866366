//! Suite execution, convergence studies and machine-readable reports.

pub mod config;
pub mod study;
pub mod suites;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

pub use config::{ConfigMap, ScenarioConfig, Suite};
pub use study::{convergence_study, fitted_order, ConvergenceRow, ConvergenceTable};
pub use suites::run_suite;

use crate::error::Result;
use crate::s7::gauss::{PointRecord, SignVariant};

/// A bound in a [`Check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "rule", content = "limit")]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
    Above(f64),
    Equals(f64),
    /// A yes/no property; `value` is 1 when it holds.
    Holds,
}

/// One pass/fail assertion of a suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: Bound,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, bound: Bound) -> Self {
        let passed = match bound {
            Bound::AtMost(l) => value <= l,
            Bound::AtLeast(l) => value >= l,
            Bound::Above(l) => value > l,
            Bound::Equals(l) => value == l,
            Bound::Holds => value == 1.0,
        };
        Self {
            name: name.into(),
            value,
            bound,
            passed,
        }
    }

    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self::new(name, value, Bound::AtMost(limit))
    }

    pub fn at_least(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self::new(name, value, Bound::AtLeast(limit))
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, if ok { 1.0 } else { 0.0 }, Bound::Holds)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Aggregates {
    pub max_residual: Option<f64>,
    pub mean_residual: Option<f64>,
    /// Fitted order from a convergence study, absent for single-step runs.
    pub conv_order: Option<f64>,
    /// The residual variant the per-point records refer to.
    pub variant: Option<SignVariant>,
}

impl Aggregates {
    pub fn from_records(records: &[PointRecord], variant: Option<SignVariant>) -> Self {
        if records.is_empty() {
            return Self {
                variant,
                ..Self::default()
            };
        }
        let max = records.iter().map(|r| r.residual).fold(0.0, f64::max);
        let mean = records.iter().map(|r| r.residual).sum::<f64>() / records.len() as f64;
        Self {
            max_residual: Some(max),
            mean_residual: Some(mean),
            conv_order: None,
            variant,
        }
    }
}

/// Result of one suite run or convergence study.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub scenario: ScenarioConfig,
    pub points: Vec<PointRecord>,
    pub aggregates: Aggregates,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence: Option<ConvergenceTable>,
    /// Measured quantities that carry no pass/fail rule.
    pub observations: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    pub passed: bool,
}

impl ResidualReport {
    pub fn new(scenario: ScenarioConfig) -> Self {
        Self {
            scenario,
            points: Vec::new(),
            aggregates: Aggregates::default(),
            convergence: None,
            observations: BTreeMap::new(),
            checks: Vec::new(),
            warnings: Vec::new(),
            passed: true,
        }
    }

    pub fn check(&mut self, c: Check) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    pub fn observe(&mut self, key: &str, value: f64) {
        self.observations.insert(key.to_string(), value);
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| crate::error::Error::Io(e.to_string()))
    }

    /// Point records as CSV: `u0..u{n-1},residual,H,A_norm_sq,gradH_norm,defect`.
    pub fn points_csv(&self) -> String {
        let n = self.points.first().map_or(0, |p| p.u.len());
        let mut s: String = (0..n).map(|k| format!("u{k},")).collect();
        s.push_str("residual,H,A_norm_sq,gradH_norm,defect\n");
        for p in &self.points {
            for u in &p.u {
                let _ = write!(s, "{u},");
            }
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                p.residual, p.mean_curvature, p.a_norm_sq, p.grad_h_norm, p.defect
            );
        }
        s
    }

    /// One line per check, `PASS name value bound` or `FAIL ...`.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let bound = match c.bound {
                Bound::AtMost(l) => format!("<= {l:e}"),
                Bound::AtLeast(l) => format!(">= {l}"),
                Bound::Above(l) => format!("> {l:e}"),
                Bound::Equals(l) => format!("== {l}"),
                Bound::Holds => String::new(),
            };
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            let value = if matches!(c.bound, Bound::Holds) {
                String::new()
            } else {
                format!(" {:e}", c.value)
            };
            let _ = writeln!(s, "{verdict} {}{value} {bound}", c.name);
        }
        for w in &self.warnings {
            let _ = writeln!(s, "WARN {w}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_drive_the_verdict() {
        let mut r = ResidualReport::new(ScenarioConfig::for_suite(Suite::Topology));
        r.check(Check::at_most("small", 1e-4, 1e-3));
        assert!(r.passed);
        r.check(Check::at_least("order", f64::NAN, 1.8));
        assert!(!r.passed);
        assert_eq!(r.failed_checks().count(), 1);
        assert!(r.summary().contains("FAIL order"));
    }
}
