//! Scenario configuration: a flat `key = value` file merged with command-line
//! overrides.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::cp3::hopf::QuadratureSpec;
use crate::cp3::lift::DEFAULT_DELTA;
use crate::error::{Error, Result};
use crate::geometry::catalog::{parse_number, ChartId};
use crate::geometry::stencil::StencilSpec;

/// Keys accepted in a config file or as overrides.
pub const KNOWN_KEYS: &[&str] = &[
    "suite", "chart", "t0", "p", "q", "a", "eps", "mode", "delta", "points", "h", "order",
    "nesting", "quad", "seed", "out", "csv", "steps",
];

const MAX_POINTS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Algebra,
    S7,
    Cp3,
    Hopf,
    Topology,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Algebra, Suite::S7, Suite::Cp3, Suite::Hopf, Suite::Topology];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::S7 => "s7",
            Suite::Cp3 => "cp3",
            Suite::Hopf => "hopf",
            Suite::Topology => "topology",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

/// Raw `key -> value` pairs, before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigMap(pub BTreeMap<String, String>);

impl ConfigMap {
    /// Parses `key = value` lines. Blank lines and text after `#` are ignored;
    /// unknown and repeated keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: k + 1, message };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
            let (key, value) = (key.trim(), value.trim());
            if !KNOWN_KEYS.contains(&key) {
                return Err(err(format!("unknown key `{key}`")));
            }
            if value.is_empty() {
                return Err(err(format!("empty value for `{key}`")));
            }
            if map.insert(key.to_string(), value.to_string()).is_some() {
                return Err(err(format!("key `{key}` given twice")));
            }
        }
        Ok(Self(map))
    }

    /// `self` with every entry of `overrides` replacing its own.
    pub fn merged(mut self, overrides: &ConfigMap) -> Self {
        for (k, v) in &overrides.0 {
            self.0.insert(k.clone(), v.clone());
        }
        self
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.0.insert(key.to_string(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn number(&self, key: &str) -> Result<Option<f64>> {
        self.get(key).map(parse_number).transpose()
    }

    fn integer(&self, key: &str) -> Result<Option<u64>> {
        self.get(key)
            .map(|v| {
                v.parse::<u64>()
                    .map_err(|_| Error::Config(format!("`{key}` must be a non-negative integer, got `{v}`")))
            })
            .transpose()
    }

    /// The `steps` entry: a comma- or space-separated list of step sizes.
    pub fn steps(&self) -> Result<Option<Vec<f64>>> {
        self.get("steps")
            .map(|s| {
                s.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(parse_number)
                    .collect()
            })
            .transpose()
    }
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub suite: Suite,
    pub chart: ChartId,
    pub stencil: StencilSpec,
    pub points: usize,
    pub quadrature: QuadratureSpec,
    pub delta: f64,
    pub seed: u64,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub csv: Option<PathBuf>,
}

impl ScenarioConfig {
    /// Defaults for a suite: the equator for `s7`, the product-torus lift for
    /// `cp3`, 20 points, the default stencil and 64 quadrature nodes.
    pub fn for_suite(suite: Suite) -> Self {
        let chart = match suite {
            Suite::Cp3 => ChartId::ProductTorusLift {
                a: 0.6,
                delta: DEFAULT_DELTA,
            },
            _ => ChartId::Equator,
        };
        Self {
            suite,
            chart,
            stencil: StencilSpec::default(),
            points: 20,
            quadrature: QuadratureSpec::default(),
            delta: DEFAULT_DELTA,
            seed: 0,
            out: None,
            csv: None,
        }
    }

    /// Validates a merged map. `suite` is required.
    pub fn from_map(map: &ConfigMap) -> Result<Self> {
        let suite: Suite = map
            .get("suite")
            .ok_or_else(|| Error::Config("missing `suite`".into()))?
            .parse()?;
        let mut cfg = Self::for_suite(suite);
        let param = |key: &str| map.number(key).ok().flatten();
        for key in ["t0", "p", "q", "a", "eps", "mode", "delta"] {
            map.number(key)?;
        }
        if let Some(c) = map.get("chart") {
            cfg.chart = if c.contains('(') {
                c.parse()?
            } else {
                ChartId::from_parts(c.trim(), param)?
            };
        } else if suite == Suite::Cp3 || suite == Suite::S7 {
            let name = if suite == Suite::Cp3 { "product_torus_lift" } else { "equator" };
            cfg.chart = ChartId::from_parts(name, param)?;
        }
        if let Some(d) = map.number("delta")? {
            cfg.delta = d;
        } else if let ChartId::ProductTorusLift { delta, .. } = cfg.chart {
            cfg.delta = delta;
        }
        let mut stencil = cfg.stencil;
        if let Some(h) = map.number("h")? {
            stencil.h_step = h;
        }
        if let Some(o) = map.integer("order")? {
            stencil.order = u8::try_from(o).map_err(|_| Error::Config(format!("order {o} too large")))?;
        }
        if let Some(n) = map.number("nesting")? {
            stencil.nesting_factor = n;
        }
        cfg.stencil = StencilSpec::new(stencil.h_step, stencil.order, stencil.nesting_factor)?;
        if let Some(n) = map.integer("points")? {
            cfg.points = n as usize;
        }
        if let Some(n) = map.integer("quad")? {
            cfg.quadrature = QuadratureSpec::new(n as usize)?;
        }
        if let Some(s) = map.integer("seed")? {
            cfg.seed = s;
        }
        cfg.out = map.get("out").map(PathBuf::from);
        cfg.csv = map.get("csv").map(PathBuf::from);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points == 0 || self.points > MAX_POINTS {
            return Err(Error::Config(format!(
                "points must lie in 1..={MAX_POINTS}, got {}",
                self.points
            )));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Config(format!("delta = {} outside (0, 1)", self.delta)));
        }
        self.stencil.validate()?;
        self.chart.build()?;
        match self.suite {
            Suite::S7 if self.chart.is_cp3_lift() || self.chart == ChartId::FlatTorus => Err(Error::Config(
                format!("chart `{}` is not a hypersurface of S^7", self.chart),
            )),
            Suite::Cp3 if !self.chart.is_cp3_lift() => Err(Error::Config(format!(
                "chart `{}` is not a lift of a hypersurface of CP^3",
                self.chart
            ))),
            _ => Ok(()),
        }
    }
}
