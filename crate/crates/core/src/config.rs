//! Scenario configuration files and MAC data files.
//!
//! Configs are TOML: scenario lists at the top level and one table per
//! parameter group. Every key is optional; missing keys take the defaults
//! below, unknown keys are rejected.
//!
//! ```toml
//! goals_pgc = [300, 600, 900, 1200]
//! growth_rates = [0.012, 0.024, 0.036]
//! pathway_kind = "quasi_stationary"   # or "constant_rate", "both"
//! outputs = ["pathway", "expenditure", "burden"]
//!
//! [economy]
//! g0 = 77.8            # trillion $ / year
//! growth_rate = 0.024  # 1/year, used where no sweep rate applies
//! theta = 0.75
//! mu0 = 0.46           # Gt CO2 / trillion $
//! delta = 0.0          # 1/year
//!
//! [mac]
//! alpha = 10.4         # billion $ / (Gt CO2 / year)
//! nu = 2.4
//!
//! [grid]
//! horizon = 100.0
//! step = 0.05
//!
//! [cost_curve]
//! k_min = 0.0
//! k_max = 0.1
//! points = 20
//!
//! [power_law]
//! goals_pgc = [300, 450, 600, 750, 900]
//!
//! [climate]
//! tcre = 1.65          # K per 1000 PgC
//! baseline_warming = 1.0
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{DEFAULT_POWER_LAW_GOALS_PGC, DEFAULT_TCRE, REFERENCE_GOAL_PGC};
use crate::economy::{EconomyParams, TimeGrid, DEFAULT_STEP};
use crate::error::{Error, Result};
use crate::mac::{MacCurve, MacDataPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathwaySelection {
    QuasiStationary,
    ConstantRate,
    Both,
}

/// Series a sweep can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Pathway,
    Expenditure,
    Burden,
    CostCurve,
    PowerLaw,
    Delay,
}

impl OutputKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutputKind::Pathway => "pathway",
            OutputKind::Expenditure => "expenditure",
            OutputKind::Burden => "burden",
            OutputKind::CostCurve => "cost_curve",
            OutputKind::PowerLaw => "power_law",
            OutputKind::Delay => "delay",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EconomySection {
    pub g0: f64,
    pub growth_rate: f64,
    pub theta: f64,
    pub mu0: f64,
    pub delta: f64,
}

impl Default for EconomySection {
    fn default() -> Self {
        let e = EconomyParams::default();
        Self {
            g0: e.g0,
            growth_rate: e.r,
            theta: e.theta,
            mu0: e.mu0,
            delta: e.delta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MacSection {
    pub alpha: f64,
    pub nu: f64,
}

impl Default for MacSection {
    fn default() -> Self {
        let c = MacCurve::default();
        Self {
            alpha: c.alpha,
            nu: c.nu,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub horizon: f64,
    pub step: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        Self {
            horizon: 100.0,
            step: DEFAULT_STEP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostCurveSection {
    pub k_min: f64,
    pub k_max: f64,
    pub points: usize,
}

impl Default for CostCurveSection {
    fn default() -> Self {
        Self {
            k_min: 0.0,
            k_max: 0.1,
            points: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PowerLawSection {
    pub goals_pgc: Vec<f64>,
}

impl Default for PowerLawSection {
    fn default() -> Self {
        Self {
            goals_pgc: DEFAULT_POWER_LAW_GOALS_PGC.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClimateSection {
    /// K per 1000 PgC.
    pub tcre: f64,
    /// Present warming, K.
    pub baseline_warming: f64,
}

impl Default for ClimateSection {
    fn default() -> Self {
        Self {
            tcre: DEFAULT_TCRE,
            baseline_warming: 1.0,
        }
    }
}

/// A validated scenario description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Cumulative goals, PgC.
    pub goals_pgc: Vec<f64>,
    /// Growth rates swept, 1/year.
    pub growth_rates: Vec<f64>,
    pub pathway_kind: PathwaySelection,
    pub outputs: Vec<OutputKind>,
    pub economy: EconomySection,
    pub mac: MacSection,
    pub grid: GridSection,
    pub cost_curve: CostCurveSection,
    pub power_law: PowerLawSection,
    pub climate: ClimateSection,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            goals_pgc: vec![300.0, 600.0, 900.0, 1200.0],
            growth_rates: vec![0.012, 0.024, 0.036],
            pathway_kind: PathwaySelection::QuasiStationary,
            outputs: vec![OutputKind::Pathway],
            economy: EconomySection::default(),
            mac: MacSection::default(),
            grid: GridSection::default(),
            cost_curve: CostCurveSection::default(),
            power_law: PowerLawSection::default(),
            climate: ClimateSection::default(),
        }
    }
}

fn invalid(key: &str, message: impl Into<String>) -> Error {
    Error::Validation {
        key: key.to_string(),
        message: message.into(),
    }
}

impl ScenarioConfig {
    /// Economy at the configured `economy.growth_rate`.
    pub fn economy(&self) -> EconomyParams {
        EconomyParams {
            g0: self.economy.g0,
            r: self.economy.growth_rate,
            theta: self.economy.theta,
            mu0: self.economy.mu0,
            delta: self.economy.delta,
        }
    }

    pub fn curve(&self) -> MacCurve {
        MacCurve {
            alpha: self.mac.alpha,
            nu: self.mac.nu,
            mu0: self.economy.mu0,
        }
    }

    pub fn time_grid(&self) -> Result<TimeGrid> {
        TimeGrid::new(self.grid.horizon, self.grid.step)
    }

    pub fn validate(&self) -> Result<()> {
        let e = &self.economy;
        let positive = |key: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(invalid(key, format!("must be finite and > 0, got {v}")))
            }
        };
        let non_negative = |key: &str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(invalid(key, format!("must be finite and >= 0, got {v}")))
            }
        };
        positive("economy.g0", e.g0)?;
        positive("economy.mu0", e.mu0)?;
        non_negative("economy.growth_rate", e.growth_rate)?;
        non_negative("economy.delta", e.delta)?;
        if !(0.0..=1.0).contains(&e.theta) {
            return Err(invalid(
                "economy.theta",
                format!("must lie in [0, 1], got {}", e.theta),
            ));
        }
        positive("mac.alpha", self.mac.alpha)?;
        positive("mac.nu", self.mac.nu)?;
        self.time_grid()
            .map_err(|err| invalid("grid", err.to_string()))?;
        if self.goals_pgc.is_empty() {
            return Err(invalid("goals_pgc", "must not be empty"));
        }
        for &g in &self.goals_pgc {
            positive("goals_pgc", g)?;
        }
        if self.growth_rates.is_empty() {
            return Err(invalid("growth_rates", "must not be empty"));
        }
        for &r in &self.growth_rates {
            non_negative("growth_rates", r)?;
        }
        if self.outputs.is_empty() {
            return Err(invalid("outputs", "must not be empty"));
        }
        let cc = &self.cost_curve;
        non_negative("cost_curve.k_min", cc.k_min)?;
        if !(cc.k_max.is_finite() && cc.k_max >= cc.k_min) {
            return Err(invalid("cost_curve.k_max", "must be finite and >= k_min"));
        }
        if cc.points == 0 {
            return Err(invalid("cost_curve.points", "must be >= 1"));
        }
        if self.outputs.contains(&OutputKind::PowerLaw) {
            if self.power_law.goals_pgc.len() < 3 {
                return Err(invalid("power_law.goals_pgc", "needs at least 3 goals"));
            }
            if let Some(g) = self
                .power_law
                .goals_pgc
                .iter()
                .find(|g| !(**g > 0.0 && **g <= REFERENCE_GOAL_PGC))
            {
                return Err(invalid(
                    "power_law.goals_pgc",
                    format!("goals must lie in (0, {REFERENCE_GOAL_PGC}] PgC, got {g}"),
                ));
            }
        }
        positive("climate.tcre", self.climate.tcre)?;
        if !self.climate.baseline_warming.is_finite() {
            return Err(invalid("climate.baseline_warming", "must be finite"));
        }
        Ok(())
    }

    /// Canonical TOML form; `parse_config(&c.to_toml())` reproduces `c`.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config fields are always representable in TOML")
    }
}

/// Parses and validates a TOML scenario document.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let config: ScenarioConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

pub fn read_config(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

/// Parses a MAC data file: two numeric columns (reduction in Gt CO2/year,
/// marginal cost in billion $ per Gt CO2/year) separated by commas,
/// semicolons or whitespace. `#` starts a comment; blank lines are skipped.
pub fn parse_mac_data(text: &str) -> Result<Vec<MacDataPoint>> {
    let mut points = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if fields.len() != 2 {
            return Err(Error::Parse(format!(
                "MAC data line {}: expected 2 columns, found {}",
                lineno + 1,
                fields.len()
            )));
        }
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|_| {
                Error::Parse(format!(
                    "MAC data line {}: `{s}` is not a number",
                    lineno + 1
                ))
            })
        };
        points.push(MacDataPoint {
            reduction: parse(fields[0])?,
            marginal_cost: parse(fields[1])?,
        });
    }
    Ok(points)
}

pub fn read_mac_data(path: &Path) -> Result<Vec<MacDataPoint>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_mac_data(&text)
}
