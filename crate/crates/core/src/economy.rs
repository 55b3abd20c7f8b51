//! Baseline economy: constant-rate GGDP growth, constant income elasticity of
//! emissions and the exogenous decline of emissions intensity that follows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{cumulative_simpson, exp_integral, simpson};
use crate::pathway::Pathway;

/// Default grid spacing in years.
pub const DEFAULT_STEP: f64 = 0.05;

/// Parameters of the baseline global economy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EconomyParams {
    /// GGDP at `t = 0`, trillion $ / year.
    pub g0: f64,
    /// Annual GGDP growth rate, 1/year.
    pub r: f64,
    /// Income elasticity of CO2 emissions.
    pub theta: f64,
    /// Emissions intensity at `t = 0`, Gt CO2 / trillion $.
    pub mu0: f64,
    /// Time-discount rate, 1/year.
    pub delta: f64,
}

impl Default for EconomyParams {
    fn default() -> Self {
        Self {
            g0: 77.8,
            r: 0.024,
            theta: 0.75,
            mu0: 0.46,
            delta: 0.0,
        }
    }
}

impl EconomyParams {
    pub fn new(g0: f64, r: f64, theta: f64, mu0: f64, delta: f64) -> Result<Self> {
        let params = Self {
            g0,
            r,
            theta,
            mu0,
            delta,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::domain(what.to_string()))
            }
        };
        check(
            self.g0.is_finite() && self.g0 > 0.0,
            "g0 must be finite and > 0",
        )?;
        check(
            self.mu0.is_finite() && self.mu0 > 0.0,
            "mu0 must be finite and > 0",
        )?;
        check(
            self.r.is_finite() && self.r >= 0.0,
            "growth rate r must be finite and >= 0",
        )?;
        check(
            self.delta.is_finite() && self.delta >= 0.0,
            "delta must be finite and >= 0",
        )?;
        check(
            (0.0..=1.0).contains(&self.theta),
            "theta must lie in [0, 1]",
        )?;
        let m0 = self.m0();
        check(
            m0.is_finite() && m0 > 0.0,
            "m0 = mu0 * g0 must be finite and > 0",
        )
    }

    /// Exogenous decarbonization rate `σ = (1 − θ) r`.
    pub fn sigma(&self) -> f64 {
        (1.0 - self.theta) * self.r
    }

    /// Present emissions `m0 = μ0 g0`, Gt CO2 / year.
    pub fn m0(&self) -> f64 {
        self.mu0 * self.g0
    }

    /// Combined exogenous-decarbonization and discount rate `ρ = σ + δ`.
    pub fn rho(&self) -> f64 {
        self.sigma() + self.delta
    }

    /// Copy with a different growth rate.
    pub fn with_growth_rate(mut self, r: f64) -> Self {
        self.r = r;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }
}

/// Uniform time grid `t_i = i * step`, `i = 0..=N`, with `t_N = horizon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    horizon: f64,
    step: f64,
    intervals: usize,
}

impl TimeGrid {
    pub fn new(horizon: f64, step: f64) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::Grid(format!(
                "horizon must be finite and > 0, got {horizon}"
            )));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::Grid(format!(
                "step must be finite and > 0, got {step}"
            )));
        }
        let ratio = horizon / step;
        let intervals = ratio.round();
        if intervals < 1.0 || (intervals * step - horizon).abs() > 1e-9 * horizon.max(1.0) {
            return Err(Error::Grid(format!(
                "horizon {horizon} is not an integer multiple of step {step}"
            )));
        }
        Ok(Self {
            horizon,
            step,
            intervals: intervals as usize,
        })
    }

    /// Grid over `[0, horizon]` with [`DEFAULT_STEP`].
    pub fn with_default_step(horizon: f64) -> Result<Self> {
        Self::new(horizon, DEFAULT_STEP)
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, i: usize) -> f64 {
        if i == self.intervals {
            self.horizon
        } else {
            i as f64 * self.step
        }
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.time(i)).collect()
    }

    /// Index of the node at time `t`, if `t` is a node.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        if t < -1e-9 || t > self.horizon + 1e-9 * self.horizon.max(1.0) {
            return None;
        }
        let i = (t / self.step).round();
        ((i * self.step - t).abs() <= 1e-9 * self.horizon.max(1.0)).then_some(i as usize)
    }

    /// Evaluates `f` at every node.
    pub fn map<F: FnMut(f64) -> f64>(&self, mut f: F) -> Vec<f64> {
        (0..self.len()).map(|i| f(self.time(i))).collect()
    }
}

/// Exogenous decrease of emissions intensity, `σ = (1 − θ) r`.
pub fn exogenous_rate(theta: f64, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::domain(format!("theta = {theta} outside [0, 1]")));
    }
    if !(r >= 0.0) {
        return Err(Error::domain(format!("growth rate r = {r} must be >= 0")));
    }
    Ok((1.0 - theta) * r)
}

/// GGDP `g(t) = g0 e^{r t}`, trillion $ / year.
pub fn ggdp(t: f64, params: &EconomyParams) -> f64 {
    params.g0 * (params.r * t).exp()
}

/// Integrated GGDP `G(t) = ∫_0^t g(s) ds`, trillion $.
pub fn integrated_ggdp(t: f64, params: &EconomyParams) -> f64 {
    params.g0 * exp_integral(params.r, t)
}

/// Integrated GGDP deflated by exogenous decarbonization, `∫_0^t e^{−σ s} g(s) ds`.
pub fn integrated_deflated_ggdp(t: f64, params: &EconomyParams) -> f64 {
    params.g0 * exp_integral(params.r - params.sigma(), t)
}

/// Emissions `m = μ0 g(t) e^{−K} e^{−σ t}`, Gt CO2 / year.
pub fn emissions(t: f64, big_k: f64, params: &EconomyParams) -> f64 {
    params.m0() * ((params.r - params.sigma()) * t - big_k).exp()
}

/// Emissions intensity `μ(t) = μ0 e^{−K} e^{−σ t}`.
pub fn intensity(t: f64, big_k: f64, params: &EconomyParams) -> f64 {
    params.mu0 * (-big_k - params.sigma() * t).exp()
}

/// Cumulative emissions `M(T)` of a pathway by Simpson quadrature of its
/// emissions on the pathway grid.
pub fn cumulative_emissions(pathway: &Pathway, horizon: f64) -> Result<f64> {
    let idx = pathway.grid().index_of(horizon).ok_or_else(|| {
        Error::Grid(format!(
            "T = {horizon} is not a node of the pathway grid (horizon {}, step {})",
            pathway.grid().horizon(),
            pathway.grid().step()
        ))
    })?;
    Ok(simpson(&pathway.m()[..=idx], pathway.grid().step()))
}

/// Running cumulative emissions of an emissions series on `grid`.
pub fn cumulative_series(m: &[f64], grid: &TimeGrid) -> Vec<f64> {
    cumulative_simpson(m, grid.step())
}

/// Business-as-usual cumulative emissions over the grid (Simpson, `K ≡ 0`).
pub fn bau_cumulative(grid: &TimeGrid, params: &EconomyParams) -> f64 {
    simpson(&grid.map(|t| emissions(t, 0.0, params)), grid.step())
}

/// Closed form of cumulative emissions for constant decarbonization rate `k`:
/// `M(T) = m0 (1 − e^{−χT}) / χ`, `χ = k + σ − r`, with the `χ → 0` limit `m0 T`.
pub fn constant_rate_cumulative(k: f64, horizon: f64, params: &EconomyParams) -> f64 {
    let chi = k + params.sigma() - params.r;
    params.m0() * exp_integral(-chi, horizon)
}
