//! Decarbonization pathways: the quasi-stationary minimum-expenditure family
//! `K(t) = ln(1 + c G(t))`, constant-rate pathways, and the solvers that pick
//! the member of each family meeting a cumulative-emissions goal.
//!
//! The quasi-stationary family depends on the Lagrange multipliers only
//! through `c = λ1 μ0 / λ2`, so the goal fixes `c` by a one-dimensional root
//! search. With `σ > 0` or `δ > 0` the family is no longer a stationary point
//! of the regularized problem; such pathways are still built (early-mitigation
//! archetype) but carry [`Pathway::heuristic_sigma`].

mod el;

pub use el::{
    decreasing_threshold, integrate_el_ode, small_sigma_expansion, ElOdeSolution,
    SmallSigmaExpansion,
};

use serde::{Deserialize, Serialize};

use crate::economy::{
    bau_cumulative, constant_rate_cumulative, cumulative_series, emissions, ggdp, integrated_ggdp,
    EconomyParams, TimeGrid,
};
use crate::error::{Error, Result};
use crate::numerics::{brent, cumulative_simpson, simpson, RootTolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathwayKind {
    QuasiStationary,
    ConstantRate,
    Custom,
}

impl PathwayKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PathwayKind::QuasiStationary => "quasi_stationary",
            PathwayKind::ConstantRate => "constant_rate",
            PathwayKind::Custom => "custom",
        }
    }
}

/// A decarbonization trajectory sampled on a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Pathway {
    grid: TimeGrid,
    big_k: Vec<f64>,
    k: Vec<f64>,
    m: Vec<f64>,
    m_cum: Vec<f64>,
    kind: PathwayKind,
    heuristic_sigma: bool,
}

impl Pathway {
    fn assemble(
        grid: TimeGrid,
        big_k: Vec<f64>,
        k: Vec<f64>,
        economy: &EconomyParams,
        kind: PathwayKind,
        heuristic_sigma: bool,
    ) -> Self {
        let m: Vec<f64> = big_k
            .iter()
            .enumerate()
            .map(|(i, &kk)| emissions(grid.time(i), kk, economy))
            .collect();
        let m_cum = cumulative_series(&m, &grid);
        Self {
            grid,
            big_k,
            k,
            m,
            m_cum,
            kind,
            heuristic_sigma,
        }
    }

    /// Custom pathway from per-node decarbonization rates; `K` is their
    /// running Simpson integral from `K(0) = 0`.
    pub fn from_rates(grid: TimeGrid, rates: Vec<f64>, economy: &EconomyParams) -> Result<Self> {
        if rates.len() != grid.len() {
            return Err(Error::Grid(format!(
                "{} rates for a grid of {} nodes",
                rates.len(),
                grid.len()
            )));
        }
        if let Some(bad) = rates.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain(format!(
                "non-finite decarbonization rate {bad}"
            )));
        }
        let big_k = cumulative_simpson(&rates, grid.step());
        Ok(Self::assemble(
            grid,
            big_k,
            rates,
            economy,
            PathwayKind::Custom,
            false,
        ))
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    /// Integrated decarbonization rate `K(t)`.
    pub fn big_k(&self) -> &[f64] {
        &self.big_k
    }

    /// Decarbonization rate `k(t)`, 1/year.
    pub fn k(&self) -> &[f64] {
        &self.k
    }

    /// Emissions, Gt CO2 / year.
    pub fn m(&self) -> &[f64] {
        &self.m
    }

    /// Running cumulative emissions, Gt CO2.
    pub fn m_cum(&self) -> &[f64] {
        &self.m_cum
    }

    pub fn kind(&self) -> PathwayKind {
        self.kind
    }

    /// Set for quasi-stationary pathways built with `σ > 0` or `δ > 0`.
    pub fn heuristic_sigma(&self) -> bool {
        self.heuristic_sigma
    }

    /// Cumulative emissions over the whole grid.
    pub fn total_emissions(&self) -> f64 {
        self.m_cum.last().copied().unwrap_or(0.0)
    }

    /// Largest deviation between `K` and the running integral of `k`.
    pub fn integration_inconsistency(&self) -> f64 {
        cumulative_simpson(&self.k, self.grid.step())
            .iter()
            .zip(&self.big_k)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Quasi-stationary pathway `K(t) = ln(1 + c G(t))`, `k(t) = c g(t) / (1 + c G(t))`.
pub fn quasi_stationary_pathway(
    c: f64,
    grid: &TimeGrid,
    economy: &EconomyParams,
) -> Result<Pathway> {
    if !(c.is_finite() && c >= 0.0) {
        return Err(Error::domain(format!(
            "multiplier ratio c must be finite and >= 0, got {c}"
        )));
    }
    let mut big_k = Vec::with_capacity(grid.len());
    let mut k = Vec::with_capacity(grid.len());
    for t in grid.times() {
        let cg = c * integrated_ggdp(t, economy);
        big_k.push(cg.ln_1p());
        k.push(c * ggdp(t, economy) / (1.0 + cg));
    }
    let heuristic = economy.sigma() > 0.0 || economy.delta > 0.0;
    Ok(Pathway::assemble(
        *grid,
        big_k,
        k,
        economy,
        PathwayKind::QuasiStationary,
        heuristic,
    ))
}

/// Constant decarbonization rate pathway, `K(t) = k t`.
pub fn constant_rate_pathway(
    k_const: f64,
    grid: &TimeGrid,
    economy: &EconomyParams,
) -> Result<Pathway> {
    if !(k_const.is_finite() && k_const >= 0.0) {
        return Err(Error::domain(format!(
            "constant rate must be finite and >= 0, got {k_const}"
        )));
    }
    let big_k = grid.map(|t| k_const * t);
    let k = vec![k_const; grid.len()];
    Ok(Pathway::assemble(
        *grid,
        big_k,
        k,
        economy,
        PathwayKind::ConstantRate,
        false,
    ))
}

/// Multiplier identified by a cumulative-emissions goal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierSolution {
    /// `c = λ1 μ0 / λ2`, 1 / trillion $.
    pub c: f64,
    /// `λ1 / λ2 = c / μ0`, 1 / Gt CO2.
    pub lambda_ratio: f64,
    /// Cumulative emissions minus goal, Gt CO2.
    pub residual: f64,
    pub iterations: usize,
}

/// Search limits for [`solve_multiplier_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Largest admissible `c`, 1 / trillion $.
    pub c_max: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            c_max: 1e9,
            max_iter: 200,
        }
    }
}

/// Residual tolerance for goal matching, Gt CO2.
pub fn goal_tolerance(goal: f64) -> f64 {
    (1e-9 * goal).max(1e-6)
}

pub fn solve_multiplier(
    goal: f64,
    grid: &TimeGrid,
    economy: &EconomyParams,
) -> Result<MultiplierSolution> {
    solve_multiplier_with(goal, grid, economy, SolverOptions::default())
}

/// Finds `c > 0` such that the quasi-stationary pathway meets `goal` (Gt CO2).
pub fn solve_multiplier_with(
    goal: f64,
    grid: &TimeGrid,
    economy: &EconomyParams,
    options: SolverOptions,
) -> Result<MultiplierSolution> {
    if !(goal.is_finite() && goal > 0.0) {
        return Err(Error::domain(format!(
            "cumulative goal must be finite and > 0, got {goal}"
        )));
    }
    let bau = grid.map(|t| emissions(t, 0.0, economy));
    let gg = grid.map(|t| integrated_ggdp(t, economy));
    let bau_total = simpson(&bau, grid.step());
    if goal >= bau_total {
        return Err(Error::Infeasible(format!(
            "goal {goal} Gt CO2 is not below business-as-usual cumulative emissions {bau_total} Gt CO2"
        )));
    }
    let tol = goal_tolerance(goal);
    let residual = |ln_c: f64| residual_for(ln_c, &bau, &gg, grid.step(), goal);

    let ln10 = std::f64::consts::LN_10;
    let ln_c_max = options.c_max.ln();
    let mut lo = 1e-12_f64.ln();
    let mut f_lo = residual(lo);
    while f_lo < 0.0 {
        if f_lo.abs() <= tol {
            return Ok(solution(lo.exp(), economy, f_lo, 0));
        }
        lo -= ln10;
        if lo < -690.0 {
            return Err(Error::Solver("could not bracket c from below".into()));
        }
        f_lo = residual(lo);
    }
    let mut hi = lo;
    let mut f_hi = f_lo;
    while f_hi > 0.0 {
        if f_hi <= tol {
            return Ok(solution(hi.exp(), economy, f_hi, 0));
        }
        let next = (hi + ln10).min(ln_c_max);
        if next <= hi {
            return Err(Error::Infeasible(format!(
                "goal {goal} Gt CO2 needs c above c_max = {}",
                options.c_max
            )));
        }
        let f_next = residual(next);
        if f_next > f_hi {
            return Err(Error::Solver(format!(
                "cumulative emissions not decreasing in c between {} and {}",
                hi.exp(),
                next.exp()
            )));
        }
        lo = hi;
        hi = next;
        f_hi = f_next;
    }
    let root = brent(
        residual,
        lo,
        hi,
        RootTolerance {
            x_abs: 1e-15,
            f_abs: 0.5 * tol,
            max_iter: options.max_iter,
        },
    )?;
    if root.fx.abs() > tol {
        return Err(Error::Solver(format!(
            "multiplier residual {} exceeds tolerance {tol}",
            root.fx
        )));
    }
    Ok(solution(root.x.exp(), economy, root.fx, root.iterations))
}

fn residual_for(ln_c: f64, bau: &[f64], gg: &[f64], step: f64, goal: f64) -> f64 {
    let c = ln_c.exp();
    let m: Vec<f64> = bau.iter().zip(gg).map(|(m, g)| m / (1.0 + c * g)).collect();
    simpson(&m, step) - goal
}

fn solution(
    c: f64,
    economy: &EconomyParams,
    residual: f64,
    iterations: usize,
) -> MultiplierSolution {
    MultiplierSolution {
        c,
        lambda_ratio: c / economy.mu0,
        residual,
        iterations,
    }
}

/// Solves for the multiplier and returns the matching quasi-stationary pathway.
pub fn quasi_stationary_for_goal(
    goal: f64,
    grid: &TimeGrid,
    economy: &EconomyParams,
) -> Result<(Pathway, MultiplierSolution)> {
    let sol = solve_multiplier(goal, grid, economy)?;
    Ok((quasi_stationary_pathway(sol.c, grid, economy)?, sol))
}

/// Constant decarbonization rate meeting `goal` (Gt CO2) over the grid horizon,
/// from the closed form `m0 (1 − e^{−χT}) / χ`.
pub fn solve_constant_rate(goal: f64, grid: &TimeGrid, economy: &EconomyParams) -> Result<f64> {
    if !(goal.is_finite() && goal > 0.0) {
        return Err(Error::domain(format!(
            "cumulative goal must be finite and > 0, got {goal}"
        )));
    }
    let horizon = grid.horizon();
    let tol = goal_tolerance(goal);
    let residual = |k: f64| constant_rate_cumulative(k, horizon, economy) - goal;
    let f0 = residual(0.0);
    if f0.abs() <= tol {
        return Ok(0.0);
    }
    if f0 < 0.0 {
        return Err(Error::Infeasible(format!(
            "goal {goal} Gt CO2 exceeds business-as-usual cumulative emissions {} Gt CO2",
            f0 + goal
        )));
    }
    let mut hi = 0.1;
    while residual(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e3 {
            return Err(Error::Infeasible(format!(
                "goal {goal} Gt CO2 needs a constant rate above 1000 / year"
            )));
        }
    }
    let root = brent(
        residual,
        0.0,
        hi,
        RootTolerance {
            x_abs: 1e-15,
            f_abs: 0.5 * tol,
            max_iter: 200,
        },
    )?;
    if root.fx.abs() > tol {
        return Err(Error::Solver(format!(
            "constant-rate residual {} exceeds tolerance {tol}",
            root.fx
        )));
    }
    Ok(root.x)
}

/// Business-as-usual cumulative emissions over the grid, Gt CO2.
pub fn bau_total(grid: &TimeGrid, economy: &EconomyParams) -> f64 {
    bau_cumulative(grid, economy)
}
