//! Derived studies: expenditure against cumulative emissions for constant
//! rates, the discounted cost fraction and its power-law dependence on the
//! goal, early versus delayed mitigation, and warming implied by a goal.

use crate::economy::{constant_rate_cumulative, EconomyParams, TimeGrid};
use crate::error::{Error, Result};
use crate::expenditure::{constant_k_closed_form, discounted_total, ExpenditureSeries};
use crate::mac::MacCurve;
use crate::numerics::{exp_integral, linear_least_squares, simpson};
use crate::pathway::{
    constant_rate_pathway, quasi_stationary_for_goal, solve_constant_rate, MultiplierSolution,
    Pathway,
};
use crate::units::{convert_pgc_gtco2, BILLION_TO_TRILLION};

/// Reference goal of the cost power law, PgC.
pub const REFERENCE_GOAL_PGC: f64 = 1000.0;

/// Default goals used when fitting the power law, PgC.
pub const DEFAULT_POWER_LAW_GOALS_PGC: [f64; 5] = [300.0, 450.0, 600.0, 750.0, 900.0];

/// Mean warming per 1000 PgC, K.
pub const DEFAULT_TCRE: f64 = 1.65;

/// One point of the expenditure / cumulative-emissions curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostCurvePoint {
    /// Constant decarbonization rate, 1/year.
    pub k_const: f64,
    /// Cumulative emissions, Gt CO2.
    pub m: f64,
    /// Discounted expenditure, billion $.
    pub e: f64,
}

/// `(M(T), E(T))` for each constant rate, both from closed forms.
pub fn cost_curve(
    k_values: &[f64],
    horizon: f64,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> Result<Vec<CostCurvePoint>> {
    if let Some(k) = k_values.iter().find(|k| !(k.is_finite() && **k >= 0.0)) {
        return Err(Error::domain(format!(
            "decarbonization rates must be >= 0, got {k}"
        )));
    }
    if k_values.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain(
            "decarbonization rates must be sorted ascending",
        ));
    }
    Ok(k_values
        .iter()
        .map(|&k| CostCurvePoint {
            k_const: k,
            m: constant_rate_cumulative(k, horizon, economy),
            e: constant_k_closed_form(k, horizon, economy, curve),
        })
        .collect())
}

/// `n` evenly spaced rates from `k_min` to `k_max` inclusive.
pub fn rate_grid(k_min: f64, k_max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![k_min],
        _ => (0..n)
            .map(|i| k_min + (k_max - k_min) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Second divided differences of `E` over `M`, ordered by increasing `M`.
/// All positive means the curve is convex.
pub fn second_divided_differences(points: &[CostCurvePoint]) -> Vec<f64> {
    let mut pts: Vec<(f64, f64)> = points.iter().map(|p| (p.m, p.e)).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.windows(3)
        .map(|w| {
            let s1 = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
            let s2 = (w[2].1 - w[1].1) / (w[2].0 - w[1].0);
            2.0 * (s2 - s1) / (w[2].0 - w[0].0)
        })
        .collect()
}

fn require_nu_not_one(curve: &MacCurve) -> Result<()> {
    if (curve.nu - 1.0).abs() < 1e-12 {
        return Err(Error::domain("long-horizon approximation needs nu != 1"));
    }
    Ok(())
}

/// Long-horizon expenditure as a function of cumulative emissions.
///
/// With `e^{−χT} ≪ 1`, `M ≅ m0/χ`, so `k = m0/M + r − σ`; substituting into
/// `E ≅ β g0 (k + r/(ν−1)) (e^{((ν−1)k + r − ρ)T} − 1) / ((ν−1)k + r − ρ)`.
pub fn long_horizon_approx(
    m: f64,
    horizon: f64,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> Result<f64> {
    require_nu_not_one(curve)?;
    if !(m > 0.0) {
        return Err(Error::domain(format!(
            "cumulative emissions must be > 0, got {m}"
        )));
    }
    let k = economy.m0() / m + economy.r - economy.sigma();
    let nu1 = curve.nu - 1.0;
    let scale = curve.beta() / BILLION_TO_TRILLION * economy.g0;
    Ok(scale * (k + economy.r / nu1) * exp_integral(nu1 * k + economy.r - economy.rho(), horizon))
}

/// The growth factor of [`long_horizon_approx`] frozen at its `k = 0` value,
/// `β g0 (e^{(r−ρ)T} − 1)/(r − ρ) · (m0/M + r ν/(ν−1) − σ)`.
///
/// Linear in `1/M`, so convex with slope growing as `M` shrinks, but it omits
/// the exponential dependence on `k` and underestimates expenditure badly
/// for large rates.
pub fn long_horizon_linear_form(
    m: f64,
    horizon: f64,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> Result<f64> {
    require_nu_not_one(curve)?;
    if !(m > 0.0) {
        return Err(Error::domain(format!(
            "cumulative emissions must be > 0, got {m}"
        )));
    }
    let scale = curve.beta() / BILLION_TO_TRILLION * economy.g0;
    let nu = curve.nu;
    Ok(scale
        * exp_integral(economy.r - economy.rho(), horizon)
        * (economy.m0() / m + economy.r * nu / (nu - 1.0) - economy.sigma()))
}

/// Discounted expenditure over discounted GGDP along a pathway.
pub fn cost_fraction(pathway: &Pathway, economy: &EconomyParams, curve: &MacCurve) -> Result<f64> {
    let series = discounted_total(pathway, economy, curve)?;
    Ok(cost_fraction_of(&series, economy))
}

fn cost_fraction_of(series: &ExpenditureSeries, economy: &EconomyParams) -> f64 {
    let grid = &series.grid;
    let discounted_ggdp = simpson(
        &grid.map(|t| (-economy.delta * t).exp() * crate::economy::ggdp(t, economy)),
        grid.step(),
    );
    series.final_total() * BILLION_TO_TRILLION / discounted_ggdp
}

/// Power law `f(M0) = f1 (M0 / M01)^{−n}` fitted in log space.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawFit {
    /// Cost fraction at the reference goal.
    pub f1: f64,
    pub n: f64,
    pub n_se: f64,
    /// Reference goal, PgC.
    pub m01: f64,
    pub r_squared: f64,
    /// `(goal in PgC, cost fraction)` pairs behind the fit.
    pub points: Vec<(f64, f64)>,
}

impl PowerLawFit {
    /// Cost multiplier for halving the goal, `2^n`.
    pub fn halving_factor(&self) -> f64 {
        2f64.powf(self.n)
    }
}

/// Fits the power law to given `(goal, f)` pairs.
pub fn fit_power_law_points(goals_pgc: &[f64], fractions: &[f64], m01: f64) -> Result<PowerLawFit> {
    if goals_pgc.len() != fractions.len() {
        return Err(Error::domain(
            "goal and cost-fraction lists differ in length",
        ));
    }
    if let Some(f) = fractions.iter().find(|f| !(**f > 0.0)) {
        return Err(Error::domain(format!(
            "cost fractions must be > 0, got {f}"
        )));
    }
    let x: Vec<f64> = goals_pgc.iter().map(|g| -(g / m01).ln()).collect();
    let y: Vec<f64> = fractions.iter().map(|f| f.ln()).collect();
    let fit = linear_least_squares(&x, &y)?;
    Ok(PowerLawFit {
        f1: fit.intercept.exp(),
        n: fit.slope,
        n_se: fit.slope_se,
        m01,
        r_squared: fit.r_squared,
        points: goals_pgc
            .iter()
            .copied()
            .zip(fractions.iter().copied())
            .collect(),
    })
}

/// Cost fraction of the quasi-stationary pathway for each goal (PgC).
pub fn cost_fractions_for_goals(
    goals_pgc: &[f64],
    grid: &TimeGrid,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> Result<Vec<(f64, MultiplierSolution)>> {
    goals_pgc
        .iter()
        .map(|&goal| {
            let (path, sol) = quasi_stationary_for_goal(convert_pgc_gtco2(goal), grid, economy)?;
            Ok((cost_fraction(&path, economy, curve)?, sol))
        })
        .collect()
}

/// Solves the quasi-stationary pathway for each goal and fits the cost power law
/// with `M01 = 1000 PgC`. Discounting follows `economy.delta`.
pub fn fit_power_law(
    goals_pgc: &[f64],
    grid: &TimeGrid,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> Result<PowerLawFit> {
    if goals_pgc.len() < 3 {
        return Err(Error::domain(format!(
            "need at least 3 goals, got {}",
            goals_pgc.len()
        )));
    }
    if let Some(g) = goals_pgc
        .iter()
        .find(|g| !(**g > 0.0 && **g <= REFERENCE_GOAL_PGC))
    {
        return Err(Error::domain(format!(
            "power-law goals must lie in (0, {REFERENCE_GOAL_PGC}] PgC, got {g}"
        )));
    }
    let fractions: Vec<f64> = cost_fractions_for_goals(goals_pgc, grid, economy, curve)?
        .into_iter()
        .map(|(f, _)| f)
        .collect();
    fit_power_law_points(goals_pgc, &fractions, REFERENCE_GOAL_PGC)
}

/// Early (quasi-stationary) and delayed (constant-rate) mitigation meeting the same goal.
#[derive(Debug, Clone)]
pub struct DelayComparison {
    pub quasi_stationary: Pathway,
    pub constant_rate: Pathway,
    pub multiplier: MultiplierSolution,
    pub k_const: f64,
    pub quasi_stationary_expenditure: ExpenditureSeries,
    pub constant_rate_expenditure: ExpenditureSeries,
    /// `b_qs(0) − b_ck(0)`: burden avoided today by delaying.
    pub present_saving: f64,
    /// `b_ck(T) − b_qs(T)`: extra burden at the horizon caused by delaying.
    pub terminal_gap: f64,
}

/// Builds both pathways for `goal` (Gt CO2) and compares their burdens.
pub fn delay_comparison(
    goal: f64,
    grid: &TimeGrid,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> Result<DelayComparison> {
    let (qs, multiplier) = quasi_stationary_for_goal(goal, grid, economy)?;
    let k_const = solve_constant_rate(goal, grid, economy)?;
    let ck = constant_rate_pathway(k_const, grid, economy)?;
    let qs_exp = discounted_total(&qs, economy, curve)?;
    let ck_exp = discounted_total(&ck, economy, curve)?;
    let last = grid.len() - 1;
    Ok(DelayComparison {
        present_saving: qs_exp.burden[0] - ck_exp.burden[0],
        terminal_gap: ck_exp.burden[last] - qs_exp.burden[last],
        quasi_stationary: qs,
        constant_rate: ck,
        multiplier,
        k_const,
        quasi_stationary_expenditure: qs_exp,
        constant_rate_expenditure: ck_exp,
    })
}

/// Warming (K) for a cumulative goal `m0_pgc` (PgC) given `tcre` in K per 1000 PgC.
pub fn warming_from_goal(m0_pgc: f64, tcre: f64, baseline_warming: f64) -> f64 {
    baseline_warming + tcre * m0_pgc / 1000.0
}
