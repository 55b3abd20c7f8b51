//! The regularized Euler–Lagrange equation in `x = e^{K}`,
//!
//! `ẋ = (λ1 μ0/λ2) e^{−σt} g(t) − ((δ+σ) β/λ2) e^{−(δ+σ)t} g(t) x^ν`, `x(0) = 1`,
//!
//! integrated with classical RK4, and its first-order expansion in small `σ`.
//!
//! Units: `λ1` prices cumulative emissions in billion $ / Gt CO2 and `β` is
//! taken as `α μ0` in billion $ · year / trillion $, so the decreasing-solution
//! threshold compares `λ1` with `σ α` directly (see [`decreasing_threshold`]).
//! The `e^{−γt}` regularization terms are dropped, which requires `γ t ≫ 1`.

use crate::economy::{ggdp, integrated_deflated_ggdp, EconomyParams, TimeGrid};
use crate::error::{Error, Result};
use crate::mac::MacCurve;
use crate::units::TRILLION_TO_BILLION;

/// RK4 solution of the evolution equation for `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ElOdeSolution {
    pub grid: TimeGrid,
    /// `x(t_i)` for every node reached; shorter than the grid if integration stopped.
    pub x: Vec<f64>,
    /// Time at which `x` left the positive half-line, if it did.
    pub terminated_at: Option<f64>,
    /// `e^{−γ Δt}`: largest dropped regularization weight on the first step.
    pub neglected_weight: f64,
}

impl ElOdeSolution {
    /// Integrated decarbonization rate `K = ln x` at the nodes reached.
    pub fn big_k(&self) -> Vec<f64> {
        self.x.iter().map(|x| x.ln()).collect()
    }

    pub fn completed(&self) -> bool {
        self.terminated_at.is_none()
    }
}

fn el_beta(curve: &MacCurve) -> f64 {
    curve.beta() * TRILLION_TO_BILLION
}

/// Value of `λ1` (billion $ / Gt CO2) below which the small-`σ` solution
/// decreases from `x(0) = 1`: `σ α`.
pub fn decreasing_threshold(economy: &EconomyParams, curve: &MacCurve) -> f64 {
    economy.sigma() * curve.alpha
}

pub fn integrate_el_ode(
    lambda1: f64,
    lambda2: f64,
    gamma: f64,
    economy: &EconomyParams,
    curve: &MacCurve,
    grid: &TimeGrid,
) -> Result<ElOdeSolution> {
    if !(lambda2.is_finite() && lambda2 > 0.0) {
        return Err(Error::domain(format!(
            "lambda2 must be finite and > 0, got {lambda2}"
        )));
    }
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::domain(format!(
            "gamma must be finite and > 0, got {gamma}"
        )));
    }
    if !lambda1.is_finite() {
        return Err(Error::domain("lambda1 must be finite"));
    }
    let sigma = economy.sigma();
    let rho = economy.rho();
    let source = lambda1 * economy.mu0 / lambda2;
    let sink = rho * el_beta(curve) / lambda2;
    let nu = curve.nu;
    let rhs = |t: f64, x: f64| {
        let g = ggdp(t, economy);
        source * (-sigma * t).exp() * g - sink * (-rho * t).exp() * g * x.powf(nu)
    };

    let h = grid.step();
    let mut x = Vec::with_capacity(grid.len());
    x.push(1.0);
    let mut terminated_at = None;
    for i in 0..grid.intervals() {
        let t = grid.time(i);
        let y = x[i];
        let k1 = rhs(t, y);
        let y2 = y + 0.5 * h * k1;
        if !(y2 > 0.0) {
            terminated_at = Some(t);
            break;
        }
        let k2 = rhs(t + 0.5 * h, y2);
        let y3 = y + 0.5 * h * k2;
        if !(y3 > 0.0) {
            terminated_at = Some(t);
            break;
        }
        let k3 = rhs(t + 0.5 * h, y3);
        let y4 = y + h * k3;
        if !(y4 > 0.0) {
            terminated_at = Some(t);
            break;
        }
        let k4 = rhs(t + h, y4);
        let next = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if !(next > 0.0) {
            terminated_at = Some(grid.time(i + 1));
            break;
        }
        x.push(next);
    }
    Ok(ElOdeSolution {
        grid: *grid,
        x,
        terminated_at,
        neglected_weight: (-gamma * h).exp(),
    })
}

/// First-order expansion of the `δ = 0` solution in small `σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallSigmaExpansion {
    pub grid: TimeGrid,
    /// `x0 = 1 + (λ1 μ0/λ2) N(t)`, `N(t) = ∫_0^t e^{−σs} g(s) ds`.
    pub x0: Vec<f64>,
    /// `x1 = −β / ((ν+1) λ1 μ0) [(1 + (λ1 μ0/λ2) N)^{ν+1} − 1]`.
    pub x1: Vec<f64>,
    /// `x0 + σ x1`.
    pub x_approx: Vec<f64>,
    /// `1 + (μ0/λ2)(λ1 − σα) N`, valid while `(λ1 μ0/λ2) N ≪ 1`.
    pub x_linear: Vec<f64>,
    /// `σ > 0.05`: the expansion parameter is not small.
    pub sigma_warning: bool,
}

pub fn small_sigma_expansion(
    lambda1: f64,
    lambda2: f64,
    economy: &EconomyParams,
    curve: &MacCurve,
    grid: &TimeGrid,
) -> Result<SmallSigmaExpansion> {
    if !(lambda2.is_finite() && lambda2 > 0.0) {
        return Err(Error::domain(format!(
            "lambda2 must be finite and > 0, got {lambda2}"
        )));
    }
    if !lambda1.is_finite() {
        return Err(Error::domain("lambda1 must be finite"));
    }
    let sigma = economy.sigma();
    let beta = el_beta(curve);
    let nu = curve.nu;
    let a = lambda1 * economy.mu0 / lambda2;
    let n_of_t = grid.map(|t| integrated_deflated_ggdp(t, economy));
    let x0: Vec<f64> = n_of_t.iter().map(|n| 1.0 + a * n).collect();
    let x1: Vec<f64> = n_of_t
        .iter()
        .map(|&n| {
            let an = a * n;
            if an.abs() < 1e-12 {
                // λ1 → 0 limit, with the first correction in a N
                -beta / lambda2 * n * (1.0 + 0.5 * nu * an)
            } else {
                -beta / ((nu + 1.0) * lambda1 * economy.mu0) * ((1.0 + an).powf(nu + 1.0) - 1.0)
            }
        })
        .collect();
    let x_approx = x0.iter().zip(&x1).map(|(a0, a1)| a0 + sigma * a1).collect();
    let x_linear = n_of_t
        .iter()
        .map(|n| 1.0 + economy.mu0 / lambda2 * (lambda1 - sigma * curve.alpha) * n)
        .collect();
    Ok(SmallSigmaExpansion {
        grid: *grid,
        x0,
        x1,
        x_approx,
        x_linear,
        sigma_warning: sigma > 0.05,
    })
}
