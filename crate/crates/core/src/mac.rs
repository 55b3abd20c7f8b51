//! Marginal abatement cost (MAC) curve expressed in emissions intensity,
//! the carbon price it implies, and log-space estimation of its parameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::linear_least_squares;
use crate::units::BILLION_TO_TRILLION;

/// Power-law MAC `C(μ) = α / (μ / (μ0 e^{−σt}))^ν`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MacCurve {
    /// Present MAC, billion $ / (Gt CO2 / year).
    pub alpha: f64,
    /// MAC exponent.
    pub nu: f64,
    /// Reference intensity at `t = 0`, Gt CO2 / trillion $.
    pub mu0: f64,
}

impl Default for MacCurve {
    fn default() -> Self {
        Self {
            alpha: 10.4,
            nu: 2.4,
            mu0: 0.46,
        }
    }
}

impl MacCurve {
    pub fn new(alpha: f64, nu: f64, mu0: f64) -> Result<Self> {
        let curve = Self { alpha, nu, mu0 };
        curve.validate()?;
        Ok(curve)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("nu", self.nu), ("mu0", self.mu0)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// `β = α μ0` in years (`4.8e-3` for the default curve).
    pub fn beta(&self) -> f64 {
        self.alpha * self.mu0 * BILLION_TO_TRILLION
    }
}

/// One observation of a MAC curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MacDataPoint {
    /// Emissions reduction below the reference, Gt CO2 / year.
    pub reduction: f64,
    /// Marginal cost, billion $ / (Gt CO2 / year).
    pub marginal_cost: f64,
}

/// MAC at intensity `mu` and time `t`.
///
/// `mu` may exceed the business-as-usual intensity `μ0 e^{−σt}` by at most a
/// relative `1e-12`.
pub fn mac_value(mu: f64, t: f64, curve: &MacCurve, sigma: f64) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::domain(format!("intensity must be > 0, got {mu}")));
    }
    let ratio = mu / (curve.mu0 * (-sigma * t).exp());
    if ratio > 1.0 + 1e-12 {
        return Err(Error::domain(format!(
            "intensity {mu} exceeds business-as-usual intensity (ratio {ratio})"
        )));
    }
    Ok(curve.alpha / ratio.powf(curve.nu))
}

/// Carbon price `α e^{ν K}` along a pathway with integrated decarbonization `K`.
pub fn carbon_price(big_k: f64, curve: &MacCurve) -> f64 {
    curve.alpha * (curve.nu * big_k).exp()
}

/// Fitted MAC curve and regression diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacFit {
    pub curve: MacCurve,
    /// Standard error of `ln α`.
    pub ln_alpha_se: f64,
    /// First-order standard error of `α`, `α · se(ln α)`.
    pub alpha_se: f64,
    pub nu_se: f64,
    /// Residual standard error in `ln C`.
    pub residual_se: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Least-squares fit of `(α, ν)` from abatement-cost observations.
///
/// Each reduction is turned into an intensity ratio
/// `ρ = 1 − reduction / reference_emissions`; `ln C` is then regressed on
/// `−ln ρ`, giving slope `ν` and intercept `ln α`. `mu0` only labels the
/// returned curve.
pub fn fit_mac(points: &[MacDataPoint], reference_emissions: f64, mu0: f64) -> Result<MacFit> {
    if !(reference_emissions.is_finite() && reference_emissions > 0.0) {
        return Err(Error::domain(format!(
            "reference emissions must be > 0, got {reference_emissions}"
        )));
    }
    if points.len() < 2 {
        return Err(Error::RankDeficient(format!(
            "{} point(s); need at least 2",
            points.len()
        )));
    }
    let mut x = Vec::with_capacity(points.len());
    let mut y = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let ratio = 1.0 - p.reduction / reference_emissions;
        if !(ratio > 0.0) || !ratio.is_finite() {
            return Err(Error::domain(format!(
                "point {i}: reduction {} leaves intensity ratio {ratio} <= 0",
                p.reduction
            )));
        }
        if p.reduction < 0.0 {
            return Err(Error::domain(format!(
                "point {i}: negative reduction {}",
                p.reduction
            )));
        }
        if !(p.marginal_cost > 0.0) {
            return Err(Error::domain(format!(
                "point {i}: marginal cost must be > 0, got {}",
                p.marginal_cost
            )));
        }
        x.push(-ratio.ln());
        y.push(p.marginal_cost.ln());
    }
    let fit = linear_least_squares(&x, &y).map_err(|e| match e {
        Error::RankDeficient(_) => {
            Error::RankDeficient("all intensity ratios are equal".to_string())
        }
        other => other,
    })?;
    let alpha = fit.intercept.exp();
    Ok(MacFit {
        curve: MacCurve::new(alpha, fit.slope, mu0)?,
        ln_alpha_se: fit.intercept_se,
        alpha_se: alpha * fit.intercept_se,
        nu_se: fit.slope_se,
        residual_se: fit.residual_se,
        r_squared: fit.r_squared,
        n_points: fit.n,
    })
}

/// Noiseless observations of `curve` at the given intensity ratios.
pub fn synthetic_points(
    curve: &MacCurve,
    reference_emissions: f64,
    ratios: &[f64],
) -> Vec<MacDataPoint> {
    ratios
        .iter()
        .map(|&rho| MacDataPoint {
            reduction: reference_emissions * (1.0 - rho),
            marginal_cost: curve.alpha / rho.powf(curve.nu),
        })
        .collect()
}
