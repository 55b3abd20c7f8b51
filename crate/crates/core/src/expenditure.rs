//! Mitigation expenditures: the annual cost of lowering emissions intensity,
//! the annual cost of scaling existing mitigation with GGDP, their discounted
//! totals and the burden (expenditure as a fraction of GGDP).
//!
//! Expenditures are in billion $ (per year for the annual flows); the burden is
//! dimensionless. `β` from [`MacCurve::beta`] is in years, so the flows carry an
//! explicit [`TRILLION_TO_BILLION`] factor.

use crate::economy::{ggdp, EconomyParams, TimeGrid};
use crate::error::{Error, Result};
use crate::mac::MacCurve;
use crate::numerics::{cumulative_simpson, exp_integral, exp_integral_dx};
use crate::pathway::Pathway;
use crate::units::TRILLION_TO_BILLION;

/// `(e^{(ν−1)K} − 1) / (ν − 1)`, equal to `K` in the `ν → 1` limit.
fn expansion_factor(nu: f64, big_k: f64) -> f64 {
    exp_integral(nu - 1.0, big_k)
}

/// Annual expenditure from reducing emissions intensity,
/// `P_μ = β e^{−σt} g(t) k e^{(ν−1)K}`, billion $ / year.
pub fn annual_intensity_expenditure(
    t: f64,
    big_k: f64,
    k: f64,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> f64 {
    curve.beta()
        * TRILLION_TO_BILLION
        * (-economy.sigma() * t).exp()
        * ggdp(t, economy)
        * k
        * ((curve.nu - 1.0) * big_k).exp()
}

/// Annual expenditure from expanding existing mitigation as GGDP grows,
/// `P_g = β/(ν−1) e^{−σt} ġ(t) (e^{(ν−1)K} − 1)`, billion $ / year.
pub fn annual_expansion_expenditure(
    t: f64,
    big_k: f64,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> f64 {
    curve.beta()
        * TRILLION_TO_BILLION
        * (-economy.sigma() * t).exp()
        * economy.r
        * ggdp(t, economy)
        * expansion_factor(curve.nu, big_k)
}

/// Burden `b(t)`: undiscounted annual expenditure divided by GGDP.
pub fn burden(t: f64, big_k: f64, k: f64, economy: &EconomyParams, curve: &MacCurve) -> f64 {
    curve.beta()
        * (-economy.sigma() * t).exp()
        * (k * ((curve.nu - 1.0) * big_k).exp() + economy.r * expansion_factor(curve.nu, big_k))
}

/// Late-time burden `β e^{(ν−1)K − σt} (k + r/(ν−1))`, valid when `e^{(ν−1)K} ≫ 1`.
pub fn burden_late_time(
    t: f64,
    big_k: f64,
    k: f64,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> f64 {
    curve.beta()
        * ((curve.nu - 1.0) * big_k - economy.sigma() * t).exp()
        * (k + economy.r / (curve.nu - 1.0))
}

/// Whether a constant decarbonization rate `k > 0` leaves a MAC steep enough
/// for the burden to grow: `ν > 1 + (1 − θ) r / k`. Returns `false` for `k <= 0`.
pub fn burden_increasing_condition(k: f64, economy: &EconomyParams, curve: &MacCurve) -> bool {
    k > 0.0 && curve.nu > 1.0 + economy.sigma() / k
}

/// Per-node expenditure series of a pathway.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpenditureSeries {
    pub grid: TimeGrid,
    /// Annual expenditure from reducing intensity, billion $ / year.
    pub p_mu: Vec<f64>,
    /// Annual expenditure from expansion, billion $ / year.
    pub p_g: Vec<f64>,
    /// Fraction of GGDP.
    pub burden: Vec<f64>,
    /// Discounted cumulative intensity expenditure `E_μ(t)`, billion $.
    pub discounted_mu: Vec<f64>,
    /// Discounted cumulative expansion expenditure `E_g(t)`, billion $.
    pub discounted_g: Vec<f64>,
    /// `E(t) = E_μ(t) + E_g(t)`, billion $.
    pub discounted_cumulative: Vec<f64>,
}

impl ExpenditureSeries {
    /// Total annual expenditure `P = P_μ + P_g` per node.
    pub fn total(&self) -> Vec<f64> {
        self.p_mu
            .iter()
            .zip(&self.p_g)
            .map(|(a, b)| a + b)
            .collect()
    }

    /// Discounted total `E(T)` at the end of the grid.
    pub fn final_total(&self) -> f64 {
        self.discounted_cumulative.last().copied().unwrap_or(0.0)
    }
}

/// Annual expenditures, burden and discounted running totals along a pathway.
pub fn discounted_total(
    pathway: &Pathway,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> Result<ExpenditureSeries> {
    let grid = *pathway.grid();
    let n = grid.len();
    if pathway.big_k().len() != n || pathway.k().len() != n {
        return Err(Error::Grid(format!(
            "pathway series lengths ({}, {}) do not match grid length {n}",
            pathway.big_k().len(),
            pathway.k().len()
        )));
    }
    let mut p_mu = Vec::with_capacity(n);
    let mut p_g = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut disc_mu = Vec::with_capacity(n);
    let mut disc_g = Vec::with_capacity(n);
    for (i, (&big_k, &k)) in pathway.big_k().iter().zip(pathway.k()).enumerate() {
        let t = grid.time(i);
        let pm = annual_intensity_expenditure(t, big_k, k, economy, curve);
        let pg = annual_expansion_expenditure(t, big_k, economy, curve);
        let discount = (-economy.delta * t).exp();
        p_mu.push(pm);
        p_g.push(pg);
        b.push(burden(t, big_k, k, economy, curve));
        disc_mu.push(discount * pm);
        disc_g.push(discount * pg);
    }
    let discounted_mu = cumulative_simpson(&disc_mu, grid.step());
    let discounted_g = cumulative_simpson(&disc_g, grid.step());
    let discounted_cumulative = discounted_mu
        .iter()
        .zip(&discounted_g)
        .map(|(a, b)| a + b)
        .collect();
    Ok(ExpenditureSeries {
        grid,
        p_mu,
        p_g,
        burden: b,
        discounted_mu,
        discounted_g,
        discounted_cumulative,
    })
}

/// Discounted expenditure components for a constant decarbonization rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantRateExpenditure {
    /// `E_μ(T)`, billion $.
    pub intensity: f64,
    /// `E_g(T)`, billion $.
    pub expansion: f64,
}

impl ConstantRateExpenditure {
    pub fn total(&self) -> f64 {
        self.intensity + self.expansion
    }
}

/// Closed-form discounted expenditure components at horizon `T` for `K(t) = k t`.
pub fn constant_k_closed_form_parts(
    k: f64,
    horizon: f64,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> ConstantRateExpenditure {
    let scale = curve.beta() * TRILLION_TO_BILLION * economy.g0;
    let base = economy.r - economy.rho();
    let nu1 = curve.nu - 1.0;
    let a = exp_integral(nu1 * k + base, horizon);
    // (A − B) / (ν − 1), continuous at ν = 1
    let spread = if (nu1 * k * horizon).abs() < 1e-8 {
        k * exp_integral_dx(base, horizon)
    } else {
        (a - exp_integral(base, horizon)) / nu1
    };
    ConstantRateExpenditure {
        intensity: scale * k * a,
        expansion: scale * economy.r * spread,
    }
}

/// Closed-form discounted expenditure `E(T)` for constant decarbonization rate `k`.
pub fn constant_k_closed_form(
    k: f64,
    horizon: f64,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> f64 {
    constant_k_closed_form_parts(k, horizon, economy, curve).total()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathway::constant_rate_pathway;

    fn defaults() -> (EconomyParams, MacCurve) {
        (EconomyParams::default(), MacCurve::default())
    }

    #[test]
    fn intensity_expenditure_examples() {
        let (e, c) = defaults();
        assert_eq!(annual_intensity_expenditure(5.0, 0.3, 0.0, &e, &c), 0.0);
        // α m0 k with m0 = 36
        let e36 = EconomyParams {
            g0: 36.0 / 0.46,
            ..e
        };
        let p = annual_intensity_expenditure(0.0, 0.0, 0.01, &e36, &c);
        assert!((p - 3.744).abs() < 1e-12);
        let p1 = annual_intensity_expenditure(12.0, 0.4, 0.02, &e, &c);
        let p2 = annual_intensity_expenditure(12.0, 0.4, 0.04, &e, &c);
        assert!((p2 - 2.0 * p1).abs() < 1e-12 * p2);
    }

    #[test]
    fn expansion_expenditure_examples() {
        let (e, c) = defaults();
        assert_eq!(annual_expansion_expenditure(3.0, 0.0, &e, &c), 0.0);
        let flat = EconomyParams { r: 0.0, ..e };
        assert_eq!(annual_expansion_expenditure(3.0, 0.7, &flat, &c), 0.0);
        // β = 4.8e-3 exactly: α μ0 = 4.8
        let c48 = MacCurve {
            alpha: 4.8 / 0.46,
            ..c
        };
        let expected = 4.8e-3 / 1.4 * 0.024 * 77.8 * (0.28_f64.exp() - 1.0) * 1e3;
        let got = annual_expansion_expenditure(0.0, 0.2, &e, &c48);
        assert!((got - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn expansion_expenditure_nu_one_limit() {
        let (e, c) = defaults();
        let at_one = MacCurve { nu: 1.0, ..c };
        let near = MacCurve {
            nu: 1.0 + 1e-7,
            ..c
        };
        let a = annual_expansion_expenditure(10.0, 0.8, &e, &at_one);
        let b = annual_expansion_expenditure(10.0, 0.8, &e, &near);
        assert!((a - b).abs() / a < 1e-6);
        let expected = c.beta() * 1e3 * (-e.sigma() * 10.0).exp() * e.r * ggdp(10.0, &e) * 0.8;
        assert!((a - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn burden_examples() {
        let (e, c) = defaults();
        assert_eq!(burden(0.0, 0.0, 0.0, &e, &c), 0.0);
        let b = burden(0.0, 0.0, 0.02, &e, &c);
        assert!((b - 10.4 * 0.46 * 0.02 * 1e-3).abs() < 1e-18);
        assert!((b - 9.6e-5).abs() < 1e-6);
        assert!(b < 1e-4);
    }

    #[test]
    fn burden_late_time_form() {
        let (e, c) = defaults();
        // e^{(ν−1)K} > 100 needs K > ln(100)/1.4 ≈ 3.29
        for &(t, big_k, k) in &[(60.0, 3.4, 0.05), (90.0, 4.0, 0.02), (100.0, 5.0, 0.01)] {
            assert!(((c.nu - 1.0) * big_k).exp() > 100.0);
            let exact = burden(t, big_k, k, &e, &c);
            let approx = burden_late_time(t, big_k, k, &e, &c);
            assert!((exact - approx).abs() / exact < 0.01);
        }
    }

    #[test]
    fn burden_is_total_expenditure_over_ggdp() {
        let (e, c) = defaults();
        for &(t, big_k, k) in &[(0.0, 0.0, 0.02), (17.0, 0.6, 0.07), (100.0, 3.0, 0.01)] {
            let p = annual_intensity_expenditure(t, big_k, k, &e, &c)
                + annual_expansion_expenditure(t, big_k, &e, &c);
            let ratio = p / TRILLION_TO_BILLION / ggdp(t, &e);
            let b = burden(t, big_k, k, &e, &c);
            assert!((ratio - b).abs() <= 1e-12 * b.max(1e-300));
        }
    }

    #[test]
    fn increasing_condition_examples() {
        let c = MacCurve::default();
        let e = EconomyParams {
            r: 0.04,
            theta: 0.75,
            ..EconomyParams::default()
        };
        assert!(burden_increasing_condition(0.02, &e, &c));
        let flat = MacCurve { nu: 1.0, ..c };
        assert!(!burden_increasing_condition(0.02, &e, &flat));
        // ν = 1 + σ/k exactly
        let boundary = MacCurve { nu: 1.5, ..c };
        assert!(!burden_increasing_condition(0.02, &e, &boundary));
        assert!(!burden_increasing_condition(0.0, &e, &c));
    }

    #[test]
    fn closed_form_zero_rate() {
        let (e, c) = defaults();
        assert_eq!(constant_k_closed_form(0.0, 100.0, &e, &c), 0.0);
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let c = MacCurve::default();
        let e = EconomyParams {
            r: 0.024,
            theta: 1.0 - 0.01 / 0.024,
            delta: 0.03,
            ..EconomyParams::default()
        };
        let grid = TimeGrid::new(100.0, 0.05).unwrap();
        let path = constant_rate_pathway(0.02, &grid, &e).unwrap();
        let series = discounted_total(&path, &e, &c).unwrap();
        let closed = constant_k_closed_form(0.02, 100.0, &e, &c);
        assert!((series.final_total() - closed).abs() / closed < 1e-6);
    }

    #[test]
    fn closed_form_nu_one_continuity() {
        let e = EconomyParams {
            delta: 0.02,
            ..EconomyParams::default()
        };
        let at = MacCurve {
            nu: 1.0,
            ..MacCurve::default()
        };
        let near = MacCurve {
            nu: 1.0 + 1e-6,
            ..MacCurve::default()
        };
        let a = constant_k_closed_form(0.03, 80.0, &e, &at);
        let b = constant_k_closed_form(0.03, 80.0, &e, &near);
        assert!((a - b).abs() / a < 1e-5);
    }

    #[test]
    fn large_rate_expansion_ratio() {
        let (e, c) = defaults();
        let parts = constant_k_closed_form_parts(0.1, 200.0, &e, &c);
        let predicted = e.r / ((c.nu - 1.0) * 0.1);
        let ratio = parts.expansion / parts.intensity;
        assert!((ratio - predicted).abs() / predicted < 0.05);
    }

    #[test]
    fn short_horizon_asymptotics() {
        let (e, c) = defaults();
        let e = EconomyParams { delta: 0.03, ..e };
        let m0 = e.m0();
        for &(k, t) in &[(0.005, 1.0), (0.01, 2.0), (0.002, 0.5)] {
            let parts = constant_k_closed_form_parts(k, t, &e, &c);
            let lin = c.alpha * m0 * k * t;
            let quad = 0.5 * c.alpha * m0 * k * e.r * t * t;
            assert!((parts.intensity - lin).abs() / lin < 0.02);
            assert!((parts.expansion - quad).abs() / quad < 0.05);
        }
    }

    #[test]
    fn heavy_discounting_concentrates_early_spending() {
        let (e, c) = defaults();
        let e = EconomyParams { delta: 10.0, ..e };
        let grid = TimeGrid::new(100.0, 0.05).unwrap();
        let path = constant_rate_pathway(0.03, &grid, &e).unwrap();
        let series = discounted_total(&path, &e, &c).unwrap();
        let one_year = grid.index_of(1.0).unwrap();
        let e1 = series.discounted_cumulative[one_year];
        let total = series.final_total();
        // remaining mass after year one is bounded by e^{-δ} times the undiscounted flow
        let tail_bound = (-10.0_f64).exp() * simpson_undiscounted(&series);
        assert!(total <= e1 + tail_bound);
        assert!(total > 0.0);
    }

    fn simpson_undiscounted(series: &ExpenditureSeries) -> f64 {
        crate::numerics::simpson(&series.total(), series.grid.step())
    }

    #[test]
    fn zero_pathway_costs_nothing() {
        let (e, c) = defaults();
        let grid = TimeGrid::new(50.0, 0.5).unwrap();
        let path = constant_rate_pathway(0.0, &grid, &e).unwrap();
        let s = discounted_total(&path, &e, &c).unwrap();
        assert!(s.discounted_cumulative.iter().all(|&v| v == 0.0));
        assert!(s.burden.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn intensity_burden_slope_sign() {
        // d/dt of the intensity term has the sign of (ν−1)k − σ
        let c = MacCurve::default();
        let e = EconomyParams {
            r: 0.04,
            theta: 0.75,
            ..EconomyParams::default()
        };
        let sigma = e.sigma();
        for &k in &[0.002, 0.005, 0.01, 0.05] {
            let term = |t: f64| c.beta() * (-sigma * t).exp() * k * ((c.nu - 1.0) * k * t).exp();
            let h = 0.05;
            for &t in &[0.0, 20.0, 60.0] {
                let fd = (term(t + h) - term(t)) / h;
                let expected = ((c.nu - 1.0) * k - sigma).signum();
                assert_eq!(fd.signum(), expected, "k={k} t={t}");
            }
        }
    }
}
