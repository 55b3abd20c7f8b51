//! Integrates the evolution equation for `x = e^K` and compares it with the
//! closed-form solution (no exogenous decarbonization) and with the small-sigma
//! expansion, where solutions below the threshold multiplier decrease.

use co2_pathways::economy::{integrated_ggdp, EconomyParams, TimeGrid};
use co2_pathways::mac::MacCurve;
use co2_pathways::pathway::{decreasing_threshold, integrate_el_ode, small_sigma_expansion};

fn main() -> Result<(), co2_pathways::Error> {
    let grid = TimeGrid::new(100.0, 0.05)?;
    let curve = MacCurve::default();

    let flat = EconomyParams {
        theta: 1.0,
        ..EconomyParams::default()
    };
    let (l1, l2) = (2.7e-3, 1.0);
    let sol = integrate_el_ode(l1, l2, 50.0, &flat, &curve, &grid)?;
    let c = l1 * flat.mu0 / l2;
    let worst = sol
        .big_k()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, k)| (k / (c * integrated_ggdp(grid.time(i), &flat)).ln_1p() - 1.0).abs())
        .fold(0.0, f64::max);
    println!(
        "sigma = 0: K(T) = {:.4}, max rel deviation from ln(1 + cG) = {worst:.1e}",
        sol.big_k().last().unwrap()
    );

    let sigma = 0.01;
    let e = EconomyParams {
        theta: 1.0 - sigma / 0.024,
        delta: 0.0,
        ..EconomyParams::default()
    };
    let threshold = decreasing_threshold(&e, &curve);
    let (l1, l2) = (0.5 * threshold, 1e5);
    let sol = integrate_el_ode(l1, l2, 50.0, &e, &curve, &grid)?;
    let approx = small_sigma_expansion(l1, l2, &e, &curve, &grid)?;
    println!("sigma = {sigma}: threshold lambda1 = {threshold:.4}, using {l1:.4}");
    for t in (0..=100).step_by(25) {
        let i = grid.index_of(t as f64).unwrap();
        println!(
            "  t = {t:>3}  x = {:.6}  x0 + sigma x1 = {:.6}",
            sol.x[i], approx.x_approx[i]
        );
    }
    Ok(())
}
