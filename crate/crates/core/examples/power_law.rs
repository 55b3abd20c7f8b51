//! Cost fraction against cumulative goal and its power-law fit.

use co2_pathways::analysis::{fit_power_law, DEFAULT_POWER_LAW_GOALS_PGC};
use co2_pathways::economy::{EconomyParams, TimeGrid};
use co2_pathways::mac::MacCurve;

fn main() -> Result<(), co2_pathways::Error> {
    let grid = TimeGrid::new(100.0, 0.05)?;
    let curve = MacCurve::default();
    for delta in [0.0, 0.03] {
        let economy = EconomyParams::default().with_delta(delta);
        let fit = fit_power_law(&DEFAULT_POWER_LAW_GOALS_PGC, &grid, &economy, &curve)?;
        println!(
            "delta = {delta}: f = {:.3e} (M/1000 PgC)^-{:.3}, R^2 = {:.4}",
            fit.f1, fit.n, fit.r_squared
        );
        for (goal, f) in &fit.points {
            println!("  {goal:>5} PgC  f = {f:.3e}");
        }
        println!(
            "  halving the goal multiplies cost by {:.2}",
            fit.halving_factor()
        );
    }
    Ok(())
}
