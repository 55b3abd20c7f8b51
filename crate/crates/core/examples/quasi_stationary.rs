//! Solves the minimum-expenditure pathway for a 300 PgC goal at three growth
//! rates and prints decarbonization rate and emissions every 20 years.

use co2_pathways::economy::{EconomyParams, TimeGrid};
use co2_pathways::pathway::quasi_stationary_for_goal;
use co2_pathways::units::convert_pgc_gtco2;

fn main() -> Result<(), co2_pathways::Error> {
    let grid = TimeGrid::new(100.0, 0.05)?;
    let goal = convert_pgc_gtco2(300.0);
    for r in [0.012, 0.024, 0.036] {
        let economy = EconomyParams::default().with_growth_rate(r);
        let (path, sol) = quasi_stationary_for_goal(goal, &grid, &economy)?;
        println!(
            "r = {r}: c = {:.4e} per trillion $, M(T) = {:.3} Gt",
            sol.c,
            path.total_emissions()
        );
        for t in (0..=100).step_by(20) {
            let i = grid.index_of(t as f64).unwrap();
            println!(
                "  t = {t:>3}  k = {:.4}/yr  m = {:6.2} Gt/yr",
                path.k()[i],
                path.m()[i]
            );
        }
    }
    Ok(())
}
