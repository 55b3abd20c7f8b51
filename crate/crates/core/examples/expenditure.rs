//! Annual expenditures and burden along the 600 PgC pathway, split into the
//! cost of lowering intensity and the cost of keeping pace with growth.

use co2_pathways::analysis::cost_fraction;
use co2_pathways::economy::{EconomyParams, TimeGrid};
use co2_pathways::expenditure::discounted_total;
use co2_pathways::mac::{carbon_price, MacCurve};
use co2_pathways::pathway::quasi_stationary_for_goal;
use co2_pathways::units::convert_pgc_gtco2;

fn main() -> Result<(), co2_pathways::Error> {
    let grid = TimeGrid::new(100.0, 0.05)?;
    let economy = EconomyParams::default().with_delta(0.03);
    let curve = MacCurve::default();
    let (path, _) = quasi_stationary_for_goal(convert_pgc_gtco2(600.0), &grid, &economy)?;
    let series = discounted_total(&path, &economy, &curve)?;

    println!(
        "{:>5} {:>10} {:>12} {:>12} {:>9}",
        "t", "price", "P_mu", "P_g", "burden"
    );
    for t in (0..=100).step_by(10) {
        let i = grid.index_of(t as f64).unwrap();
        println!(
            "{t:>5} {:>10.1} {:>12.1} {:>12.1} {:>9.5}",
            carbon_price(path.big_k()[i], &curve),
            series.p_mu[i],
            series.p_g[i],
            series.burden[i]
        );
    }
    println!("discounted E(T) = {:.0} billion $", series.final_total());
    println!(
        "cost fraction   = {:.2e}",
        cost_fraction(&path, &economy, &curve)?
    );
    Ok(())
}
