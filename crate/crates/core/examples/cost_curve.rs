//! Discounted expenditure against cumulative emissions for constant
//! decarbonization rates, with the long-horizon approximation alongside.

use co2_pathways::analysis::{cost_curve, long_horizon_approx, rate_grid};
use co2_pathways::economy::EconomyParams;
use co2_pathways::mac::MacCurve;
use co2_pathways::units::convert_gtco2_pgc;

fn main() -> Result<(), co2_pathways::Error> {
    let economy = EconomyParams::default();
    let curve = MacCurve::default();
    let horizon = 100.0;
    println!(
        "{:>8} {:>10} {:>14} {:>14}",
        "k", "M [PgC]", "E [bn $]", "approx"
    );
    for p in cost_curve(&rate_grid(0.0, 0.1, 11), horizon, &economy, &curve)? {
        let approx = long_horizon_approx(p.m, horizon, &economy, &curve)?;
        println!(
            "{:>8.3} {:>10.0} {:>14.0} {:>14.0}",
            p.k_const,
            convert_gtco2_pgc(p.m),
            p.e,
            approx
        );
    }
    Ok(())
}
