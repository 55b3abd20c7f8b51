//! Early (quasi-stationary) against delayed (constant-rate) mitigation for a
//! 300 PgC goal: burden now versus burden at the horizon.

use co2_pathways::analysis::delay_comparison;
use co2_pathways::economy::{EconomyParams, TimeGrid};
use co2_pathways::mac::MacCurve;
use co2_pathways::units::convert_pgc_gtco2;

fn main() -> Result<(), co2_pathways::Error> {
    let grid = TimeGrid::new(100.0, 0.05)?;
    let curve = MacCurve::default();
    for r in [0.012, 0.024, 0.036] {
        let economy = EconomyParams::default().with_growth_rate(r);
        let cmp = delay_comparison(convert_pgc_gtco2(300.0), &grid, &economy, &curve)?;
        println!(
            "r = {r}: constant k = {:.4}/yr, burden saved today {:.2e}, extra burden at T {:.3}",
            cmp.k_const, cmp.present_saving, cmp.terminal_gap
        );
    }
    Ok(())
}
