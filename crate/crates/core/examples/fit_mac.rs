//! Fits the MAC curve to the bundled synthetic data file and reports the
//! carbon price implied by halving emissions intensity.
//!
//! cargo run --example fit_mac [path/to/data.csv]

use std::path::PathBuf;

use co2_pathways::config::read_mac_data;
use co2_pathways::economy::EconomyParams;
use co2_pathways::mac::{carbon_price, fit_mac};

fn main() -> Result<(), co2_pathways::Error> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/synthetic_mac.csv")
        });
    let points = read_mac_data(&path)?;
    let economy = EconomyParams::default();
    let fit = fit_mac(&points, economy.m0(), economy.mu0)?;

    println!("{} points from {}", fit.n_points, path.display());
    println!(
        "alpha = {:.3} +/- {:.3} $/tCO2",
        fit.curve.alpha, fit.alpha_se
    );
    println!("nu    = {:.3} +/- {:.3}", fit.curve.nu, fit.nu_se);
    println!(
        "R^2   = {:.4}, residual se (ln) = {:.4}",
        fit.r_squared, fit.residual_se
    );
    println!(
        "price at half intensity: {:.1} $/tCO2",
        carbon_price(2f64.ln(), &fit.curve)
    );
    Ok(())
}
