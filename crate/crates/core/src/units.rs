//! Unit conversions used across the model.
//!
//! Every factor between the mixed unit systems lives here:
//!
//! | quantity            | unit                                  |
//! |---------------------|---------------------------------------|
//! | GGDP `g`            | trillion $ / year                     |
//! | intensity `mu`      | Gt CO2 / trillion $                   |
//! | emissions `m`       | Gt CO2 / year                         |
//! | MAC `alpha`         | billion $ / (Gt CO2 / year)           |
//! | `beta = alpha*mu0`  | years (after [`BILLION_TO_TRILLION`]) |
//! | expenditures `P`    | billion $ / year                      |
//! | discounted `E`      | billion $                             |
//! | burden `b`          | dimensionless fraction of GGDP        |
//!
//! Monetary values are constant 1990 USD; no deflator is applied anywhere.

/// billion $ -> trillion $.
pub const BILLION_TO_TRILLION: f64 = 1e-3;

/// trillion $ -> billion $.
pub const TRILLION_TO_BILLION: f64 = 1e3;

/// Molar mass ratio CO2 / C.
pub const GT_CO2_PER_PGC: f64 = 44.0 / 12.0;

/// Petagrams of carbon to gigatonnes of CO2.
pub fn convert_pgc_gtco2(pgc: f64) -> f64 {
    pgc * GT_CO2_PER_PGC
}

/// Gigatonnes of CO2 to petagrams of carbon.
pub fn convert_gtco2_pgc(gt: f64) -> f64 {
    gt / GT_CO2_PER_PGC
}
