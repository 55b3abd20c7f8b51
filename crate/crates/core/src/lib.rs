//! Analytical model of global CO2 mitigation expenditures and of
//! minimum-expenditure ("quasi-stationary") decarbonization pathways that meet
//! a cumulative-emissions goal.
//!
//! * [`economy`]: GGDP growth, exogenous decarbonization, emissions.
//! * [`mac`]: marginal abatement cost curve and its least-squares fit.
//! * [`expenditure`]: annual and discounted expenditures, burden.
//! * [`pathway`]: quasi-stationary and constant-rate pathways and their solvers,
//!   plus the regularized Euler–Lagrange ODE.
//! * [`analysis`]: cost curves, cost fraction power law, delay comparison.
//! * [`config`], [`sweep`], [`table`]: scenario files, sweeps and CSV output.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod config;
pub mod economy;
pub mod error;
pub mod expenditure;
pub mod mac;
pub mod numerics;
pub mod pathway;
pub mod sweep;
pub mod table;
pub mod units;

pub use error::{Error, Result};
