//! An independent nonlinear economy used to certify the first-order map.
//!
//! CES utility and production, Cournot pricing and the full income loop are
//! solved exactly before and after a shock; the log-changes must approach the
//! displacement solution as the shock shrinks.

mod accuracy;
mod equilibrium;
mod parametric;

pub use accuracy::{first_order_accuracy, AccuracyReport, AccuracyRow};
pub use equilibrium::{solve_equilibrium, EquilibriumState, SolverOptions};
pub use parametric::{calibrate_parametric, ElasticityRule, ParametricEconomy};
