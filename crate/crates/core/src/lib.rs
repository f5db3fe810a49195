//! General-equilibrium displacement model of environmental taxation under
//! Cournot oligopoly with price discrimination between residential and
//! industrial energy buyers.
//!
//! The pipeline is: load a [`BenchmarkEconomy`], [`calibrate`] it into
//! [`DerivedParameters`], [`solve`] a [`PolicyShock`] into a
//! [`Displacement`], and [`decompose`] the result into welfare terms.
//! [`policy`] designs shocks that meet budget and emission constraints, and
//! [`oracle`] certifies the first-order map against an exact nonlinear economy.

pub mod calibration;
pub mod competition;
pub mod displacement;
pub mod economy;
pub mod error;
pub mod linear_system;
pub mod oracle;
pub mod policy;
pub mod report;
pub mod shock;
pub mod tolerance;
pub mod welfare;

pub use calibration::{calibrate, CalibrationMode, CalibrationOptions};
pub use competition::CompetitionIndex;
pub use displacement::{solve, Displacement, Endogenous};
pub use economy::{validate_benchmark, BenchmarkEconomy, CanonicalEconomy, DerivedParameters};
pub use error::{Error, Result};
pub use shock::{Instrument, PolicyShock};
pub use welfare::{check_theorems, decompose, TheoremReport, WelfareDecomposition};
