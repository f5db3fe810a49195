//! Numerical tolerances shared by the solvers, validators and golden comparisons.
//!
//! Exact algebraic identities are held to near machine precision; identities
//! that pass through the calibration are held to a relative tolerance; table
//! comparisons allow for the rounding of the published inputs and outputs.

/// Structural identities of a displacement (capital constraint, market clearing).
pub const STRUCTURAL: f64 = 1e-12;

/// Identities that go through the calibration (income, share sums, FOC residuals).
pub const CALIBRATION_REL: f64 = 1e-9;

/// Closed form against the dense 14x14 solve, relative per component.
pub const DUAL_PATH_REL: f64 = 1e-10;

/// Linearity of the shock to displacement map.
pub const SUPERPOSITION: f64 = 1e-12;

/// Residual norm that a nonlinear equilibrium must reach.
pub const EQUILIBRIUM_RESIDUAL: f64 = 1e-10;

/// Constraint residuals |T_hat| and |Z_hat - target| after policy design.
pub const CONSTRAINT: f64 = 1e-9;

/// Printed hats are within this many percentage points.
pub const HAT_PP: f64 = 0.02;

/// Printed money cells are within max(MONEY_ABS, MONEY_REL * |printed|), million $.
pub const MONEY_ABS: f64 = 5.0;
pub const MONEY_REL: f64 = 0.015;

/// Printed competition index and elasticities.
pub const PARAM_ABS: f64 = 0.01;

/// Richardson ratio band for an O(h^2) discrepancy, and the floor below
/// which both discrepancies count as converged.
pub const RICHARDSON_LOW: f64 = 3.5;
pub const RICHARDSON_HIGH: f64 = 4.5;
pub const ORACLE_FLOOR: f64 = 1e-8;

/// Money tolerance for a printed value.
pub fn money(printed: f64) -> f64 {
    MONEY_ABS.max(MONEY_REL * printed.abs())
}

/// |a - b| <= tol * max(|a|, |b|), falling back to an absolute floor near zero.
pub fn rel_close(a: f64, b: f64, tol: f64, floor: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(floor)
}
