use nalgebra::{SMatrix, SVector};
use serde::Serialize;

use super::parametric::{norm, var, ParametricEconomy};
use crate::error::{Error, Result};
use crate::shock::TaxLevels;
use crate::tolerance;

type Jacobian = SMatrix<f64, { var::N }, { var::N }>;
type Vector = SVector<f64, { var::N }>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub max_iterations: usize,
    /// Newton stops once the residual norm is below this.
    pub target: f64,
    /// Step of the finite-difference Jacobian, in logs.
    pub jacobian_step: f64,
    /// Maximum number of step halvings per iteration.
    pub max_halvings: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_iterations: 100,
            target: 1e-14,
            jacobian_step: 1e-7,
            max_halvings: 40,
        }
    }
}

/// A solved equilibrium.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumState {
    pub marginal_cost: f64,
    pub industrial_price: f64,
    pub residential_price: f64,
    pub industrial_output_price: f64,
    pub energy: f64,
    pub residential_energy: f64,
    pub industrial_energy: f64,
    pub energy_capital: f64,
    pub industrial_capital: f64,
    pub industrial_output: f64,
    pub emissions: f64,
    pub income: f64,
    pub profit: f64,
    pub transfer: f64,
    pub energy_capital_price: f64,
    pub industrial_capital_price: f64,
    pub residual_norm: f64,
    /// Consumer budget, checked rather than imposed.
    pub budget_residual: f64,
    pub iterations: usize,
    #[serde(skip)]
    pub(crate) log_state: [f64; var::N],
}

fn jacobian(pe: &ParametricEconomy, x: &[f64; var::N], t: &TaxLevels, r0: &[f64; var::N], h: f64) -> Jacobian {
    let mut j = Jacobian::zeros();
    for col in 0..var::N {
        let mut xp = *x;
        xp[col] += h;
        let rp = pe.residuals(&xp, t);
        for row in 0..var::N {
            j[(row, col)] = (rp[row] - r0[row]) / h;
        }
    }
    j
}

fn finite(r: &[f64]) -> bool {
    r.iter().all(|v| v.is_finite())
}

/// Damped Newton in logs from the benchmark state.
pub fn solve_equilibrium(pe: &ParametricEconomy, taxes: &TaxLevels, opts: &SolverOptions) -> Result<EquilibriumState> {
    let mut x = pe.benchmark;
    let mut r = pe.residuals(&x, taxes);
    if !finite(&r) {
        return Err(Error::NonpositiveState);
    }
    let mut rn = norm(&r);
    let mut iterations = 0;
    while rn > opts.target && iterations < opts.max_iterations {
        iterations += 1;
        let j = jacobian(pe, &x, taxes, &r, opts.jacobian_step);
        let step = j
            .lu()
            .solve(&-Vector::from_column_slice(&r))
            .ok_or(Error::NoConvergence { iterations, residual: rn })?;
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..=opts.max_halvings {
            let trial: [f64; var::N] = std::array::from_fn(|k| x[k] + scale * step[k]);
            let rt = pe.residuals(&trial, taxes);
            if finite(&rt) && norm(&rt) < rn {
                x = trial;
                r = rt;
                rn = norm(&r);
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if !accepted {
            // No descent left: either at the floating-point floor or lost.
            break;
        }
    }
    if !finite(&r) {
        return Err(Error::NonpositiveState);
    }
    if rn > tolerance::EQUILIBRIUM_RESIDUAL {
        return Err(Error::NoConvergence { iterations, residual: rn });
    }
    Ok(state_from(pe, x, taxes, rn, iterations))
}

fn state_from(pe: &ParametricEconomy, x: [f64; var::N], t: &TaxLevels, rn: f64, iterations: usize) -> EquilibriumState {
    use var::*;
    let e = &pe.params.economy;
    let v = |k: usize| x[k].exp();
    let gamma = v(GAMMA);
    let profit = (v(P_ER) - e.distribution_cost - t.residential_tax - gamma) * v(E_R)
        + (v(P_EX) - t.industrial_tax - gamma) * v(E_X);
    let transfer = t.industrial_tax * v(E_X)
        + t.residential_tax * v(E_R)
        + t.energy_capital_tax * v(K_E)
        + t.industrial_capital_tax * v(K_X)
        + t.emission_tax * v(Z);
    EquilibriumState {
        marginal_cost: gamma,
        industrial_price: v(P_EX),
        residential_price: v(P_ER),
        industrial_output_price: v(P_X),
        energy: v(E),
        residential_energy: v(E_R),
        industrial_energy: v(E_X),
        energy_capital: v(K_E),
        industrial_capital: v(K_X),
        industrial_output: v(X),
        emissions: v(Z),
        income: v(I),
        profit,
        transfer,
        energy_capital_price: e.capital_price + t.energy_capital_tax,
        industrial_capital_price: e.capital_price + t.industrial_capital_tax,
        residual_norm: rn,
        budget_residual: pe.budget_residual(&x),
        iterations,
        log_state: x,
    }
}
