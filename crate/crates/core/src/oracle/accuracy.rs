use rayon::prelude::*;
use serde::Serialize;

use super::equilibrium::{solve_equilibrium, EquilibriumState, SolverOptions};
use super::parametric::{var, ParametricEconomy};
use crate::displacement::{solve, Endogenous};
use crate::error::Result;
use crate::shock::PolicyShock;
use crate::tolerance;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyRow {
    pub component: Endogenous,
    pub hat: f64,
    pub d_h: f64,
    pub d_half: f64,
    pub ratio: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyReport {
    /// The shock direction, scaled to a largest component of one.
    pub direction: PolicyShock,
    pub h: f64,
    pub rows: Vec<AccuracyRow>,
}

impl AccuracyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

fn ln_endogenous(s: &EquilibriumState, v: Endogenous) -> f64 {
    use Endogenous::*;
    let x = &s.log_state;
    match v {
        EnergyCapital => x[var::K_E],
        Emissions => x[var::Z],
        Energy => x[var::E],
        ResidentialEnergy => x[var::E_R],
        IndustrialEnergy => x[var::E_X],
        IndustrialCapital => x[var::K_X],
        IndustrialOutput => x[var::X],
        ResidentialPrice => x[var::P_ER],
        IndustrialOutputPrice => x[var::P_X],
        IndustrialPrice => x[var::P_EX],
        IndustrialCapitalPrice => s.industrial_capital_price.ln(),
        EnergyCapitalPrice => s.energy_capital_price.ln(),
        MarginalCost => x[var::GAMMA],
        CapitalPrice => 0.0,
    }
}

/// Compares displacement hats with symmetric nonlinear log-changes at steps
/// `h` and `h/2`. The symmetric difference cancels the even-order term, so a
/// correct first-order map shows a discrepancy ratio near four.
pub fn first_order_accuracy(
    pe: &ParametricEconomy,
    shock: &PolicyShock,
    h: f64,
    opts: &SolverOptions,
) -> Result<AccuracyReport> {
    let scale = shock.max_abs();
    let direction = if scale == 0.0 { *shock } else { (1.0 / scale) * *shock };
    let hats = solve(&pe.params, &direction)?;
    let e = &pe.params.economy;

    let steps = [h, -h, 0.5 * h, -0.5 * h];
    let states: Vec<EquilibriumState> = steps
        .par_iter()
        .map(|&k| solve_equilibrium(pe, &direction.apply(e, k), opts))
        .collect::<Result<_>>()?;

    let rows = Endogenous::ALL
        .into_iter()
        .map(|v| {
            let slope = |a: &EquilibriumState, b: &EquilibriumState, step: f64| {
                (ln_endogenous(a, v) - ln_endogenous(b, v)) / (2.0 * step)
            };
            let hat = hats.get(v);
            let d_h = (slope(&states[0], &states[1], h) - hat).abs();
            let d_half = (slope(&states[2], &states[3], 0.5 * h) - hat).abs();
            let ratio = d_h / d_half;
            let pass = (d_h < tolerance::ORACLE_FLOOR && d_half < tolerance::ORACLE_FLOOR)
                || (tolerance::RICHARDSON_LOW..=tolerance::RICHARDSON_HIGH).contains(&ratio);
            AccuracyRow { component: v, hat, d_h, d_half, ratio, pass }
        })
        .collect();
    Ok(AccuracyReport { direction, h, rows })
}
