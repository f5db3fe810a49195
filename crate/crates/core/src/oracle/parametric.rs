use serde::{Deserialize, Serialize};

use crate::economy::DerivedParameters;
use crate::error::{Error, Result};
use crate::shock::TaxLevels;
use crate::tolerance;

/// How firms perceive demand elasticities away from the benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElasticityRule {
    /// The calibrated elasticities, held fixed. The log-linear pricing
    /// conditions are exact derivatives of this rule.
    #[default]
    Constant,
    /// Point elasticities from the share relations at the current state.
    SharePoint,
}

/// Positions of the unknowns in the log state vector.
pub(crate) mod var {
    pub const P_X: usize = 0;
    pub const P_ER: usize = 1;
    pub const P_EX: usize = 2;
    pub const GAMMA: usize = 3;
    pub const E_R: usize = 4;
    pub const E_X: usize = 5;
    pub const E: usize = 6;
    pub const X: usize = 7;
    pub const K_X: usize = 8;
    pub const K_E: usize = 9;
    pub const Z: usize = 10;
    pub const I: usize = 11;
    pub const N: usize = 12;
}

/// Calibrated-share CES economy whose benchmark reproduces the data.
///
/// Output units are chosen so the industrial good's benchmark price is one.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricEconomy {
    pub params: DerivedParameters,
    pub rule: ElasticityRule,
    /// Benchmark log state.
    pub benchmark: [f64; var::N],
    pub taxes: TaxLevels,
    /// Share coefficients (industrial good, residential energy) of utility.
    pub utility_shares: (f64, f64),
    /// Share coefficients (capital, energy) of industrial production.
    pub industrial_shares: (f64, f64),
    /// Share coefficients (capital, emissions) of energy production.
    pub energy_shares: (f64, f64),
    pub total_capital: f64,
}

/// Log of a two-input CES index in calibrated-share form, with inputs given
/// as log deviations from the benchmark.
pub(crate) fn ln_ces(share_a: f64, ln_a: f64, ln_b: f64, sigma: f64) -> f64 {
    let share_b = 1.0 - share_a;
    if (sigma - 1.0).abs() < 1e-12 {
        return share_a * ln_a + share_b * ln_b;
    }
    let rho = (sigma - 1.0) / sigma;
    (share_a * (rho * ln_a).exp() + share_b * (rho * ln_b).exp()).ln() / rho
}

impl ParametricEconomy {
    /// Utility relative to the benchmark, as a log index.
    pub fn ln_utility(&self, x: &[f64; var::N]) -> f64 {
        let b = &self.benchmark;
        ln_ces(
            self.utility_shares.0,
            x[var::X] - b[var::X],
            x[var::E_R] - b[var::E_R],
            self.params.utility_substitution,
        )
    }

    /// Perceived elasticities (residential, industrial) at a state.
    pub fn elasticities(&self, x: &[f64; var::N]) -> (f64, f64) {
        let p = &self.params;
        match self.rule {
            ElasticityRule::Constant => (p.residential_elasticity, p.industrial_elasticity),
            ElasticityRule::SharePoint => {
                let v = |k: usize| x[k].exp();
                let theta_r = v(var::P_ER) * v(var::E_R) / v(var::I);
                let theta_x = v(var::P_EX) * v(var::E_X) / (v(var::P_X) * v(var::X));
                (
                    -theta_r - (1.0 - theta_r) * p.utility_substitution,
                    -theta_x - (1.0 - theta_x) * p.industrial_substitution,
                )
            }
        }
    }

    /// All equilibrium conditions at a log state, as relative residuals.
    /// The consumer budget is omitted: it follows from the others.
    pub fn residuals(&self, x: &[f64; var::N], t: &TaxLevels) -> [f64; var::N] {
        use var::*;
        let p = &self.params;
        let e = &p.economy;
        let b = &self.benchmark;
        let d = |k: usize| x[k] - b[k];
        let v = |k: usize| x[k].exp();
        let p_ke = e.capital_price + t.energy_capital_tax;
        let p_kx = e.capital_price + t.industrial_capital_tax;
        let d_pke = (p_ke / p.energy_capital_price).ln();
        let d_pkx = (p_kx / p.industrial_capital_price).ln();
        let d_tz = (t.emission_tax / e.emission_tax).ln();
        let (eps_r, eps_x) = self.elasticities(x);
        let inv_r = p.competition.inverse_markup(eps_r);
        let inv_x = p.competition.inverse_markup(eps_x);

        let gamma = v(GAMMA);
        let (p_er, p_ex) = (v(P_ER), v(P_EX));
        let (e_r, e_x) = (v(E_R), v(E_X));
        let (k_e, k_x, z) = (v(K_E), v(K_X), v(Z));
        let profit = (p_er - e.distribution_cost - t.residential_tax - gamma) * e_r
            + (p_ex - t.industrial_tax - gamma) * e_x;
        let transfer = t.industrial_tax * e_x
            + t.residential_tax * e_r
            + t.energy_capital_tax * k_e
            + t.industrial_capital_tax * k_x
            + t.emission_tax * z;

        [
            d(X) - d(E_R) - p.utility_substitution * (d(P_ER) - d(P_X)),
            d(E_X) - d(K_X) - p.industrial_substitution * (d_pkx - d(P_EX)),
            d(X) - ln_ces(self.industrial_shares.0, d(K_X), d(E_X), p.industrial_substitution),
            (p_kx * k_x + p_ex * e_x) / (v(P_X) * v(X)) - 1.0,
            (e_r + e_x) / v(E) - 1.0,
            (k_e + k_x) / self.total_capital - 1.0,
            d(Z) - d(K_E) - p.energy_substitution * (d_pke - d_tz),
            d(E) - ln_ces(self.energy_shares.0, d(K_E), d(Z), p.energy_substitution),
            (p_ke * k_e + t.emission_tax * z) / (gamma * v(E)) - 1.0,
            p_ex * (1.0 + inv_x) / (t.industrial_tax + gamma) - 1.0,
            p_er * (1.0 + inv_r) / (e.distribution_cost + t.residential_tax + gamma) - 1.0,
            (e.capital_price * self.total_capital + e.distribution_cost * e_r + profit + transfer)
                / v(I)
                - 1.0,
        ]
    }

    /// Relative residual of the consumer budget, implied by the other conditions.
    pub fn budget_residual(&self, x: &[f64; var::N]) -> f64 {
        use var::*;
        let v = |k: usize| x[k].exp();
        (v(P_X) * v(X) + v(P_ER) * v(E_R)) / v(I) - 1.0
    }
}

pub(crate) fn norm(r: &[f64]) -> f64 {
    r.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Builds the CES economy whose benchmark equilibrium is the calibrated data.
pub fn calibrate_parametric(params: &DerivedParameters, rule: ElasticityRule) -> Result<ParametricEconomy> {
    use var::*;
    let p = params;
    let e = &p.economy;
    let mut benchmark = [0.0; N];
    benchmark[P_X] = 0.0;
    benchmark[P_ER] = e.residential_price.ln();
    benchmark[P_EX] = e.industrial_price.ln();
    benchmark[GAMMA] = p.gamma.ln();
    benchmark[E_R] = e.residential_energy.ln();
    benchmark[E_X] = e.industrial_energy.ln();
    benchmark[E] = e.total_energy().ln();
    benchmark[X] = p.industrial_revenue.ln();
    benchmark[K_X] = p.industrial_capital.ln();
    benchmark[K_E] = p.energy_capital.ln();
    benchmark[Z] = e.emissions.ln();
    benchmark[I] = e.income.ln();
    if benchmark.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonpositiveState);
    }
    let economy = ParametricEconomy {
        params: p.clone(),
        rule,
        benchmark,
        taxes: TaxLevels::of(e),
        utility_shares: (1.0 - p.residential_budget_share, p.residential_budget_share),
        industrial_shares: (p.industrial_capital_share, p.industrial_energy_share),
        energy_shares: (p.capital_cost_share, p.emission_cost_share),
        total_capital: p.total_capital,
    };
    let r = norm(&economy.residuals(&benchmark, &economy.taxes));
    let budget = economy.budget_residual(&benchmark).abs();
    let worst = r.max(budget);
    if worst > tolerance::EQUILIBRIUM_RESIDUAL {
        return Err(Error::CalibrationResidual(worst));
    }
    Ok(economy)
}
