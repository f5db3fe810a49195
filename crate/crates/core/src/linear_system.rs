//! The fourteen log-linear equilibrium relations as a dense system, solved
//! numerically as an independent check on the closed form.

use nalgebra::{SMatrix, SVector};

use crate::displacement::Endogenous::{self, *};
use crate::economy::DerivedParameters;
use crate::error::{Error, Result};
use crate::shock::PolicyShock;

pub type Matrix14 = SMatrix<f64, 14, 14>;
pub type Vector14 = SVector<f64, 14>;

pub const ROW_LABELS: [&str; 14] = [
    "capital constraint",
    "utility substitution",
    "industrial substitution",
    "industrial output",
    "industrial zero profit",
    "energy market clearing",
    "energy substitution",
    "industrial pricing",
    "residential pricing",
    "energy output",
    "energy cost",
    "energy capital price",
    "industrial capital price",
    "numeraire",
];

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub matrix: Matrix14,
    pub rhs: Vector14,
    pub row_labels: [&'static str; 14],
}

impl LinearSystem {
    pub fn solve(&self) -> Result<[f64; 14]> {
        let x = self.matrix.lu().solve(&self.rhs).ok_or(Error::SingularSystem)?;
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::SingularSystem);
        }
        Ok(std::array::from_fn(|k| x[k]))
    }

    /// Row-wise residual A x - b.
    pub fn residual(&self, hats: &[f64; 14]) -> [f64; 14] {
        let r = self.matrix * Vector14::from_column_slice(hats) - self.rhs;
        std::array::from_fn(|k| r[k])
    }
}

pub fn assemble_linear_system(p: &DerivedParameters, s: &PolicyShock) -> Result<LinearSystem> {
    let e = &p.economy;
    let (f_x, f_r) = crate::displacement::pass_through(p)?;
    let (su, sx, se) = (p.utility_substitution, p.industrial_substitution, p.energy_substitution);
    let theta = p.industrial_energy_share;
    let (rho_z, rho_k) = (p.emission_cost_share, p.capital_cost_share);
    let w = p.energy_capital_share;

    let mut m = Matrix14::zeros();
    let mut b = Vector14::zeros();
    let mut set = |row: usize, v: Endogenous, x: f64| m[(row, v.index())] += x;

    set(0, EnergyCapital, w);
    set(0, IndustrialCapital, 1.0 - w);

    set(1, IndustrialOutput, 1.0);
    set(1, ResidentialEnergy, -1.0);
    set(1, ResidentialPrice, -su);
    set(1, IndustrialOutputPrice, su);

    set(2, IndustrialEnergy, 1.0);
    set(2, IndustrialCapital, -1.0);
    set(2, IndustrialCapitalPrice, -sx);
    set(2, IndustrialPrice, sx);

    set(3, IndustrialOutput, 1.0);
    set(3, IndustrialCapital, -(1.0 - theta));
    set(3, IndustrialEnergy, -theta);

    set(4, IndustrialOutput, 1.0);
    set(4, IndustrialOutputPrice, 1.0);
    set(4, IndustrialCapital, -(1.0 - theta));
    set(4, IndustrialCapitalPrice, -(1.0 - theta));
    set(4, IndustrialEnergy, -theta);
    set(4, IndustrialPrice, -theta);

    set(5, Energy, 1.0);
    set(5, IndustrialEnergy, -p.industrial_share);
    set(5, ResidentialEnergy, -p.residential_share);

    set(6, Emissions, 1.0);
    set(6, EnergyCapital, -1.0);
    set(6, EnergyCapitalPrice, -se);
    b[6] = -se * s.emission_tax;

    set(7, IndustrialPrice, 1.0);
    set(7, MarginalCost, -f_x * p.gamma / e.industrial_price);
    b[7] = f_x * e.industrial_tax / e.industrial_price * s.industrial_tax;

    set(8, ResidentialPrice, 1.0);
    set(8, MarginalCost, -f_r * p.gamma / e.residential_price);
    b[8] = f_r * e.residential_tax / e.residential_price * s.residential_tax;

    set(9, Energy, 1.0);
    set(9, EnergyCapital, -rho_k);
    set(9, Emissions, -rho_z);

    set(10, MarginalCost, 1.0);
    set(10, Energy, 1.0);
    set(10, EnergyCapitalPrice, -rho_k);
    set(10, EnergyCapital, -rho_k);
    set(10, Emissions, -rho_z);
    b[10] = rho_z * s.emission_tax;

    set(11, EnergyCapitalPrice, 1.0);
    set(11, CapitalPrice, -p.energy_capital_beta);
    b[11] = s.energy_capital_tax;

    set(12, IndustrialCapitalPrice, 1.0);
    set(12, CapitalPrice, -p.industrial_capital_beta);
    b[12] = s.industrial_capital_tax;

    set(13, CapitalPrice, 1.0);

    Ok(LinearSystem { matrix: m, rhs: b, row_labels: ROW_LABELS })
}

/// Solves the dense system and returns the fourteen hats in system order.
pub fn solve_dense(p: &DerivedParameters, s: &PolicyShock) -> Result<[f64; 14]> {
    assemble_linear_system(p, s)?.solve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calibration::{calibrate, CalibrationOptions};
    use crate::economy::BenchmarkEconomy;

    #[test]
    fn zero_shock_has_zero_rhs_and_solution() {
        let e = BenchmarkEconomy::table1().canonicalize().unwrap();
        let p = calibrate(&e, &CalibrationOptions::default()).unwrap();
        let sys = assemble_linear_system(&p, &PolicyShock::ZERO).unwrap();
        assert!(sys.rhs.iter().all(|&v| v == 0.0));
        assert!(sys.solve().unwrap().iter().all(|&v| v == 0.0));
    }
}
