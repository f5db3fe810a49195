use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul};

use crate::economy::CanonicalEconomy;
use crate::error::{Error, Result};

/// One of the five tax instruments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Instrument {
    #[serde(rename = "t_Z")]
    EmissionTax,
    #[serde(rename = "t_ER")]
    ResidentialTax,
    #[serde(rename = "t_EX")]
    IndustrialTax,
    #[serde(rename = "t_KE")]
    EnergyCapitalTax,
    #[serde(rename = "t_KX")]
    IndustrialCapitalTax,
}

impl Instrument {
    pub const ALL: [Instrument; 5] = [
        Instrument::EmissionTax,
        Instrument::ResidentialTax,
        Instrument::IndustrialTax,
        Instrument::EnergyCapitalTax,
        Instrument::IndustrialCapitalTax,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Instrument::EmissionTax => "t_Z",
            Instrument::ResidentialTax => "t_ER",
            Instrument::IndustrialTax => "t_EX",
            Instrument::EnergyCapitalTax => "t_KE",
            Instrument::IndustrialCapitalTax => "t_KX",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Instrument> {
        Instrument::ALL.into_iter().find(|i| i.symbol() == s)
    }

    /// Capital-tax shocks are relative to the capital price, so they are
    /// meaningful even when the base tax is zero.
    pub fn is_price_relative(self) -> bool {
        matches!(self, Instrument::EnergyCapitalTax | Instrument::IndustrialCapitalTax)
    }

    fn base_level(self, e: &CanonicalEconomy) -> f64 {
        match self {
            Instrument::EmissionTax => e.emission_tax,
            Instrument::ResidentialTax => e.residential_tax,
            Instrument::IndustrialTax => e.industrial_tax,
            Instrument::EnergyCapitalTax => e.energy_capital_tax,
            Instrument::IndustrialCapitalTax => e.industrial_capital_tax,
        }
    }
}

impl fmt::Display for Instrument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Proportional tax changes, stored as fractions.
///
/// Commodity and emission taxes move relative to their own level
/// (dt/t); capital taxes move relative to the gross capital price (dt/p_K).
/// Missing fields read as zero; the tax symbols are accepted as field names.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PolicyShock {
    #[serde(alias = "t_Z")]
    pub emission_tax: f64,
    #[serde(alias = "t_ER")]
    pub residential_tax: f64,
    #[serde(alias = "t_EX")]
    pub industrial_tax: f64,
    #[serde(alias = "t_KE")]
    pub energy_capital_tax: f64,
    #[serde(alias = "t_KX")]
    pub industrial_capital_tax: f64,
}

impl PolicyShock {
    pub const ZERO: PolicyShock = PolicyShock {
        emission_tax: 0.0,
        residential_tax: 0.0,
        industrial_tax: 0.0,
        energy_capital_tax: 0.0,
        industrial_capital_tax: 0.0,
    };

    pub fn unit(instrument: Instrument) -> Self {
        let mut s = Self::ZERO;
        s.set(instrument, 1.0);
        s
    }

    pub fn emission_only(hat: f64) -> Self {
        PolicyShock { emission_tax: hat, ..Self::ZERO }
    }

    pub fn get(&self, instrument: Instrument) -> f64 {
        match instrument {
            Instrument::EmissionTax => self.emission_tax,
            Instrument::ResidentialTax => self.residential_tax,
            Instrument::IndustrialTax => self.industrial_tax,
            Instrument::EnergyCapitalTax => self.energy_capital_tax,
            Instrument::IndustrialCapitalTax => self.industrial_capital_tax,
        }
    }

    pub fn set(&mut self, instrument: Instrument, value: f64) {
        let slot = match instrument {
            Instrument::EmissionTax => &mut self.emission_tax,
            Instrument::ResidentialTax => &mut self.residential_tax,
            Instrument::IndustrialTax => &mut self.industrial_tax,
            Instrument::EnergyCapitalTax => &mut self.energy_capital_tax,
            Instrument::IndustrialCapitalTax => &mut self.industrial_capital_tax,
        };
        *slot = value;
    }

    pub fn to_array(&self) -> [f64; 5] {
        Instrument::ALL.map(|i| self.get(i))
    }

    pub fn from_array(a: [f64; 5]) -> Self {
        let mut s = Self::ZERO;
        for (i, v) in Instrument::ALL.into_iter().zip(a) {
            s.set(i, v);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.to_array().iter().all(|&v| v == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Rejects nonzero proportional shocks on taxes whose base level is zero.
    pub fn check_against(&self, e: &CanonicalEconomy) -> Result<()> {
        for i in Instrument::ALL {
            if !i.is_price_relative() && self.get(i) != 0.0 && i.base_level(e) == 0.0 {
                return Err(Error::ShockOnZeroTax(i.symbol()));
            }
        }
        Ok(())
    }

    /// Tax levels after applying `scale` times this shock.
    pub fn apply(&self, e: &CanonicalEconomy, scale: f64) -> TaxLevels {
        TaxLevels {
            emission_tax: e.emission_tax * (1.0 + scale * self.emission_tax),
            residential_tax: e.residential_tax * (1.0 + scale * self.residential_tax),
            industrial_tax: e.industrial_tax * (1.0 + scale * self.industrial_tax),
            energy_capital_tax: e.energy_capital_tax
                + scale * self.energy_capital_tax * e.energy_capital_price(),
            industrial_capital_tax: e.industrial_capital_tax
                + scale * self.industrial_capital_tax * e.industrial_capital_price(),
        }
    }
}

impl Add for PolicyShock {
    type Output = PolicyShock;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (self.to_array(), rhs.to_array());
        Self::from_array(std::array::from_fn(|k| a[k] + b[k]))
    }
}

impl Mul<PolicyShock> for f64 {
    type Output = PolicyShock;
    fn mul(self, rhs: PolicyShock) -> PolicyShock {
        PolicyShock::from_array(rhs.to_array().map(|v| self * v))
    }
}

/// Absolute tax levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaxLevels {
    pub emission_tax: f64,
    pub residential_tax: f64,
    pub industrial_tax: f64,
    pub energy_capital_tax: f64,
    pub industrial_capital_tax: f64,
}

impl TaxLevels {
    pub fn of(e: &CanonicalEconomy) -> Self {
        PolicyShock::ZERO.apply(e, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::economy::BenchmarkEconomy;

    #[test]
    fn symbols_round_trip() {
        for i in Instrument::ALL {
            assert_eq!(Instrument::from_symbol(i.symbol()), Some(i));
        }
        assert_eq!(Instrument::from_symbol("t_Q"), None);
    }

    #[test]
    fn capital_shocks_move_with_the_capital_price() {
        let e = BenchmarkEconomy::table1().canonicalize().unwrap();
        let s = PolicyShock { energy_capital_tax: -0.1, ..PolicyShock::ZERO };
        let t = s.apply(&e, 1.0);
        assert!((t.energy_capital_tax - (0.123 - 0.1123)).abs() < 1e-15);
    }

    #[test]
    fn zero_base_tax_rejects_proportional_shock_only() {
        let mut e = BenchmarkEconomy::table1().canonicalize().unwrap();
        e.residential_tax = 0.0;
        e.energy_capital_tax = 0.0;
        let s = PolicyShock { residential_tax: 0.1, ..PolicyShock::ZERO };
        assert_eq!(s.check_against(&e), Err(Error::ShockOnZeroTax("t_ER")));
        let s = PolicyShock { energy_capital_tax: 0.1, ..PolicyShock::ZERO };
        assert!(s.check_against(&e).is_ok());
    }

    #[test]
    fn arithmetic_is_componentwise() {
        let a = PolicyShock::unit(Instrument::IndustrialTax);
        let b = PolicyShock::emission_only(0.5);
        let c = 2.0 * a + b;
        assert_eq!(c.to_array(), [0.5, 0.0, 2.0, 0.0, 0.0]);
    }
}
