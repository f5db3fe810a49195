//! Benchmark data, canonical units and the calibrated parameter set.
//!
//! Canonical units: energy in trillion Btu, prices in $/mmBtu, emissions in
//! million metric tons, money in million 2012 dollars. A trillion Btu is a
//! million mmBtu, so price times quantity lands directly in million dollars.

use serde::{Deserialize, Serialize};

use crate::calibration::CalibrationMode;
use crate::competition::CompetitionIndex;
use crate::error::{Error, Result};
use crate::tolerance;

/// Million dollars per billion dollars.
pub const MILLION_PER_BILLION: f64 = 1_000.0;

const TABLE1_TOML: &str = include_str!("../data/benchmark_2019.toml");

/// Observed and assumed levels defining the initial equilibrium.
///
/// Income is in billion dollars here, as published; everything else is
/// already in canonical units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkEconomy {
    /// Residential energy use, trillion Btu.
    #[serde(rename = "E_R")]
    pub residential_energy: f64,
    /// Industrial energy use, trillion Btu.
    #[serde(rename = "E_X")]
    pub industrial_energy: f64,
    #[serde(rename = "p_ER")]
    pub residential_price: f64,
    #[serde(rename = "p_EX")]
    pub industrial_price: f64,
    #[serde(rename = "t_ER")]
    pub residential_tax: f64,
    #[serde(rename = "t_EX")]
    pub industrial_tax: f64,
    /// Marginal cost of energy; when absent the calibration rule sets it.
    #[serde(rename = "gamma", default, skip_serializing_if = "Option::is_none")]
    pub marginal_cost: Option<f64>,
    /// Extra cost of distributing to residential users.
    #[serde(rename = "delta")]
    pub distribution_cost: f64,
    /// Emissions, million metric tons.
    #[serde(rename = "Z")]
    pub emissions: f64,
    /// Marginal environmental damage, $/ton.
    #[serde(rename = "mu")]
    pub marginal_damage: f64,
    /// Emission tax, $/ton.
    #[serde(rename = "t_Z")]
    pub emission_tax: f64,
    /// Total income, billion dollars.
    #[serde(rename = "I")]
    pub income: f64,
    /// Capital tax in the energy sector, fraction of the capital price.
    #[serde(rename = "t_KE")]
    pub energy_capital_tax: f64,
    #[serde(rename = "t_KX")]
    pub industrial_capital_tax: f64,
    /// Gross capital price; the numeraire.
    #[serde(rename = "q_K")]
    pub capital_price: f64,
    /// Substitution elasticity between capital and emissions in energy production.
    #[serde(rename = "sigma_E")]
    pub energy_substitution: f64,
    /// Residential own-price elasticity of energy demand.
    #[serde(rename = "eps_ER")]
    pub residential_elasticity: f64,
}

impl BenchmarkEconomy {
    /// The 2019 U.S. benchmark shipped with the crate.
    pub fn table1() -> Self {
        Self::from_toml_str(TABLE1_TOML).expect("bundled benchmark parses")
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let economy: BenchmarkEconomy = toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        economy.check()?;
        Ok(economy)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Sign and range checks on the raw levels. Margin positivity depends on
    /// the calibration mode and is enforced there.
    pub fn check(&self) -> Result<()> {
        let positive = [
            ("E_R", self.residential_energy),
            ("p_ER", self.residential_price),
            ("p_EX", self.industrial_price),
            ("Z", self.emissions),
            ("mu", self.marginal_damage),
            ("t_Z", self.emission_tax),
            ("I", self.income),
            ("sigma_E", self.energy_substitution),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidBenchmark(format!("{name} must be positive, got {v}")));
            }
        }
        // E_X = 0 is a legitimate degenerate split.
        let non_negative = [
            ("E_X", self.industrial_energy),
            ("t_ER", self.residential_tax),
            ("t_EX", self.industrial_tax),
            ("delta", self.distribution_cost),
        ];
        for (name, v) in non_negative {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidBenchmark(format!("{name} must be non-negative, got {v}")));
            }
        }
        for (name, v) in [("t_KE", self.energy_capital_tax), ("t_KX", self.industrial_capital_tax)] {
            if !(v.is_finite() && v > -1.0) {
                return Err(Error::InvalidBenchmark(format!("{name} must exceed -1, got {v}")));
            }
        }
        if let Some(g) = self.marginal_cost {
            if !(g.is_finite() && g > 0.0) {
                return Err(Error::InvalidBenchmark(format!("gamma must be positive, got {g}")));
            }
        }
        if self.capital_price != 1.0 {
            return Err(Error::InvalidBenchmark(format!(
                "q_K is the numeraire and must equal 1, got {}",
                self.capital_price
            )));
        }
        if !(self.residential_elasticity < 0.0) {
            return Err(Error::InvalidBenchmark(format!(
                "eps_ER must be negative, got {}",
                self.residential_elasticity
            )));
        }
        Ok(())
    }

    pub fn canonicalize(&self) -> Result<CanonicalEconomy> {
        self.check()?;
        Ok(CanonicalEconomy {
            residential_energy: self.residential_energy,
            industrial_energy: self.industrial_energy,
            residential_price: self.residential_price,
            industrial_price: self.industrial_price,
            residential_tax: self.residential_tax,
            industrial_tax: self.industrial_tax,
            marginal_cost: self.marginal_cost,
            distribution_cost: self.distribution_cost,
            emissions: self.emissions,
            marginal_damage: self.marginal_damage,
            emission_tax: self.emission_tax,
            income: self.income * MILLION_PER_BILLION,
            energy_capital_tax: self.energy_capital_tax,
            industrial_capital_tax: self.industrial_capital_tax,
            capital_price: self.capital_price,
            energy_substitution: self.energy_substitution,
            residential_elasticity: self.residential_elasticity,
        })
    }
}

/// A benchmark with all money flows in million dollars.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalEconomy {
    pub residential_energy: f64,
    pub industrial_energy: f64,
    pub residential_price: f64,
    pub industrial_price: f64,
    pub residential_tax: f64,
    pub industrial_tax: f64,
    pub marginal_cost: Option<f64>,
    pub distribution_cost: f64,
    pub emissions: f64,
    pub marginal_damage: f64,
    pub emission_tax: f64,
    /// Total income, million dollars.
    pub income: f64,
    pub energy_capital_tax: f64,
    pub industrial_capital_tax: f64,
    pub capital_price: f64,
    pub energy_substitution: f64,
    pub residential_elasticity: f64,
}

impl CanonicalEconomy {
    /// Already canonical.
    pub fn canonicalize(&self) -> Result<CanonicalEconomy> {
        self.to_benchmark().canonicalize()
    }

    pub fn to_benchmark(&self) -> BenchmarkEconomy {
        BenchmarkEconomy {
            residential_energy: self.residential_energy,
            industrial_energy: self.industrial_energy,
            residential_price: self.residential_price,
            industrial_price: self.industrial_price,
            residential_tax: self.residential_tax,
            industrial_tax: self.industrial_tax,
            marginal_cost: self.marginal_cost,
            distribution_cost: self.distribution_cost,
            emissions: self.emissions,
            marginal_damage: self.marginal_damage,
            emission_tax: self.emission_tax,
            income: self.income / MILLION_PER_BILLION,
            energy_capital_tax: self.energy_capital_tax,
            industrial_capital_tax: self.industrial_capital_tax,
            capital_price: self.capital_price,
            energy_substitution: self.energy_substitution,
            residential_elasticity: self.residential_elasticity,
        }
    }

    pub fn total_energy(&self) -> f64 {
        self.residential_energy + self.industrial_energy
    }

    pub fn residential_expenditure(&self) -> f64 {
        self.residential_price * self.residential_energy
    }

    pub fn industrial_expenditure(&self) -> f64 {
        self.industrial_price * self.industrial_energy
    }

    pub fn emission_revenue(&self) -> f64 {
        self.emission_tax * self.emissions
    }

    pub fn energy_capital_price(&self) -> f64 {
        self.capital_price + self.energy_capital_tax
    }

    pub fn industrial_capital_price(&self) -> f64 {
        self.capital_price + self.industrial_capital_tax
    }
}

/// Shares of the lump-sum transfer by tax base.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RevenueShares {
    pub industrial_energy: f64,
    pub residential_energy: f64,
    pub energy_capital: f64,
    pub industrial_capital: f64,
    pub emissions: f64,
}

impl RevenueShares {
    pub fn sum(&self) -> f64 {
        self.industrial_energy
            + self.residential_energy
            + self.energy_capital
            + self.industrial_capital
            + self.emissions
    }
}

/// Shares, elasticities, imputed stocks and income components of a calibrated
/// benchmark. Only [`crate::calibration::calibrate`] builds one.
///
/// `economy` is the effective benchmark: forced market structures may have
/// re-derived the marginal cost, the distribution adder or the residential
/// elasticity, and `economy.marginal_cost` is always set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[non_exhaustive]
pub struct DerivedParameters {
    pub economy: CanonicalEconomy,
    pub mode: CalibrationMode,
    /// Marginal cost of energy, $/mmBtu.
    pub gamma: f64,
    pub competition: CompetitionIndex,
    pub residential_elasticity: f64,
    pub industrial_elasticity: f64,
    /// Substitution elasticity between industrial output and energy in utility.
    pub utility_substitution: f64,
    /// Substitution elasticity between capital and energy in industry.
    pub industrial_substitution: f64,
    pub energy_substitution: f64,
    /// Energy-sector share of the capital stock.
    pub energy_capital_share: f64,
    /// Shares of energy output sold to residents and to industry.
    pub residential_share: f64,
    pub industrial_share: f64,
    /// Shares of industrial revenue paid for energy and for capital.
    pub industrial_energy_share: f64,
    pub industrial_capital_share: f64,
    /// Share of income spent on energy by residents.
    pub residential_budget_share: f64,
    /// Emission-tax and capital shares of the energy cost bill.
    pub emission_cost_share: f64,
    pub capital_cost_share: f64,
    /// Non-tax shares of the capital prices. Eliminated from all solutions by
    /// the numeraire; kept for the 14-equation system.
    pub energy_capital_beta: f64,
    pub industrial_capital_beta: f64,
    /// Gross-of-tax capital prices.
    pub energy_capital_price: f64,
    pub industrial_capital_price: f64,
    /// Capital stocks, million dollars of numeraire capital.
    pub energy_capital: f64,
    pub industrial_capital: f64,
    pub total_capital: f64,
    /// Energy-sector profit and lump-sum transfer, million dollars.
    pub profit: f64,
    pub transfer: f64,
    /// Industrial revenue p_X X, million dollars.
    pub industrial_revenue: f64,
    /// Per-unit margins on residential and industrial sales.
    pub residential_margin: f64,
    pub industrial_margin: f64,
    pub revenue_shares: Option<RevenueShares>,
}

impl DerivedParameters {
    pub fn total_energy(&self) -> f64 {
        self.economy.total_energy()
    }

    /// p_KX / p_KE, the capital-price wedge in the general welfare forms.
    pub fn capital_wedge(&self) -> f64 {
        self.industrial_capital_price / self.energy_capital_price
    }
}

/// Outcome of one invariant check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Checks every invariant of a parameter set.
///
/// Elasticity bounds, margins (outside forced perfect competition) and the
/// income identity are hard failures; the remaining checks are reported.
pub fn validate_benchmark(p: &DerivedParameters) -> Result<ValidationReport> {
    let e = &p.economy;
    let mut checks = Vec::new();
    let mut push = |name, residual: f64, tol: f64| {
        checks.push(Check {
            name,
            passed: residual.abs() <= tol,
            residual,
        })
    };

    let allow_zero_margin = p.mode == CalibrationMode::ForcePerfectCompetition;
    for (segment, margin) in [
        ("residential", p.residential_margin),
        ("industrial", p.industrial_margin),
    ] {
        let slack = tolerance::CALIBRATION_REL * e.residential_price.max(e.industrial_price);
        let ok = if allow_zero_margin { margin >= -slack } else { margin > 0.0 };
        if !ok {
            return Err(Error::NegativeMargin { segment, margin });
        }
    }

    if let CompetitionIndex::Finite(n) = p.competition {
        for (which, eps) in [
            ("residential", p.residential_elasticity),
            ("industrial", p.industrial_elasticity),
        ] {
            if !(eps < -1.0 / n) {
                return Err(Error::ElasticityBoundViolation { which, elasticity: eps, n });
            }
        }
    }

    let income = e.income;
    let sources = p.total_capital * e.capital_price
        + e.distribution_cost * e.residential_energy
        + p.profit
        + p.transfer;
    let uses = p.industrial_revenue + e.residential_expenditure();
    let sources_residual = (income - sources) / income;
    let uses_residual = (income - uses) / income;
    if sources_residual.abs() > tolerance::CALIBRATION_REL {
        return Err(Error::IncomeIdentityViolation(sources_residual));
    }
    if uses_residual.abs() > tolerance::CALIBRATION_REL {
        return Err(Error::IncomeIdentityViolation(uses_residual));
    }
    push("income_sources", sources_residual, tolerance::CALIBRATION_REL);
    push("income_uses", uses_residual, tolerance::CALIBRATION_REL);

    push(
        "energy_split",
        p.residential_share + p.industrial_share - 1.0,
        tolerance::CALIBRATION_REL,
    );
    push(
        "energy_cost_shares",
        p.emission_cost_share + p.capital_cost_share - 1.0,
        tolerance::CALIBRATION_REL,
    );
    push(
        "industrial_cost_shares",
        p.industrial_energy_share + p.industrial_capital_share - 1.0,
        tolerance::CALIBRATION_REL,
    );
    if let Some(shares) = &p.revenue_shares {
        push("revenue_shares", shares.sum() - 1.0, tolerance::CALIBRATION_REL);
    }
    checks.push(Check {
        name: "utility_substitution_positive",
        passed: p.utility_substitution > 0.0,
        residual: p.utility_substitution,
    });
    checks.push(Check {
        name: "industrial_substitution_positive",
        passed: p.industrial_substitution > 0.0,
        residual: p.industrial_substitution,
    });
    Ok(ValidationReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expenditure_is_price_times_quantity_in_millions() {
        let c = BenchmarkEconomy::table1().canonicalize().unwrap();
        assert!((c.residential_expenditure() - 238_159.52).abs() < 1e-6);
        assert!((c.emission_revenue() - 77_205.0).abs() < 1e-9);
        assert_eq!(c.income, 19_036_000.0);
    }

    #[test]
    fn canonicalization_round_trips() {
        let b = BenchmarkEconomy::table1();
        let c = b.canonicalize().unwrap();
        assert_eq!(c.to_benchmark(), b);
        assert_eq!(c.canonicalize().unwrap(), c);
    }

    #[test]
    fn rejects_non_positive_levels() {
        let mut b = BenchmarkEconomy::table1();
        b.residential_price = 0.0;
        assert!(matches!(b.canonicalize(), Err(Error::InvalidBenchmark(_))));
        let mut b = BenchmarkEconomy::table1();
        b.emissions = -1.0;
        assert!(b.canonicalize().is_err());
    }

    #[test]
    fn numeraire_must_be_one() {
        let mut b = BenchmarkEconomy::table1();
        b.capital_price = 1.1;
        assert!(b.check().is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = format!("{TABLE1_TOML}\nsigma_e = 0.3\n");
        let err = BenchmarkEconomy::from_toml_str(&text).unwrap_err();
        assert!(matches!(err, Error::Parse(ref m) if m.contains("sigma_e")), "{err}");
    }

    #[test]
    fn missing_gamma_is_allowed() {
        assert_eq!(BenchmarkEconomy::table1().marginal_cost, None);
    }
}
