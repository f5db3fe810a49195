//! Inverts the oligopoly pricing conditions, the elasticity-share relations
//! and the constant-returns identities to recover the unobserved parameters.

use serde::{Deserialize, Serialize};

use crate::competition::CompetitionIndex;
use crate::economy::{validate_benchmark, CanonicalEconomy, DerivedParameters, RevenueShares};
use crate::error::{Error, Result};

/// How the market structure is pinned down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CalibrationMode {
    /// Infer n from the residential pricing condition, then the industrial
    /// elasticity from the industrial one.
    #[default]
    #[serde(alias = "infer_n_and_epsEX")]
    InferCompetition,
    /// n = 1; both elasticities follow from the pricing conditions.
    ForceMonopoly,
    /// n = infinity; the marginal cost and distribution adder are re-derived so
    /// both margins vanish, elasticities are kept at their default calibration.
    ForcePerfectCompetition,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationOptions {
    pub mode: CalibrationMode,
    /// Marginal cost as a fraction of the industrial price when not supplied.
    pub gamma_rule: f64,
}

impl Default for CalibrationOptions {
    fn default() -> Self {
        CalibrationOptions {
            mode: CalibrationMode::InferCompetition,
            gamma_rule: 0.80,
        }
    }
}

impl CalibrationOptions {
    pub fn with_mode(mode: CalibrationMode) -> Self {
        CalibrationOptions { mode, ..Default::default() }
    }
}

/// Quantity and expenditure shares that need no capital stocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shares {
    pub residential_share: f64,
    pub industrial_share: f64,
    pub emission_cost_share: f64,
    pub residential_budget_share: f64,
    pub industrial_revenue: f64,
    pub industrial_energy_share: f64,
    pub industrial_capital_share: f64,
}

/// Competition index and the two perceived demand elasticities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketStructure {
    pub competition: CompetitionIndex,
    pub residential_elasticity: f64,
    pub industrial_elasticity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapitalStocks {
    pub energy_capital: f64,
    pub industrial_capital: f64,
    pub total_capital: f64,
    pub energy_capital_share: f64,
    pub capital_cost_share: f64,
    pub energy_capital_price: f64,
    pub industrial_capital_price: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Levels {
    pub profit: f64,
    pub transfer: f64,
    pub revenue_shares: Option<RevenueShares>,
}

fn gamma_of(e: &CanonicalEconomy) -> f64 {
    e.marginal_cost.expect("marginal cost resolved before use")
}

/// Residential and industrial per-unit margins.
pub fn margins(e: &CanonicalEconomy) -> (f64, f64) {
    let g = gamma_of(e);
    (
        e.residential_price - e.distribution_cost - e.residential_tax - g,
        e.industrial_price - e.industrial_tax - g,
    )
}

pub fn compute_shares(e: &CanonicalEconomy) -> Result<Shares> {
    let total = e.total_energy();
    let industrial_revenue = e.income - e.residential_expenditure();
    if !(industrial_revenue > 0.0) {
        return Err(Error::NonpositiveIndustrialRevenue(industrial_revenue));
    }
    let industrial_energy_share = e.industrial_expenditure() / industrial_revenue;
    Ok(Shares {
        residential_share: e.residential_energy / total,
        industrial_share: e.industrial_energy / total,
        emission_cost_share: e.emission_revenue() / (gamma_of(e) * total),
        residential_budget_share: e.residential_expenditure() / e.income,
        industrial_revenue,
        industrial_energy_share,
        industrial_capital_share: 1.0 - industrial_energy_share,
    })
}

/// Solves the two pricing conditions for n and the industrial elasticity.
pub fn solve_market_structure(e: &CanonicalEconomy) -> Result<MarketStructure> {
    let (m_r, m_x) = margins(e);
    for (segment, m) in [("residential", m_r), ("industrial", m_x)] {
        if m == 0.0 {
            return Err(Error::PerfectCompetitionLimit(segment));
        }
        if m < 0.0 {
            return Err(Error::NonpositiveMargin { segment, margin: m });
        }
    }
    let n = -e.residential_price / (e.residential_elasticity * m_r);
    if !(n >= 1.0) {
        return Err(Error::CompetitionIndexBelowOne(n));
    }
    Ok(MarketStructure {
        competition: CompetitionIndex::Finite(n),
        residential_elasticity: e.residential_elasticity,
        industrial_elasticity: -e.industrial_price / (n * m_x),
    })
}

fn monopoly_structure(e: &CanonicalEconomy) -> Result<MarketStructure> {
    let (m_r, m_x) = margins(e);
    for (segment, m) in [("residential", m_r), ("industrial", m_x)] {
        if !(m > 0.0) {
            return Err(Error::NonpositiveMargin { segment, margin: m });
        }
    }
    Ok(MarketStructure {
        competition: CompetitionIndex::MONOPOLY,
        residential_elasticity: -e.residential_price / m_r,
        industrial_elasticity: -e.industrial_price / m_x,
    })
}

/// Substitution elasticity implied by a demand elasticity and an expenditure share.
pub fn substitution_from_elasticity(which: &'static str, elasticity: f64, share: f64) -> Result<f64> {
    let sigma = (-elasticity - share) / (1.0 - share);
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::NonpositiveSigma { which, value: sigma });
    }
    Ok(sigma)
}

/// Returns (sigma_U, sigma_X).
pub fn derive_substitution_elasticities(
    shares: &Shares,
    residential_elasticity: f64,
    industrial_elasticity: f64,
) -> Result<(f64, f64)> {
    Ok((
        substitution_from_elasticity("sigma_U", residential_elasticity, shares.residential_budget_share)?,
        substitution_from_elasticity("sigma_X", industrial_elasticity, shares.industrial_energy_share)?,
    ))
}

pub fn impute_capital(e: &CanonicalEconomy, shares: &Shares) -> Result<CapitalStocks> {
    let energy_capital_price = e.energy_capital_price();
    let industrial_capital_price = e.industrial_capital_price();
    let cost = gamma_of(e) * e.total_energy();
    let capital_bill = cost - e.emission_revenue();
    if capital_bill < 0.0 {
        return Err(Error::NegativeCapital(-capital_bill));
    }
    let energy_capital = capital_bill / energy_capital_price;
    let industrial_capital =
        (shares.industrial_revenue - e.industrial_expenditure()) / industrial_capital_price;
    if !(industrial_capital > 0.0) {
        return Err(Error::InvalidBenchmark(format!(
            "industrial capital {industrial_capital} is not positive"
        )));
    }
    let total_capital = energy_capital + industrial_capital;
    Ok(CapitalStocks {
        energy_capital,
        industrial_capital,
        total_capital,
        energy_capital_share: energy_capital / total_capital,
        capital_cost_share: capital_bill / cost,
        energy_capital_price,
        industrial_capital_price,
    })
}

pub fn compute_levels(e: &CanonicalEconomy, k: &CapitalStocks) -> Levels {
    let (m_r, m_x) = margins(e);
    let profit = m_r * e.residential_energy + m_x * e.industrial_energy;
    let parts = [
        e.industrial_tax * e.industrial_energy,
        e.residential_tax * e.residential_energy,
        e.energy_capital_tax * k.energy_capital,
        e.industrial_capital_tax * k.industrial_capital,
        e.emission_revenue(),
    ];
    let transfer: f64 = parts.iter().sum();
    let revenue_shares = (transfer != 0.0).then(|| RevenueShares {
        industrial_energy: parts[0] / transfer,
        residential_energy: parts[1] / transfer,
        energy_capital: parts[2] / transfer,
        industrial_capital: parts[3] / transfer,
        emissions: parts[4] / transfer,
    });
    Levels { profit, transfer, revenue_shares }
}

/// Resolves the marginal cost and applies the forced-structure cascade.
/// Returns the effective economy and its market structure.
fn effective_economy(
    economy: &CanonicalEconomy,
    options: &CalibrationOptions,
) -> Result<(CanonicalEconomy, MarketStructure)> {
    if !(options.gamma_rule > 0.0 && options.gamma_rule < 1.0) {
        return Err(Error::InvalidBenchmark(format!(
            "gamma rule {} outside (0, 1)",
            options.gamma_rule
        )));
    }
    let mut e = economy.clone();
    if e.marginal_cost.is_none() {
        e.marginal_cost = Some(options.gamma_rule * e.industrial_price);
    }
    match options.mode {
        CalibrationMode::InferCompetition => {
            let m = solve_market_structure(&e)?;
            Ok((e, m))
        }
        CalibrationMode::ForceMonopoly => {
            let m = monopoly_structure(&e)?;
            e.residential_elasticity = m.residential_elasticity;
            Ok((e, m))
        }
        CalibrationMode::ForcePerfectCompetition => {
            // Elasticities come from the default calibration of the same data.
            let base = solve_market_structure(&e)?;
            let gamma = e.industrial_price - e.industrial_tax;
            e.marginal_cost = Some(gamma);
            e.distribution_cost = e.residential_price - e.residential_tax - gamma;
            if e.distribution_cost < 0.0 {
                return Err(Error::InvalidBenchmark(format!(
                    "perfect competition implies a negative distribution cost {}",
                    e.distribution_cost
                )));
            }
            Ok((
                e,
                MarketStructure {
                    competition: CompetitionIndex::Infinite,
                    ..base
                },
            ))
        }
    }
}

/// The only constructor of [`DerivedParameters`].
pub fn calibrate(economy: &CanonicalEconomy, options: &CalibrationOptions) -> Result<DerivedParameters> {
    let (e, market) = effective_economy(economy, options)?;
    let shares = compute_shares(&e)?;
    let (utility_substitution, industrial_substitution) = derive_substitution_elasticities(
        &shares,
        market.residential_elasticity,
        market.industrial_elasticity,
    )?;
    if !(e.energy_substitution > 0.0) {
        return Err(Error::NonpositiveSigma { which: "sigma_E", value: e.energy_substitution });
    }
    let k = impute_capital(&e, &shares)?;
    let mut levels = compute_levels(&e, &k);
    // Zero by construction; floating-point leftovers would otherwise leak
    // into the margin-gap welfare term.
    let (residential_margin, industrial_margin) = if options.mode == CalibrationMode::ForcePerfectCompetition {
        levels.profit = 0.0;
        (0.0, 0.0)
    } else {
        margins(&e)
    };
    let gamma = gamma_of(&e);
    let params = DerivedParameters {
        mode: options.mode,
        gamma,
        competition: market.competition,
        residential_elasticity: market.residential_elasticity,
        industrial_elasticity: market.industrial_elasticity,
        utility_substitution,
        industrial_substitution,
        energy_substitution: e.energy_substitution,
        energy_capital_share: k.energy_capital_share,
        residential_share: shares.residential_share,
        industrial_share: shares.industrial_share,
        industrial_energy_share: shares.industrial_energy_share,
        industrial_capital_share: shares.industrial_capital_share,
        residential_budget_share: shares.residential_budget_share,
        emission_cost_share: shares.emission_cost_share,
        capital_cost_share: k.capital_cost_share,
        energy_capital_beta: e.capital_price / k.energy_capital_price,
        industrial_capital_beta: e.capital_price / k.industrial_capital_price,
        energy_capital_price: k.energy_capital_price,
        industrial_capital_price: k.industrial_capital_price,
        energy_capital: k.energy_capital,
        industrial_capital: k.industrial_capital,
        total_capital: k.total_capital,
        profit: levels.profit,
        transfer: levels.transfer,
        industrial_revenue: shares.industrial_revenue,
        residential_margin,
        industrial_margin,
        revenue_shares: levels.revenue_shares,
        economy: e,
    };
    validate_benchmark(&params)?;
    Ok(params)
}

/// Residuals of the two pricing conditions, in $/mmBtu.
pub fn pricing_residuals(p: &DerivedParameters) -> (f64, f64) {
    let e = &p.economy;
    let inv_r = p.competition.inverse_markup(p.residential_elasticity);
    let inv_x = p.competition.inverse_markup(p.industrial_elasticity);
    // p (1 + 1/(n eps)) = marginal cost + wedge, divided through by n.
    (
        e.residential_price * (1.0 + inv_r) - e.distribution_cost - e.residential_tax - p.gamma,
        e.industrial_price * (1.0 + inv_x) - e.industrial_tax - p.gamma,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::economy::BenchmarkEconomy;

    fn base() -> CanonicalEconomy {
        BenchmarkEconomy::table1().canonicalize().unwrap()
    }

    #[test]
    fn zero_industrial_margin_flags_the_limit() {
        let mut e = base();
        e.marginal_cost = Some(e.industrial_price - e.industrial_tax);
        assert_eq!(
            calibrate(&e, &CalibrationOptions::default()).unwrap_err(),
            Error::PerfectCompetitionLimit("industrial")
        );
    }

    #[test]
    fn negative_margin_is_rejected() {
        let mut e = base();
        e.marginal_cost = Some(20.0);
        assert!(matches!(
            calibrate(&e, &CalibrationOptions::default()),
            Err(Error::NonpositiveMargin { .. })
        ));
    }

    #[test]
    fn inelastic_demand_gives_nonpositive_sigma() {
        let shares = compute_shares(&{
            let mut e = base();
            e.marginal_cost = Some(12.0);
            e
        })
        .unwrap();
        assert!(matches!(
            derive_substitution_elasticities(&shares, -0.001, -0.7),
            Err(Error::NonpositiveSigma { which: "sigma_U", .. })
        ));
    }

    #[test]
    fn emission_bill_above_cost_gives_negative_capital() {
        let mut e = base();
        e.emission_tax = 500.0;
        assert!(matches!(
            calibrate(&e, &CalibrationOptions::default()),
            Err(Error::NegativeCapital(_))
        ));
    }

    #[test]
    fn zero_taxes_leave_revenue_shares_empty() {
        let mut e = base();
        e.marginal_cost = Some(12.0);
        e.residential_tax = 0.0;
        e.industrial_tax = 0.0;
        e.energy_capital_tax = 0.0;
        e.industrial_capital_tax = 0.0;
        let shares = compute_shares(&e).unwrap();
        let k = impute_capital(&e, &shares).unwrap();
        e.emission_tax = 0.0;
        let levels = compute_levels(&e, &k);
        assert_eq!(levels.transfer, 0.0);
        assert!(levels.revenue_shares.is_none());
    }

    #[test]
    fn gamma_rule_must_be_a_fraction() {
        let opts = CalibrationOptions { gamma_rule: 1.2, ..Default::default() };
        assert!(calibrate(&base(), &opts).is_err());
    }
}
