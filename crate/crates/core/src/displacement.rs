//! Closed-form proportional changes of the endogenous variables.
//!
//! All hats are fractions. The distribution adder never enters: it is a fixed
//! per-unit cost and drops out of every log-linear relation.

use serde::{Deserialize, Serialize};

use crate::economy::DerivedParameters;
use crate::error::{Error, Result};
use crate::shock::PolicyShock;
use crate::tolerance;

/// The fourteen endogenous variables, in system order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Endogenous {
    EnergyCapital,
    Emissions,
    Energy,
    ResidentialEnergy,
    IndustrialEnergy,
    IndustrialCapital,
    IndustrialOutput,
    ResidentialPrice,
    IndustrialOutputPrice,
    IndustrialPrice,
    IndustrialCapitalPrice,
    EnergyCapitalPrice,
    MarginalCost,
    CapitalPrice,
}

impl Endogenous {
    pub const ALL: [Endogenous; 14] = [
        Endogenous::EnergyCapital,
        Endogenous::Emissions,
        Endogenous::Energy,
        Endogenous::ResidentialEnergy,
        Endogenous::IndustrialEnergy,
        Endogenous::IndustrialCapital,
        Endogenous::IndustrialOutput,
        Endogenous::ResidentialPrice,
        Endogenous::IndustrialOutputPrice,
        Endogenous::IndustrialPrice,
        Endogenous::IndustrialCapitalPrice,
        Endogenous::EnergyCapitalPrice,
        Endogenous::MarginalCost,
        Endogenous::CapitalPrice,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Endogenous::EnergyCapital => "K_E",
            Endogenous::Emissions => "Z",
            Endogenous::Energy => "E",
            Endogenous::ResidentialEnergy => "E_R",
            Endogenous::IndustrialEnergy => "E_X",
            Endogenous::IndustrialCapital => "K_X",
            Endogenous::IndustrialOutput => "X",
            Endogenous::ResidentialPrice => "p_ER",
            Endogenous::IndustrialOutputPrice => "p_X",
            Endogenous::IndustrialPrice => "p_EX",
            Endogenous::IndustrialCapitalPrice => "p_KX",
            Endogenous::EnergyCapitalPrice => "p_KE",
            Endogenous::MarginalCost => "gamma",
            Endogenous::CapitalPrice => "q_K",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Endogenous> {
        Endogenous::ALL.into_iter().find(|v| v.symbol() == s)
    }
}

/// Relative price bundles driving every quantity response.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RelativePrices {
    /// p_ER - p_X.
    pub a: f64,
    /// p_EX - t_KX.
    pub b: f64,
    /// t_Z - t_KE.
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PriceChanges {
    pub marginal_cost: f64,
    pub industrial_price: f64,
    pub residential_price: f64,
    pub industrial_output_price: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct QuantityChanges {
    pub industrial_capital: f64,
    pub energy_capital: f64,
    pub energy: f64,
    pub residential_energy: f64,
    pub industrial_energy: f64,
    pub industrial_output: f64,
    pub emissions: f64,
}

/// The full first-order response to a shock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Displacement {
    /// Indexed by [`Endogenous::index`].
    pub hats: [f64; 14],
    /// `None` when the benchmark profit is zero.
    pub profit: Option<f64>,
    pub transfer: f64,
    pub relative: RelativePrices,
}

impl Displacement {
    pub fn get(&self, v: Endogenous) -> f64 {
        self.hats[v.index()]
    }
}

/// Oligopoly pass-through factors for the industrial and residential segments.
pub fn pass_through(p: &DerivedParameters) -> Result<(f64, f64)> {
    Ok((
        p.competition.pass_through(p.industrial_elasticity)?,
        p.competition.pass_through(p.residential_elasticity)?,
    ))
}

pub fn solve_prices(p: &DerivedParameters, s: &PolicyShock) -> Result<PriceChanges> {
    let e = &p.economy;
    let (f_x, f_r) = pass_through(p)?;
    let total = e.total_energy();
    let marginal_cost = p.emission_cost_share * s.emission_tax
        + (1.0 - p.emission_cost_share) * s.energy_capital_tax;
    // Cost-share weights of the shocks in each segment's pricing condition.
    let cost_terms = |price: f64, tax: f64, tax_hat: f64| {
        tax / price * tax_hat
            + p.energy_capital_price * p.energy_capital / (price * total) * s.energy_capital_tax
            + e.emission_revenue() / (price * total) * s.emission_tax
    };
    let industrial_price = f_x * cost_terms(e.industrial_price, e.industrial_tax, s.industrial_tax);
    let residential_price =
        f_r * cost_terms(e.residential_price, e.residential_tax, s.residential_tax);
    let theta = p.industrial_energy_share;
    Ok(PriceChanges {
        marginal_cost,
        industrial_price,
        residential_price,
        industrial_output_price: (1.0 - theta) * s.industrial_capital_tax + theta * industrial_price,
    })
}

pub fn relative_price_changes(prices: &PriceChanges, s: &PolicyShock) -> RelativePrices {
    RelativePrices {
        a: prices.residential_price - prices.industrial_output_price,
        b: prices.industrial_price - s.industrial_capital_tax,
        c: s.emission_tax - s.energy_capital_tax,
    }
}

pub fn solve_quantities(p: &DerivedParameters, r: &RelativePrices) -> QuantityChanges {
    let (su, sx, se) = (p.utility_substitution, p.industrial_substitution, p.energy_substitution);
    let w = p.energy_capital_share;
    let (phi_r, phi_x) = (p.residential_share, p.industrial_share);
    let theta = p.industrial_energy_share;
    let rho = p.emission_cost_share;
    let h = phi_x + phi_r * theta;
    let (a, b, c) = (r.a, r.b, r.c);
    // The emission term common to every quantity except capital.
    let z_term = se * w * rho * c;
    QuantityChanges {
        industrial_capital: su * w * phi_r * a + sx * w * h * b - z_term,
        energy_capital: -su * (1.0 - w) * phi_r * a - sx * (1.0 - w) * h * b
            + se * (1.0 - w) * rho * c,
        energy: -su * (1.0 - w) * phi_r * a - sx * (1.0 - w) * h * b - z_term,
        residential_energy: -su * (1.0 - w * phi_r) * a - sx * (theta - w * h) * b - z_term,
        industrial_energy: su * w * phi_r * a - sx * (1.0 - w * h) * b - z_term,
        industrial_output: su * w * phi_r * a - sx * (theta - w * h) * b - z_term,
        emissions: -su * (1.0 - w) * phi_r * a
            - sx * (1.0 - w) * h * b
            - se * (1.0 - (1.0 - w) * rho) * c,
    }
}

/// Proportional change in energy-sector profit; `None` when the base is zero.
pub fn profit_change(p: &DerivedParameters, hats: &[f64; 14], s: &PolicyShock) -> Option<f64> {
    let e = &p.economy;
    if p.profit.abs() <= tolerance::CALIBRATION_REL * e.income {
        return None;
    }
    let g = p.gamma * hats[Endogenous::MarginalCost.index()];
    let residential = p.residential_margin * hats[Endogenous::ResidentialEnergy.index()]
        + e.residential_price * hats[Endogenous::ResidentialPrice.index()]
        - e.residential_tax * s.residential_tax
        - g;
    let industrial = p.industrial_margin * hats[Endogenous::IndustrialEnergy.index()]
        + e.industrial_price * hats[Endogenous::IndustrialPrice.index()]
        - e.industrial_tax * s.industrial_tax
        - g;
    Some((e.residential_energy * residential + e.industrial_energy * industrial) / p.profit)
}

/// Proportional change in the lump-sum transfer.
pub fn transfer_change(p: &DerivedParameters, hats: &[f64; 14], s: &PolicyShock) -> Result<f64> {
    if p.transfer == 0.0 {
        return Err(Error::ZeroTransferBase);
    }
    let e = &p.economy;
    let h = |v: Endogenous| hats[v.index()];
    let d = e.industrial_tax * e.industrial_energy * (s.industrial_tax + h(Endogenous::IndustrialEnergy))
        + e.residential_tax * e.residential_energy * (s.residential_tax + h(Endogenous::ResidentialEnergy))
        + e.energy_capital_tax * p.energy_capital * h(Endogenous::EnergyCapital)
        + p.energy_capital_price * p.energy_capital * s.energy_capital_tax
        + e.industrial_capital_tax * p.industrial_capital * h(Endogenous::IndustrialCapital)
        + p.industrial_capital_price * p.industrial_capital * s.industrial_capital_tax
        + e.emission_revenue() * (s.emission_tax + h(Endogenous::Emissions));
    Ok(d / p.transfer)
}

fn assemble(prices: &PriceChanges, q: &QuantityChanges, s: &PolicyShock) -> [f64; 14] {
    let mut hats = [0.0; 14];
    let mut put = |v: Endogenous, x: f64| hats[v.index()] = x;
    put(Endogenous::EnergyCapital, q.energy_capital);
    put(Endogenous::Emissions, q.emissions);
    put(Endogenous::Energy, q.energy);
    put(Endogenous::ResidentialEnergy, q.residential_energy);
    put(Endogenous::IndustrialEnergy, q.industrial_energy);
    put(Endogenous::IndustrialCapital, q.industrial_capital);
    put(Endogenous::IndustrialOutput, q.industrial_output);
    put(Endogenous::ResidentialPrice, prices.residential_price);
    put(Endogenous::IndustrialOutputPrice, prices.industrial_output_price);
    put(Endogenous::IndustrialPrice, prices.industrial_price);
    put(Endogenous::IndustrialCapitalPrice, s.industrial_capital_tax);
    put(Endogenous::EnergyCapitalPrice, s.energy_capital_tax);
    put(Endogenous::MarginalCost, prices.marginal_cost);
    put(Endogenous::CapitalPrice, 0.0);
    hats
}

/// Closed-form displacement for an arbitrary shock.
pub fn solve(p: &DerivedParameters, s: &PolicyShock) -> Result<Displacement> {
    s.check_against(&p.economy)?;
    let prices = solve_prices(p, s)?;
    let relative = relative_price_changes(&prices, s);
    let q = solve_quantities(p, &relative);
    let hats = assemble(&prices, &q, s);
    Ok(Displacement {
        hats,
        profit: profit_change(p, &hats, s),
        transfer: transfer_change(p, &hats, s)?,
        relative,
    })
}

/// Response to an emission-tax change alone, evaluated from its own reduced
/// expressions rather than the general bundles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionTaxResponse {
    pub marginal_cost: f64,
    pub industrial_price: f64,
    pub residential_price: f64,
    pub industrial_output_price: f64,
    pub emissions: f64,
    pub energy: f64,
    /// Whether emissions fall as they must when sigma_X > sigma_U and the tax rises.
    /// `None` when the diagnostic does not apply.
    pub emissions_fall_when_required: Option<bool>,
}

pub fn solve_special_case_emission_tax(p: &DerivedParameters, s: &PolicyShock) -> Result<EmissionTaxResponse> {
    let t = s.emission_tax;
    if (PolicyShock { emission_tax: 0.0, ..*s }) != PolicyShock::ZERO {
        return Err(Error::InvalidSpecialCase);
    }
    let e = &p.economy;
    let (f_x, f_r) = pass_through(p)?;
    let rho = p.emission_cost_share;
    let w = p.energy_capital_share;
    let emission_weight = e.emission_revenue() / e.total_energy();
    let industrial_price = f_x * emission_weight / e.industrial_price * t;
    let residential_price = f_r * emission_weight / e.residential_price * t;
    let industrial_output_price = p.industrial_energy_share * industrial_price;
    let emissions = -p.utility_substitution * (1.0 - w) * p.residential_share
        * (residential_price - industrial_output_price)
        - p.industrial_substitution
            * (1.0 - w)
            * (p.industrial_share + p.residential_share * p.industrial_energy_share)
            * industrial_price
        - p.energy_substitution * (1.0 - (1.0 - w) * rho) * t;
    let energy = emissions + p.energy_substitution * (1.0 - rho) * t;
    let emissions_fall_when_required = (t > 0.0
        && p.industrial_substitution > p.utility_substitution)
        .then_some(emissions < 0.0);
    Ok(EmissionTaxResponse {
        marginal_cost: rho * t,
        industrial_price,
        residential_price,
        industrial_output_price,
        emissions,
        energy,
        emissions_fall_when_required,
    })
}

/// Residuals of the structural identities every displacement must satisfy:
/// capital constraint, market clearing and the emission-energy relation.
pub fn structural_residuals(p: &DerivedParameters, d: &Displacement) -> [f64; 3] {
    let h = |v: Endogenous| d.get(v);
    let w = p.energy_capital_share;
    [
        w * h(Endogenous::EnergyCapital) + (1.0 - w) * h(Endogenous::IndustrialCapital),
        h(Endogenous::Energy)
            - p.industrial_share * h(Endogenous::IndustrialEnergy)
            - p.residential_share * h(Endogenous::ResidentialEnergy),
        h(Endogenous::Emissions) - h(Endogenous::Energy)
            + p.energy_substitution * (1.0 - p.emission_cost_share) * d.relative.c,
    ]
}
