//! Money-metric welfare of a displacement, in million dollars, evaluated at
//! benchmark levels.

use serde::{Deserialize, Serialize};

use crate::displacement::{Displacement, Endogenous};
use crate::economy::DerivedParameters;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoTerm {
    pub market_power: f64,
    pub externality: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeTerm {
    pub oligopoly_output: f64,
    pub price_discrimination: f64,
    pub externality: f64,
}

impl ThreeTerm {
    pub fn total(&self) -> f64 {
        self.oligopoly_output + self.price_discrimination + self.externality
    }
}

/// Finest decomposition, separating capital-tax wedges and margins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SixTerm {
    pub w: [f64; 6],
}

impl SixTerm {
    pub fn total(&self) -> f64 {
        self.w.iter().sum()
    }

    /// Regroups into the three-term structure.
    pub fn aggregate(&self) -> ThreeTerm {
        ThreeTerm {
            oligopoly_output: self.w[0] + self.w[1],
            price_discrimination: self.w[2] + self.w[3],
            externality: self.w[4] + self.w[5],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WelfareDecomposition {
    pub total: f64,
    pub two_term: TwoTerm,
    pub three_term: ThreeTerm,
    pub six_term: SixTerm,
}

struct Weights {
    energy: f64,
    residential: f64,
    industrial: f64,
    discrimination: f64,
    emissions: f64,
}

fn weights(p: &DerivedParameters, d: &Displacement) -> Weights {
    let e = &p.economy;
    let cross = e.residential_energy * e.industrial_energy / e.total_energy();
    Weights {
        energy: e.total_energy() * d.get(Endogenous::Energy),
        residential: e.residential_energy * d.get(Endogenous::ResidentialEnergy),
        industrial: e.industrial_energy * d.get(Endogenous::IndustrialEnergy),
        discrimination: cross
            * (d.get(Endogenous::ResidentialEnergy) - d.get(Endogenous::IndustrialEnergy)),
        emissions: e.emissions * d.get(Endogenous::Emissions),
    }
}

fn average_price(p: &DerivedParameters) -> f64 {
    let e = &p.economy;
    p.industrial_share * e.industrial_price + p.residential_share * e.residential_price
}

pub fn welfare_two_term(p: &DerivedParameters, d: &Displacement) -> TwoTerm {
    let e = &p.economy;
    let r = p.capital_wedge();
    let w = weights(p, d);
    TwoTerm {
        market_power: (e.industrial_price - r * p.gamma) * w.industrial
            + (e.residential_price - r * p.gamma) * w.residential,
        externality: (r * e.emission_tax - e.marginal_damage) * w.emissions,
    }
}

pub fn welfare_three_term(p: &DerivedParameters, d: &Displacement) -> ThreeTerm {
    let e = &p.economy;
    let r = p.capital_wedge();
    let w = weights(p, d);
    ThreeTerm {
        oligopoly_output: (average_price(p) - r * p.gamma) * w.energy,
        price_discrimination: (e.residential_price - e.industrial_price) * w.discrimination,
        externality: (r * e.emission_tax - e.marginal_damage) * w.emissions,
    }
}

pub fn welfare_six_term(p: &DerivedParameters, d: &Displacement) -> SixTerm {
    let e = &p.economy;
    let w = weights(p, d);
    let capital_gap = (e.energy_capital_tax - e.industrial_capital_tax) / p.energy_capital_price;
    SixTerm {
        w: [
            (average_price(p) - p.gamma) * w.energy,
            capital_gap * p.gamma * w.energy,
            (p.residential_margin - p.industrial_margin) * w.discrimination,
            (e.residential_tax - e.industrial_tax + e.distribution_cost) * w.discrimination,
            (e.emission_tax - e.marginal_damage) * w.emissions,
            -capital_gap * e.emission_tax * w.emissions,
        ],
    }
}

/// Terms as if both capital taxes were equal: the objects the theorems are stated for.
pub fn welfare_uniform_tax(p: &DerivedParameters, d: &Displacement) -> ThreeTerm {
    let e = &p.economy;
    let w = weights(p, d);
    ThreeTerm {
        oligopoly_output: (average_price(p) - p.gamma) * w.energy,
        price_discrimination: (e.residential_price - e.industrial_price) * w.discrimination,
        externality: (e.emission_tax - e.marginal_damage) * w.emissions,
    }
}

pub fn decompose(p: &DerivedParameters, d: &Displacement) -> WelfareDecomposition {
    let three_term = welfare_three_term(p, d);
    WelfareDecomposition {
        total: three_term.total(),
        two_term: welfare_two_term(p, d),
        three_term,
        six_term: welfare_six_term(p, d),
    }
}

/// Which sufficient condition of the first theorem applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem1Branch {
    /// Residential use rises.
    ResidentialRises,
    /// Both segments contract, industrial by more.
    IndustrialFallsMore,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    /// Oligopoly output term.
    pub psi: f64,
    /// Price discrimination term.
    pub omega: f64,
    /// Total energy falls and residential buyers pay more.
    pub t1_applicable: bool,
    pub t1_branch: Option<Theorem1Branch>,
    /// Psi < 0 and Omega > 0; `None` when not applicable or no branch fired.
    pub t1_holds: Option<bool>,
    pub t2_necessary_holds: bool,
    pub t2_threshold: f64,
    pub t2_sufficient_holds: bool,
}

pub fn check_theorems(p: &DerivedParameters, d: &Displacement) -> TheoremReport {
    let e = &p.economy;
    let uniform = welfare_uniform_tax(p, d);
    let (psi, omega) = (uniform.oligopoly_output, uniform.price_discrimination);
    let e_hat = d.get(Endogenous::Energy);
    let er = d.get(Endogenous::ResidentialEnergy);
    let ex = d.get(Endogenous::IndustrialEnergy);
    let t1_applicable = e_hat < 0.0 && e.residential_price > e.industrial_price;
    let t1_branch = if !t1_applicable {
        None
    } else if er > 0.0 {
        Some(Theorem1Branch::ResidentialRises)
    } else if ex < er && er < 0.0 {
        Some(Theorem1Branch::IndustrialFallsMore)
    } else {
        None
    };
    let t1_holds = t1_branch.map(|_| psi < 0.0 && omega > 0.0);
    let t2_threshold = p.industrial_share * (e.industrial_price - p.gamma)
        / (p.residential_share * (e.residential_price - p.gamma))
        * (-ex);
    let t2_necessary_holds = t1_applicable && er > 0.0;
    let t2_sufficient_holds = t1_applicable && er > t2_threshold && t2_threshold > 0.0;
    TheoremReport {
        psi,
        omega,
        t1_applicable,
        t1_branch,
        t1_holds,
        t2_necessary_holds,
        t2_threshold,
        t2_sufficient_holds,
    }
}
