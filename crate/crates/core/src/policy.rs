//! Scenario resolution: fixed shocks, constraint programs solved on the
//! linear shock map, and recalibrating overrides.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calibration::{calibrate, CalibrationMode, CalibrationOptions};
use crate::displacement::{solve, Displacement, Endogenous};
use crate::economy::{CanonicalEconomy, DerivedParameters};
use crate::error::{Error, Result};
use crate::shock::{Instrument, PolicyShock};
use crate::tolerance;
use crate::welfare::{check_theorems, decompose, TheoremReport, WelfareDecomposition};

/// How a marginal-cost override is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaOverride {
    Level(f64),
    /// Fraction of the industrial energy price.
    ShareOfIndustrialPrice(f64),
}

/// Parameter and structure changes; any of them triggers a full recalibration.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Overrides {
    pub gamma: Option<GammaOverride>,
    pub sigma_e: Option<f64>,
    pub eps_er: Option<f64>,
    pub mode: Option<CalibrationMode>,
}

impl Overrides {
    pub fn is_empty(&self) -> bool {
        *self == Overrides::default()
    }

    /// Applies the overrides to a benchmark and calibrates it.
    pub fn calibrate(&self, economy: &CanonicalEconomy) -> Result<DerivedParameters> {
        let mut e = economy.clone();
        let mut options = CalibrationOptions::default();
        match self.gamma {
            Some(GammaOverride::Level(g)) => e.marginal_cost = Some(g),
            Some(GammaOverride::ShareOfIndustrialPrice(s)) => {
                e.marginal_cost = None;
                options.gamma_rule = s;
            }
            None => {}
        }
        if let Some(s) = self.sigma_e {
            e.energy_substitution = s;
        }
        if let Some(eps) = self.eps_er {
            e.residential_elasticity = eps;
        }
        if let Some(mode) = self.mode {
            options.mode = mode;
        }
        e.to_benchmark().check()?;
        calibrate(&e, &options)
    }
}

/// Target for the emission change.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmissionTarget {
    /// A fixed proportional change.
    Value(f64),
    /// Whatever emission change this shock produces under the same parameters.
    SameAs(PolicyShock),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// The lump-sum transfer is unchanged.
    BalancedBudget,
    Emissions(EmissionTarget),
}

/// Free instruments are solved so the constraints hold on top of the fixed shock.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Program {
    #[serde(default)]
    pub fixed: PolicyShock,
    pub free: Vec<Instrument>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicySource {
    Fixed(PolicyShock),
    /// Resolved under the scenario's own parameters.
    Program(Program),
    /// Resolved under the unmodified benchmark, then applied under the
    /// scenario's parameters, so the tax changes stay comparable.
    BaseProgram(Program),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub label: String,
    pub source: PolicySource,
    #[serde(default)]
    pub overrides: Overrides,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioResult {
    pub label: String,
    pub shock: PolicyShock,
    pub displacement: Displacement,
    pub welfare: WelfareDecomposition,
    pub theorems: TheoremReport,
    pub params: DerivedParameters,
    pub overrides: Overrides,
    /// Constraints imposed at the resolved shock, with their residuals.
    pub constraints: Vec<Constraint>,
    pub constraint_residuals: Vec<f64>,
}

fn constraint_target(p: &DerivedParameters, c: &Constraint) -> Result<f64> {
    match c {
        Constraint::BalancedBudget => Ok(0.0),
        Constraint::Emissions(EmissionTarget::Value(v)) => Ok(*v),
        Constraint::Emissions(EmissionTarget::SameAs(s)) => {
            Ok(solve(p, s)?.get(Endogenous::Emissions))
        }
    }
}

fn constraint_output(d: &Displacement, c: &Constraint) -> f64 {
    match c {
        Constraint::BalancedBudget => d.transfer,
        Constraint::Emissions(_) => d.get(Endogenous::Emissions),
    }
}

fn check_program(p: &DerivedParameters, prog: &Program) -> Result<()> {
    if prog.free.len() != prog.constraints.len() {
        return Err(Error::IllPosedSpec(format!(
            "{} free instruments for {} constraints",
            prog.free.len(),
            prog.constraints.len()
        )));
    }
    for (k, i) in prog.free.iter().enumerate() {
        if prog.free[..k].contains(i) {
            return Err(Error::IllPosedSpec(format!("instrument {i} listed twice")));
        }
        if prog.fixed.get(*i) != 0.0 {
            return Err(Error::IllPosedSpec(format!("instrument {i} is both fixed and free")));
        }
        let probe = PolicyShock::unit(*i);
        if probe.check_against(&p.economy).is_err() {
            return Err(Error::IllPosedSpec(format!(
                "free instrument {i} has a zero base tax"
            )));
        }
    }
    let budget = prog.constraints.iter().filter(|c| **c == Constraint::BalancedBudget).count();
    let emission = prog.constraints.len() - budget;
    if budget > 1 || emission > 1 {
        return Err(Error::IllPosedSpec("duplicate constraint".into()));
    }
    Ok(())
}

/// Solves a program on the superposition map. Exact up to one dense solve.
pub fn resolve_program(p: &DerivedParameters, prog: &Program) -> Result<PolicyShock> {
    check_program(p, prog)?;
    let k = prog.free.len();
    if k == 0 {
        return Ok(prog.fixed);
    }
    let base = solve(p, &prog.fixed)?;
    let mut map = DMatrix::<f64>::zeros(k, k);
    let mut rhs = DVector::<f64>::zeros(k);
    for (row, c) in prog.constraints.iter().enumerate() {
        rhs[row] = constraint_target(p, c)? - constraint_output(&base, c);
    }
    for (col, i) in prog.free.iter().enumerate() {
        let d = solve(p, &PolicyShock::unit(*i))?;
        for (row, c) in prog.constraints.iter().enumerate() {
            map[(row, col)] = constraint_output(&d, c);
        }
    }
    let x = map.lu().solve(&rhs).ok_or(Error::SingularConstraintMap)?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularConstraintMap);
    }
    let mut shock = prog.fixed;
    for (col, i) in prog.free.iter().enumerate() {
        shock.set(*i, x[col]);
    }
    Ok(shock)
}

fn evaluate(
    label: &str,
    params: DerivedParameters,
    overrides: Overrides,
    shock: PolicyShock,
    constraints: &[Constraint],
) -> Result<ScenarioResult> {
    let displacement = solve(&params, &shock)?;
    let mut constraint_residuals = Vec::with_capacity(constraints.len());
    for c in constraints {
        constraint_residuals.push(constraint_output(&displacement, c) - constraint_target(&params, c)?);
    }
    if constraint_residuals.iter().any(|r| r.abs() > tolerance::CONSTRAINT) {
        return Err(Error::SingularConstraintMap);
    }
    Ok(ScenarioResult {
        label: label.to_string(),
        shock,
        welfare: decompose(&params, &displacement),
        theorems: check_theorems(&params, &displacement),
        displacement,
        params,
        overrides,
        constraints: constraints.to_vec(),
        constraint_residuals,
    })
}

/// Resolves a policy source against already calibrated parameters.
pub fn resolve_with_params(label: &str, params: DerivedParameters, source: &PolicySource) -> Result<ScenarioResult> {
    resolve_inner(label, params, Overrides::default(), source)
}

fn resolve_inner(
    label: &str,
    params: DerivedParameters,
    overrides: Overrides,
    source: &PolicySource,
) -> Result<ScenarioResult> {
    match source {
        PolicySource::Fixed(s) => evaluate(label, params, overrides, *s, &[]),
        PolicySource::Program(prog) | PolicySource::BaseProgram(prog) => {
            let shock = resolve_program(&params, prog)?;
            evaluate(label, params, overrides, shock, &prog.constraints)
        }
    }
}

/// Calibrates with the scenario's overrides, resolves its policy and
/// evaluates the full pipeline.
pub fn resolve_scenario(economy: &CanonicalEconomy, spec: &ScenarioSpec) -> Result<ScenarioResult> {
    let params = spec.overrides.calibrate(economy)?;
    match &spec.source {
        PolicySource::BaseProgram(prog) => {
            let base = Overrides::default().calibrate(economy)?;
            let shock = resolve_program(&base, prog)?;
            evaluate(&spec.label, params, spec.overrides, shock, &[])
        }
        source => resolve_inner(&spec.label, params, spec.overrides, source),
    }
}

/// Evaluates independent scenarios concurrently; output order follows input order.
pub fn run_sensitivity(economy: &CanonicalEconomy, specs: &[ScenarioSpec]) -> Vec<Result<ScenarioResult>> {
    specs.par_iter().map(|s| resolve_scenario(economy, s)).collect()
}

/// Forces a market structure, then resolves the policy.
pub fn run_structural(
    economy: &CanonicalEconomy,
    mode: CalibrationMode,
    label: &str,
    source: PolicySource,
) -> Result<ScenarioResult> {
    if mode == CalibrationMode::InferCompetition {
        return Err(Error::IllPosedSpec("structural runs need a forced market structure".into()));
    }
    let spec = ScenarioSpec {
        label: label.to_string(),
        source,
        overrides: Overrides { mode: Some(mode), ..Overrides::default() },
    };
    resolve_scenario(economy, &spec)
}

const BASE_SHOCK: PolicyShock = PolicyShock {
    emission_tax: 0.10,
    residential_tax: 0.0,
    industrial_tax: 0.0,
    energy_capital_tax: 0.0,
    industrial_capital_tax: 0.0,
};

fn emission_tax_case(label: &str, overrides: Overrides) -> ScenarioSpec {
    ScenarioSpec {
        label: label.into(),
        source: PolicySource::Fixed(BASE_SHOCK),
        overrides,
    }
}

fn two_part_program() -> Program {
    Program {
        fixed: PolicyShock::ZERO,
        free: vec![Instrument::IndustrialTax, Instrument::EnergyCapitalTax],
        constraints: vec![
            Constraint::BalancedBudget,
            Constraint::Emissions(EmissionTarget::SameAs(BASE_SHOCK)),
        ],
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_CASES: [&str; 14] = [
    "1.0", "1.1", "1.2", "1.3", "1.4", "1.5", "1.6", "1.7", "1.8", "2.0", "3.0", "4.0", "4.7", "4.8",
];

/// The published scenarios. Accepts `1.0` or `case-1.0`.
pub fn builtin(name: &str) -> Result<ScenarioSpec> {
    let key = name.strip_prefix("case-").unwrap_or(name);
    let o = Overrides::default();
    let spec = match key {
        "1.0" => emission_tax_case(key, o),
        "1.1" => emission_tax_case(key, Overrides { gamma: Some(GammaOverride::ShareOfIndustrialPrice(0.70)), ..o }),
        "1.2" => emission_tax_case(key, Overrides { gamma: Some(GammaOverride::ShareOfIndustrialPrice(0.90)), ..o }),
        "1.3" => emission_tax_case(key, Overrides { sigma_e: Some(0.10), ..o }),
        "1.4" => emission_tax_case(key, Overrides { sigma_e: Some(0.60), ..o }),
        "1.5" => emission_tax_case(key, Overrides { eps_er: Some(-0.25), ..o }),
        "1.6" => emission_tax_case(key, Overrides { eps_er: Some(-0.75), ..o }),
        "1.7" => emission_tax_case(key, Overrides { mode: Some(CalibrationMode::ForceMonopoly), ..o }),
        "1.8" => emission_tax_case(key, Overrides { mode: Some(CalibrationMode::ForcePerfectCompetition), ..o }),
        "2.0" => ScenarioSpec {
            label: key.into(),
            source: PolicySource::Program(Program {
                fixed: BASE_SHOCK,
                free: vec![Instrument::ResidentialTax],
                constraints: vec![Constraint::BalancedBudget],
            }),
            overrides: o,
        },
        "3.0" => ScenarioSpec {
            label: key.into(),
            source: PolicySource::Program(Program {
                fixed: PolicyShock::ZERO,
                free: vec![Instrument::EmissionTax, Instrument::ResidentialTax],
                constraints: vec![
                    Constraint::BalancedBudget,
                    Constraint::Emissions(EmissionTarget::SameAs(BASE_SHOCK)),
                ],
            }),
            overrides: o,
        },
        "4.0" => ScenarioSpec {
            label: key.into(),
            source: PolicySource::Program(two_part_program()),
            overrides: o,
        },
        "4.7" => ScenarioSpec {
            label: key.into(),
            source: PolicySource::BaseProgram(two_part_program()),
            overrides: Overrides { mode: Some(CalibrationMode::ForceMonopoly), ..o },
        },
        "4.8" => ScenarioSpec {
            label: key.into(),
            source: PolicySource::BaseProgram(two_part_program()),
            overrides: Overrides { mode: Some(CalibrationMode::ForcePerfectCompetition), ..o },
        },
        _ => return Err(Error::UnknownScenario(name.to_string())),
    };
    Ok(spec)
}

/// Case lists of the published tables.
pub fn table_cases(table: &str) -> Option<&'static [&'static str]> {
    Some(match table {
        "table-2" | "table-D1" => &["1.0", "2.0", "3.0", "4.0"],
        "table-3" | "table-D2" => &["1.0", "1.1", "1.2", "1.3", "1.4", "1.5", "1.6"],
        "table-4" | "table-D3" => &["1.0", "1.7", "1.8", "4.0", "4.7", "4.8"],
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::economy::BenchmarkEconomy;

    fn economy() -> CanonicalEconomy {
        BenchmarkEconomy::table1().canonicalize().unwrap()
    }

    #[test]
    fn every_builtin_resolves() {
        for name in BUILTIN_CASES {
            let spec = builtin(name).unwrap();
            resolve_scenario(&economy(), &spec).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert!(builtin("case-2.0").is_ok());
        assert_eq!(builtin("9.9").unwrap_err(), Error::UnknownScenario("9.9".into()));
    }

    #[test]
    fn mismatched_program_is_ill_posed() {
        let p = Overrides::default().calibrate(&economy()).unwrap();
        let prog = Program {
            fixed: BASE_SHOCK,
            free: vec![Instrument::ResidentialTax, Instrument::IndustrialTax],
            constraints: vec![Constraint::BalancedBudget],
        };
        assert!(matches!(resolve_program(&p, &prog), Err(Error::IllPosedSpec(_))));
    }

    #[test]
    fn fixed_and_free_overlap_is_ill_posed() {
        let p = Overrides::default().calibrate(&economy()).unwrap();
        let prog = Program {
            fixed: BASE_SHOCK,
            free: vec![Instrument::EmissionTax],
            constraints: vec![Constraint::BalancedBudget],
        };
        assert!(matches!(resolve_program(&p, &prog), Err(Error::IllPosedSpec(_))));
    }

    #[test]
    fn one_instrument_cannot_meet_two_constraints() {
        let p = Overrides::default().calibrate(&economy()).unwrap();
        let prog = Program {
            fixed: PolicyShock::ZERO,
            free: vec![Instrument::IndustrialCapitalTax],
            constraints: vec![Constraint::BalancedBudget, Constraint::Emissions(EmissionTarget::Value(-0.01))],
        };
        assert!(resolve_program(&p, &prog).is_err());
    }

    #[test]
    fn zero_base_tax_cannot_be_free() {
        let mut e = economy();
        e.residential_tax = 0.0;
        let p = Overrides::default().calibrate(&e).unwrap();
        let prog = Program {
            fixed: BASE_SHOCK,
            free: vec![Instrument::ResidentialTax],
            constraints: vec![Constraint::BalancedBudget],
        };
        assert!(matches!(resolve_program(&p, &prog), Err(Error::IllPosedSpec(_))));
    }

    #[test]
    fn empty_program_is_the_fixed_shock() {
        let p = Overrides::default().calibrate(&economy()).unwrap();
        let prog = Program { fixed: BASE_SHOCK, free: vec![], constraints: vec![] };
        assert_eq!(resolve_program(&p, &prog).unwrap(), BASE_SHOCK);
    }

    #[test]
    fn structural_runs_reject_the_default_mode() {
        assert!(run_structural(
            &economy(),
            CalibrationMode::InferCompetition,
            "x",
            PolicySource::Fixed(BASE_SHOCK)
        )
        .is_err());
    }

    #[test]
    fn base_program_keeps_the_benchmark_shock() {
        let e = economy();
        let s40 = resolve_scenario(&e, &builtin("4.0").unwrap()).unwrap();
        let s47 = resolve_scenario(&e, &builtin("4.7").unwrap()).unwrap();
        assert_eq!(s40.shock, s47.shock);
    }
}
