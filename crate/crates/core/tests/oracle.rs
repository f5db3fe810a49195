use ecopol_core::calibration::{calibrate, CalibrationMode, CalibrationOptions};
use ecopol_core::economy::{BenchmarkEconomy, CanonicalEconomy};
use ecopol_core::oracle::{
    calibrate_parametric, first_order_accuracy, solve_equilibrium, ElasticityRule, ParametricEconomy,
    SolverOptions,
};
use ecopol_core::policy::{builtin, resolve_scenario};
use ecopol_core::shock::PolicyShock;

fn economy() -> CanonicalEconomy {
    BenchmarkEconomy::table1().canonicalize().unwrap()
}

fn oracle(mode: CalibrationMode, rule: ElasticityRule) -> ParametricEconomy {
    let p = calibrate(&economy(), &CalibrationOptions::with_mode(mode)).unwrap();
    calibrate_parametric(&p, rule).unwrap()
}

#[test]
fn solved_equilibria_satisfy_walras() {
    let pe = oracle(CalibrationMode::InferCompetition, ElasticityRule::Constant);
    let taxes = PolicyShock::emission_only(0.5).apply(&pe.params.economy, 1.0);
    let s = solve_equilibrium(&pe, &taxes, &SolverOptions::default()).unwrap();
    assert!(s.residual_norm < 1e-10);
    assert!(s.budget_residual.abs() < 1e-10);
    assert!(s.emissions < pe.params.economy.emissions);
    let k = s.energy_capital + s.industrial_capital;
    assert!((k / pe.total_capital - 1.0).abs() < 1e-10);
}

#[test]
fn perfect_competition_keeps_profit_at_zero() {
    let pe = oracle(CalibrationMode::ForcePerfectCompetition, ElasticityRule::Constant);
    let taxes = PolicyShock::emission_only(0.3).apply(&pe.params.economy, 1.0);
    let s = solve_equilibrium(&pe, &taxes, &SolverOptions::default()).unwrap();
    assert!(s.profit.abs() < 1e-8 * s.income, "{}", s.profit);
}

#[test]
fn displacement_is_first_order_exact_for_every_published_direction() {
    let pe = oracle(CalibrationMode::InferCompetition, ElasticityRule::Constant);
    for case in ["1.0", "2.0", "3.0", "4.0"] {
        let shock = resolve_scenario(&economy(), &builtin(case).unwrap()).unwrap().shock;
        let report = first_order_accuracy(&pe, &shock, 0.01, &SolverOptions::default()).unwrap();
        assert_eq!(report.rows.len(), 14);
        for row in &report.rows {
            assert!(row.pass, "{case} {}: ratio {}", row.component.symbol(), row.ratio);
        }
    }
}

#[test]
fn monopoly_oracle_also_certifies() {
    let pe = oracle(CalibrationMode::ForceMonopoly, ElasticityRule::Constant);
    let report =
        first_order_accuracy(&pe, &PolicyShock::emission_only(0.1), 0.01, &SolverOptions::default()).unwrap();
    assert!(report.passed());
}

/// State-dependent perceived elasticities add pricing terms the log-linear
/// map leaves out, so the discrepancy no longer shrinks like h squared.
#[test]
fn share_point_elasticities_are_not_what_the_displacement_linearizes() {
    let pe = oracle(CalibrationMode::InferCompetition, ElasticityRule::SharePoint);
    let report =
        first_order_accuracy(&pe, &PolicyShock::emission_only(0.1), 0.01, &SolverOptions::default()).unwrap();
    assert!(!report.passed());
}

#[test]
fn scaled_direction_has_unit_largest_component() {
    let pe = oracle(CalibrationMode::InferCompetition, ElasticityRule::Constant);
    let shock = PolicyShock::from_array([0.1, -0.25, 0.0, 0.0, 0.0]);
    let report = first_order_accuracy(&pe, &shock, 0.01, &SolverOptions::default()).unwrap();
    assert_eq!(report.direction.max_abs(), 1.0);
    assert_eq!(report.direction.residential_tax, -1.0);
}
