use approx::assert_abs_diff_eq;
use ecopol_core::calibration::{calibrate, margins, pricing_residuals, CalibrationMode, CalibrationOptions};
use ecopol_core::economy::{validate_benchmark, BenchmarkEconomy, CanonicalEconomy};
use ecopol_core::{CompetitionIndex, Error};
use proptest::prelude::*;

fn economy() -> CanonicalEconomy {
    BenchmarkEconomy::table1().canonicalize().unwrap()
}

fn n_of(c: CompetitionIndex) -> f64 {
    match c {
        CompetitionIndex::Finite(n) => n,
        CompetitionIndex::Infinite => f64::INFINITY,
    }
}

#[test]
fn benchmark_derived_block() {
    let p = calibrate(&economy(), &CalibrationOptions::default()).unwrap();
    assert_abs_diff_eq!(p.gamma, 12.192, epsilon = 1e-12);
    assert_abs_diff_eq!(n_of(p.competition), 8.97, epsilon = 0.01);
    assert_abs_diff_eq!(p.industrial_elasticity, -0.70, epsilon = 0.01);
    assert_abs_diff_eq!(p.utility_substitution, 0.49, epsilon = 0.01);
    assert_abs_diff_eq!(p.industrial_substitution, 0.68, epsilon = 0.01);
    assert_abs_diff_eq!(p.energy_capital_share, 0.0430, epsilon = 0.0005);
    assert_abs_diff_eq!(p.residential_share, 0.1677, epsilon = 0.001);
    assert_abs_diff_eq!(p.emission_cost_share, 0.0929, epsilon = 0.001);
    // Capital and money levels in billion dollars.
    assert_abs_diff_eq!(p.energy_capital / 1e3, 671.2, epsilon = 0.5);
    assert_abs_diff_eq!(p.industrial_capital / 1e3, 14_932.0, epsilon = 0.5);
    assert_abs_diff_eq!(p.profit / 1e3, 191.6, epsilon = 0.015 * 191.6);
    assert_abs_diff_eq!(p.transfer / 1e3, 3_214.8, epsilon = 0.015 * 3_214.8);
    assert_abs_diff_eq!(p.revenue_shares.unwrap().emissions, 0.024, epsilon = 0.001);
}

#[test]
fn calibrated_parameters_satisfy_the_pricing_conditions() {
    let p = calibrate(&economy(), &CalibrationOptions::default()).unwrap();
    let (r, x) = pricing_residuals(&p);
    assert!(r.abs() < 1e-9 && x.abs() < 1e-9);
    let report = validate_benchmark(&p).unwrap();
    assert!(report.passed(), "{report:?}");
    assert!((p.emission_cost_share + p.capital_cost_share - 1.0).abs() < 1e-12);
    assert!((p.revenue_shares.unwrap().sum() - 1.0).abs() < 1e-9);
}

#[test]
fn competition_index_ignores_the_energy_substitution() {
    let mut e = economy();
    let base = calibrate(&e, &CalibrationOptions::default()).unwrap();
    e.energy_substitution = 1.7;
    let other = calibrate(&e, &CalibrationOptions::default()).unwrap();
    assert_eq!(base.competition, other.competition);
    assert_eq!(base.industrial_elasticity, other.industrial_elasticity);
}

#[test]
fn monopoly_rederives_both_elasticities() {
    let p = calibrate(&economy(), &CalibrationOptions::with_mode(CalibrationMode::ForceMonopoly)).unwrap();
    assert_eq!(p.competition, CompetitionIndex::MONOPOLY);
    assert_abs_diff_eq!(p.residential_elasticity, -4.49, epsilon = 0.01);
    assert_abs_diff_eq!(p.industrial_elasticity, -6.25, epsilon = 0.01);
    assert_abs_diff_eq!(p.gamma, 12.19, epsilon = 0.01);
}

#[test]
fn perfect_competition_zeroes_both_margins() {
    let base = calibrate(&economy(), &CalibrationOptions::default()).unwrap();
    let p = calibrate(
        &economy(),
        &CalibrationOptions::with_mode(CalibrationMode::ForcePerfectCompetition),
    )
    .unwrap();
    assert!(p.competition.is_infinite());
    assert_abs_diff_eq!(p.gamma, 14.63, epsilon = 0.01);
    assert_abs_diff_eq!(p.economy.distribution_cost, 4.54, epsilon = 0.01);
    assert_eq!(p.residential_elasticity, -0.50);
    assert_eq!(p.industrial_elasticity, base.industrial_elasticity);
    let (mr, mx) = margins(&p.economy);
    assert!(mr.abs() < 1e-12 && mx.abs() < 1e-12);
    assert!(p.profit.abs() < 1e-9 * p.economy.income);
}

#[test]
fn zero_industrial_energy_puts_everything_in_the_residential_share() {
    let mut e = economy();
    e.industrial_energy = 0.0;
    let p = calibrate(&e, &CalibrationOptions::default()).unwrap();
    assert_eq!(p.residential_share, 1.0);
    assert_eq!(p.industrial_share, 0.0);
}

#[test]
fn elasticity_above_the_competition_bound_fails_validation() {
    let mut p = calibrate(&economy(), &CalibrationOptions::default()).unwrap();
    p.residential_elasticity = -0.10;
    assert!(matches!(
        validate_benchmark(&p),
        Err(Error::ElasticityBoundViolation { which: "residential", .. })
    ));
}

#[test]
fn demand_too_inelastic_for_its_share_has_no_substitution_elasticity() {
    let mut e = economy();
    e.residential_elasticity = -0.005;
    assert!(matches!(
        calibrate(&e, &CalibrationOptions::default()),
        Err(Error::NonpositiveSigma { .. })
    ));
}

#[test]
fn inconsistent_income_fails_validation() {
    let mut p = calibrate(&economy(), &CalibrationOptions::default()).unwrap();
    p.economy.income *= 1.1;
    assert!(matches!(validate_benchmark(&p), Err(Error::IncomeIdentityViolation(_))));
}

#[test]
fn negative_margin_is_rejected() {
    let mut e = economy();
    e.industrial_tax = 0.25 * e.industrial_price;
    assert!(calibrate(&e, &CalibrationOptions::default()).is_err());
}

#[test]
fn zero_margin_needs_the_perfect_competition_mode() {
    let mut e = economy();
    e.marginal_cost = Some(e.industrial_price - e.industrial_tax);
    e.distribution_cost = e.residential_price - e.residential_tax - e.marginal_cost.unwrap();
    assert!(matches!(
        calibrate(&e, &CalibrationOptions::default()),
        Err(Error::PerfectCompetitionLimit(_))
    ));
}

#[test]
fn benchmark_file_round_trips() {
    let b = BenchmarkEconomy::table1();
    let text = toml::to_string(&b).unwrap();
    assert_eq!(BenchmarkEconomy::from_toml_str(&text).unwrap(), b);
    assert!(BenchmarkEconomy::from_toml_str(&format!("{text}\nbogus = 1\n")).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Marginal-cost changes recalibrate the whole cascade yet the pricing
    /// conditions and constant-returns identities keep holding.
    #[test]
    fn recalibration_keeps_identities(share in 0.5f64..0.93, sigma_e in 0.05f64..2.0) {
        let mut e = economy();
        e.energy_substitution = sigma_e;
        let opts = CalibrationOptions { gamma_rule: share, ..CalibrationOptions::default() };
        if let Ok(p) = calibrate(&e, &opts) {
            let (r, x) = pricing_residuals(&p);
            prop_assert!(r.abs() < 1e-9 && x.abs() < 1e-9);
            prop_assert!((p.emission_cost_share + p.capital_cost_share - 1.0).abs() < 1e-12);
            prop_assert!(n_of(p.competition) >= 1.0);
            prop_assert!(validate_benchmark(&p).unwrap().passed());
        }
    }
}
