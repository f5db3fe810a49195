use approx::assert_abs_diff_eq;
use ecopol_core::calibration::{calibrate, CalibrationMode, CalibrationOptions};
use ecopol_core::displacement::{solve_special_case_emission_tax, structural_residuals};
use ecopol_core::economy::{BenchmarkEconomy, CanonicalEconomy};
use ecopol_core::linear_system::{assemble_linear_system, solve_dense};
use ecopol_core::shock::{Instrument, PolicyShock};
use ecopol_core::tolerance::rel_close;
use ecopol_core::{solve, DerivedParameters, Endogenous, Error};
use proptest::prelude::*;

fn economy() -> CanonicalEconomy {
    BenchmarkEconomy::table1().canonicalize().unwrap()
}

fn params() -> DerivedParameters {
    calibrate(&economy(), &CalibrationOptions::default()).unwrap()
}

fn pct(d: &ecopol_core::Displacement, v: Endogenous) -> f64 {
    100.0 * d.get(v)
}

#[test]
fn ten_percent_emission_tax() {
    use Endogenous::*;
    let d = solve(&params(), &PolicyShock::emission_only(0.10)).unwrap();
    for (v, printed) in [
        (Emissions, -3.27),
        (Energy, -0.55),
        (ResidentialEnergy, -0.34),
        (IndustrialEnergy, -0.59),
        (EnergyCapital, -0.27),
        (IndustrialCapital, 0.01),
        (IndustrialOutput, -0.02),
        (MarginalCost, 0.93),
        (IndustrialPrice, 0.88),
        (ResidentialPrice, 0.70),
        (IndustrialOutputPrice, 0.04),
    ] {
        assert_abs_diff_eq!(pct(&d, v), printed, epsilon = 0.02);
    }
    assert_abs_diff_eq!(100.0 * d.transfer, 0.16, epsilon = 0.02);
    assert_abs_diff_eq!(100.0 * d.profit.unwrap(), 0.31, epsilon = 0.02);
    assert_eq!(d.get(CapitalPrice), 0.0);
}

#[test]
fn zero_shock_moves_nothing() {
    let d = solve(&params(), &PolicyShock::ZERO).unwrap();
    assert!(d.hats.iter().all(|h| *h == 0.0));
    assert_eq!(d.transfer, 0.0);
    assert_eq!(d.profit, Some(0.0));
}

#[test]
fn profit_change_is_undefined_without_profit() {
    let p = calibrate(
        &economy(),
        &CalibrationOptions::with_mode(CalibrationMode::ForcePerfectCompetition),
    )
    .unwrap();
    let d = solve(&p, &PolicyShock::emission_only(0.1)).unwrap();
    assert_eq!(d.profit, None);
}

#[test]
fn pass_through_is_complete_under_perfect_competition() {
    let p = calibrate(
        &economy(),
        &CalibrationOptions::with_mode(CalibrationMode::ForcePerfectCompetition),
    )
    .unwrap();
    let s = PolicyShock::emission_only(0.1);
    let d = solve(&p, &s).unwrap();
    let e = &p.economy;
    let cost = e.emission_revenue() / e.total_energy() * s.emission_tax;
    assert_abs_diff_eq!(
        d.get(Endogenous::IndustrialPrice) * e.industrial_price,
        cost,
        epsilon = 1e-12
    );
}

#[test]
fn special_case_agrees_with_the_general_solution() {
    let p = params();
    let s = PolicyShock::emission_only(0.1);
    let general = solve(&p, &s).unwrap();
    let special = solve_special_case_emission_tax(&p, &s).unwrap();
    for (a, v) in [
        (special.marginal_cost, Endogenous::MarginalCost),
        (special.industrial_price, Endogenous::IndustrialPrice),
        (special.residential_price, Endogenous::ResidentialPrice),
        (special.industrial_output_price, Endogenous::IndustrialOutputPrice),
        (special.emissions, Endogenous::Emissions),
        (special.energy, Endogenous::Energy),
    ] {
        assert_abs_diff_eq!(a, general.get(v), epsilon = 1e-12);
    }
    assert!(special.marginal_cost > 0.0);
}

#[test]
fn special_case_rejects_other_instruments() {
    let s = PolicyShock { residential_tax: 0.01, ..PolicyShock::emission_only(0.1) };
    assert_eq!(
        solve_special_case_emission_tax(&params(), &s).unwrap_err(),
        Error::InvalidSpecialCase
    );
}

#[test]
fn shock_on_an_untaxed_base_is_rejected() {
    let mut e = economy();
    e.residential_tax = 0.0;
    let p = calibrate(&e, &CalibrationOptions::default()).unwrap();
    assert!(matches!(
        solve(&p, &PolicyShock::unit(Instrument::ResidentialTax)),
        Err(Error::ShockOnZeroTax(_))
    ));
}

#[test]
fn dense_system_residual_vanishes_at_the_closed_form() {
    let p = params();
    let s = PolicyShock::from_array([0.1, -0.2, 0.3, -0.05, 0.02]);
    let d = solve(&p, &s).unwrap();
    let sys = assemble_linear_system(&p, &s).unwrap();
    let r = sys.residual(&d.hats);
    assert!(r.iter().all(|x| x.abs() < 1e-12), "{r:?}");
}

fn perturbed(share: f64, sigma_e: f64, eps_er: f64) -> Option<DerivedParameters> {
    let mut e = economy();
    e.energy_substitution = sigma_e;
    e.residential_elasticity = eps_er;
    let opts = CalibrationOptions { gamma_rule: share, ..CalibrationOptions::default() };
    calibrate(&e, &opts).ok()
}

fn shock() -> impl Strategy<Value = PolicyShock> {
    prop::array::uniform5(-0.5f64..0.5).prop_map(PolicyShock::from_array)
}

proptest! {
    #[test]
    fn closed_form_matches_dense_solve(
        share in 0.5f64..0.9, sigma_e in 0.05f64..2.0, eps_er in -1.5f64..-0.2, s in shock()
    ) {
        if let Some(p) = perturbed(share, sigma_e, eps_er) {
            let closed = solve(&p, &s).unwrap();
            let dense = solve_dense(&p, &s).unwrap();
            for k in 0..14 {
                prop_assert!(rel_close(closed.hats[k], dense[k], 1e-10, f64::MIN_POSITIVE),
                    "component {k}: {} vs {}", closed.hats[k], dense[k]);
            }
        }
    }

    #[test]
    fn structural_identities_hold(
        share in 0.5f64..0.9, sigma_e in 0.05f64..2.0, eps_er in -1.5f64..-0.2, s in shock()
    ) {
        if let Some(p) = perturbed(share, sigma_e, eps_er) {
            let d = solve(&p, &s).unwrap();
            for r in structural_residuals(&p, &d) {
                prop_assert!(r.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn superposition(a in shock(), b in shock(), k in -3.0f64..3.0) {
        let p = params();
        let da = solve(&p, &a).unwrap();
        let db = solve(&p, &b).unwrap();
        let dab = solve(&p, &(a + k * b)).unwrap();
        for i in 0..14 {
            prop_assert!((dab.hats[i] - da.hats[i] - k * db.hats[i]).abs() < 1e-12);
        }
        prop_assert!((dab.transfer - da.transfer - k * db.transfer).abs() < 1e-12);
    }

    /// A higher emission tax alone always lowers emissions and raises marginal cost.
    #[test]
    fn emission_tax_cuts_emissions(t in 0.001f64..1.0, sigma_e in 0.05f64..2.0) {
        if let Some(p) = perturbed(0.8, sigma_e, -0.5) {
            let d = solve(&p, &PolicyShock::emission_only(t)).unwrap();
            prop_assert!(d.get(Endogenous::Emissions) < 0.0);
            prop_assert!(d.get(Endogenous::MarginalCost) > 0.0);
        }
    }
}
