//! Randomized benchmark economies for property-style verification.
//!
//! Draws are built backwards from target shares so that every one passes
//! calibration: positive margins, a competition index of at least one and
//! positive imputed capital in both sectors.

use ecopol_core::economy::CanonicalEconomy;
use ecopol_core::shock::PolicyShock;
use ecopol_core::{calibrate, CalibrationOptions, DerivedParameters};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random benchmark in canonical units (income in million $).
pub fn draw_economy<R: Rng>(rng: &mut R) -> CanonicalEconomy {
    let industrial_price = rng.gen_range(5.0..25.0);
    let gamma = 0.8 * industrial_price;
    let industrial_tax = rng.gen_range(0.01..0.15) * industrial_price;
    let residential_price = industrial_price * rng.gen_range(1.1..2.5);
    // Residential margin as a share of price, bounded so n >= 1 for any
    // elasticity drawn below.
    let residential_elasticity: f64 = rng.gen_range(-1.5..-0.2);
    let margin_share = rng.gen_range(0.02..0.9f64.min(1.0 / -residential_elasticity));
    let margin = margin_share * residential_price;
    let room = residential_price - gamma - margin;
    let split = rng.gen_range(0.1..0.9);
    let residential_tax = split * room;
    let distribution_cost = room - residential_tax;

    let residential_energy = rng.gen_range(2_000.0..40_000.0);
    let industrial_energy = rng.gen_range(5_000.0..100_000.0);
    let energy = residential_energy + industrial_energy;

    let emission_tax = rng.gen_range(2.0..60.0);
    let emission_cost_share = rng.gen_range(0.01..0.4);
    let emissions = emission_cost_share * gamma * energy / emission_tax;

    let industrial_energy_share = rng.gen_range(0.005..0.2);
    let industrial_revenue = industrial_price * industrial_energy / industrial_energy_share;
    let income = industrial_revenue + residential_price * residential_energy;

    CanonicalEconomy {
        residential_energy,
        industrial_energy,
        residential_price,
        industrial_price,
        residential_tax,
        industrial_tax,
        marginal_cost: Some(gamma),
        distribution_cost,
        emissions,
        marginal_damage: rng.gen_range(5.0..150.0),
        emission_tax,
        income,
        energy_capital_tax: rng.gen_range(0.02..0.4),
        industrial_capital_tax: rng.gen_range(0.02..0.4),
        capital_price: 1.0,
        energy_substitution: rng.gen_range(0.05..2.0),
        residential_elasticity,
    }
}

/// A calibrated random economy. A few percent of raw draws imply a
/// nonpositive substitution elasticity and are redrawn.
pub fn draw_params<R: Rng>(rng: &mut R) -> DerivedParameters {
    loop {
        let e = draw_economy(rng);
        if let Ok(p) = calibrate(&e, &CalibrationOptions::default()) {
            return p;
        }
    }
}

/// Every instrument moved independently, in fractions.
pub fn draw_shock<R: Rng>(rng: &mut R) -> PolicyShock {
    PolicyShock::from_array(std::array::from_fn(|_| rng.gen_range(-0.5..0.5)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn most_raw_draws_calibrate() {
        let mut r = rng(7);
        let failures = (0..500)
            .filter(|_| calibrate(&draw_economy(&mut r), &CalibrationOptions::default()).is_err())
            .count();
        assert!(failures < 25, "{failures} of 500 draws rejected");
    }

    #[test]
    fn draws_are_reproducible() {
        assert_eq!(draw_economy(&mut rng(3)), draw_economy(&mut rng(3)));
    }
}
