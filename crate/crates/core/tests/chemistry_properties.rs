//! Properties of the multiplet-equilibrium chemistry: free-energy
//! stationarity at the solved fractions, leading-order and power-law
//! behavior, spin independence away from zero momentum gap, and exact
//! inversion round trips.

mod common;

use proptest::prelude::*;
use pseudogas_core::model::ReducedState;
use pseudogas_core::pseudochem::{
    eta_from_dimer_fraction, pair_fraction_at_dp, solve_dimer_fraction, solve_polymer_fraction,
    total_free_energy_dimer, MomentumSplit, PairSpinContext,
};
use pseudogas_core::statmech::TWO_POW_3_2;
use pseudogas_core::Statistics;

const COUNT: f64 = 1e20;
const TEMPERATURE: f64 = 300.0;

fn reduced_at(eta: f64, spin_degeneracy: u32) -> ReducedState {
    ReducedState {
        eta,
        eta_sp: eta / spin_degeneracy as f64,
        spin_degeneracy,
        statistics: Statistics::Bose,
        thermal_wavelength: 1e-10,
        single_particle_z: COUNT / eta,
    }
}

#[test]
fn free_energy_is_stationary_and_convex_at_the_solved_fraction() {
    for eta in [1e-3, 1e-2, 5e-2] {
        for spin_degeneracy in [1u32, 2] {
            let reduced = reduced_at(eta, spin_degeneracy);
            let x2 = solve_dimer_fraction(eta).unwrap().fraction;
            let f = |x: f64| total_free_energy_dimer(x, &reduced, TEMPERATURE, COUNT).unwrap();
            let delta = 1e-7;
            let at = f(x2);
            let plus = f(x2 + delta);
            let minus = f(x2 - delta);
            let first = (plus - minus) / (2.0 * delta);
            let second = (plus - 2.0 * at + minus) / (delta * delta);
            assert!(
                first.abs() <= 1e-6 * at.abs(),
                "eta {eta} g {spin_degeneracy}: |F'| = {} vs scale {}",
                first.abs(),
                at.abs()
            );
            assert!(second > 0.0, "eta {eta}: F'' = {second}");
        }
    }
}

#[test]
fn solved_fraction_separates_the_neighboring_free_energies() {
    let eta = 1e-2;
    let reduced = reduced_at(eta, 1);
    let x2 = solve_dimer_fraction(eta).unwrap().fraction;
    let f = |x: f64| total_free_energy_dimer(x, &reduced, TEMPERATURE, COUNT).unwrap();
    let delta = 1e-6;
    assert!(f(x2 - delta) > f(x2));
    assert!(f(x2 + delta) > f(x2));
}

#[test]
fn grid_scan_confirms_an_interior_minimum() {
    let eta = 1e-2;
    let reduced = reduced_at(eta, 1);
    let x2 = solve_dimer_fraction(eta).unwrap().fraction;
    let points = 10_000;
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..points {
        let x = 0.5 * i as f64 / points as f64;
        let f = total_free_energy_dimer(x, &reduced, TEMPERATURE, COUNT).unwrap();
        if f < best.0 {
            best = (f, x);
        }
    }
    let spacing = 0.5 / points as f64;
    assert!(
        (best.1 - x2).abs() <= spacing,
        "grid argmin {} vs solved {}",
        best.1,
        x2
    );
    assert!(best.1 > 0.0 && best.1 < 0.5 - spacing, "interior minimum");
    assert!(total_free_energy_dimer(x2, &reduced, TEMPERATURE, COUNT).unwrap() <= best.0);
}

#[test]
fn leading_order_law_with_explicit_correction_bound() {
    for j in 2..=5u32 {
        for eta in [1e-4, 1e-3] {
            let x = solve_polymer_fraction(eta, j).unwrap().fraction;
            let leading = (j as f64).powf(1.5) * eta.powi(j as i32 - 1);
            let bound = 3.0 * (j * j) as f64 * x;
            assert!(
                (x / leading - 1.0).abs() <= bound,
                "j {j} eta {eta}: ratio {} bound {}",
                x / leading,
                bound
            );
        }
    }
}

#[test]
fn fraction_power_law_has_slope_j_minus_one() {
    for j in 2..=5u32 {
        let mut points = Vec::new();
        for i in 0..9 {
            let eta = 1e-4 * 10f64.powf(i as f64 / 4.0);
            let x = solve_polymer_fraction(eta, j).unwrap().fraction;
            points.push((eta, x));
        }
        let slope = common::loglog_slope_oracle(&points);
        assert!(
            (slope - (j - 1) as f64).abs() <= 0.02,
            "j {j}: slope {slope}"
        );
    }
}

#[test]
fn dimer_solve_matches_test_side_bisection() {
    for eta in [1e-6, 1e-3, 0.05, 0.15] {
        let oracle = common::bisect(
            |x| TWO_POW_3_2 * eta * (1.0 - 2.0 * x) * (1.0 - 2.0 * x) - x,
            0.0,
            0.5 - 1e-12,
            100,
        );
        let solved = solve_dimer_fraction(eta).unwrap().fraction;
        assert!(
            (solved - oracle).abs() <= 1e-12,
            "eta {eta}: {solved} vs {oracle}"
        );
    }
}

proptest! {
    #[test]
    fn inverse_consistency_round_trip(log_eta in -8.0f64..-1.0) {
        let eta = 10f64.powf(log_eta);
        let x2 = solve_dimer_fraction(eta).unwrap().fraction;
        let back = eta_from_dimer_fraction(x2).unwrap();
        prop_assert!((back / eta - 1.0).abs() <= 1e-12, "eta {} back {}", eta, back);
    }

    #[test]
    fn residual_of_the_solved_polymer_fraction_is_tiny(
        log_eta in -8.0f64..-0.72,
        j in 2u32..6,
    ) {
        let eta = 10f64.powf(log_eta);
        let state = solve_polymer_fraction(eta, j).unwrap();
        prop_assert!(state.fixed_point_residual().abs() <= 1e-12);
        prop_assert!(state.fraction >= 0.0 && state.fraction < 1.0 / j as f64);
    }

    #[test]
    fn nonzero_gap_concentration_is_spin_independent(
        g in 1u32..9,
        delta_p in 1e-3f64..2.0,
        x2 in 0.0f64..0.49,
    ) {
        let split = MomentumSplit { delta_p, beta: 1.0, mass: 1.0 };
        let bose = pair_fraction_at_dp(x2, &split, &PairSpinContext::new(g, Statistics::Bose));
        let fermi = pair_fraction_at_dp(x2, &split, &PairSpinContext::new(g, Statistics::Fermi));
        prop_assert_eq!(bose.unwrap(), fermi.unwrap());
    }

    #[test]
    fn zero_gap_suppression_factors_sum_to_one(g in 1u32..64) {
        let at_rest = MomentumSplit { delta_p: 0.0, beta: 1.0, mass: 1.0 };
        let x2 = 0.01;
        let bose = pair_fraction_at_dp(x2, &at_rest, &PairSpinContext::new(g, Statistics::Bose))
            .unwrap();
        let fermi = pair_fraction_at_dp(x2, &at_rest, &PairSpinContext::new(g, Statistics::Fermi))
            .unwrap();
        // g₊/g² + g₋/g² = 1, so the two suppressed concentrations add to x₂
        prop_assert!((bose + fermi - x2).abs() < 1e-16);
    }
}
