//! Chemistry of momentum-space multiplets ("pseudo-molecules").
//!
//! A j-multiplet is a set of j particles sharing one momentum (or momenta
//! whose differences vanish in the continuous-spectrum approximation). Its
//! equilibrium concentration follows from minimizing the total ideal-gas
//! Helmholtz free energy of the particle/multiplet mixture at fixed T and V,
//! which reduces to the fixed point
//!
//!   x_j = j^{3/2} η^{j-1} (1 - j x_j)^j ,    x_j = N_j / N .
//!
//! The dimer case has a closed form; every order is also solved by a
//! bracketed iteration so the two routes can check each other. Spin enters
//! only through the pair degeneracy split at exactly zero momentum gap.

use core::fmt;

use crate::constants::{BOLTZMANN_KB, HBAR};
use crate::model::{pair_spin_degeneracies, ReducedState, Statistics};
use crate::numeric::int_pow;
use crate::roots::{solve_bracketed, BracketError};
use crate::statmech::TWO_POW_3_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PseudochemError {
    NonPositiveInput(&'static str),
    Domain(&'static str),
    /// Closed form and bracketed iteration disagreed, or the solver stalled.
    NoConvergence,
}

impl fmt::Display for PseudochemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositiveInput(what) => write!(f, "{what} must be positive"),
            Self::Domain(what) => write!(f, "{what}"),
            Self::NoConvergence => write!(f, "equilibrium solve did not converge"),
        }
    }
}

impl core::error::Error for PseudochemError {}

impl From<BracketError<PseudochemError>> for PseudochemError {
    fn from(err: BracketError<PseudochemError>) -> Self {
        match err {
            BracketError::Eval(e) => e,
            _ => Self::NoConvergence,
        }
    }
}

/// Equilibrium composition of one multiplet species against the monomer gas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureState {
    /// Multiplet order j ≥ 2.
    pub order: u32,
    /// Equilibrium fraction x_j = N_j / N, in [0, 1/j).
    pub fraction: f64,
    /// Degeneracy parameter the fraction was solved at.
    pub eta: f64,
}

impl MixtureState {
    /// x - j^{3/2} η^{j-1} (1 - j x)^j; zero at equilibrium.
    pub fn fixed_point_residual(&self) -> f64 {
        let j = self.order;
        let amplitude = libm::pow(j as f64, 1.5) * libm::pow(self.eta, (j - 1) as f64);
        self.fraction - amplitude * int_pow(1.0 - j as f64 * self.fraction, j)
    }
}

/// Spin bookkeeping for a particle pair: g² product states split into
/// exchange-symmetric and exchange-antisymmetric counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairSpinContext {
    pub spin_degeneracy: u32,
    pub symmetric_states: u64,
    pub antisymmetric_states: u64,
    pub statistics: Statistics,
}

impl PairSpinContext {
    pub fn new(spin_degeneracy: u32, statistics: Statistics) -> Self {
        let (symmetric_states, antisymmetric_states) = pair_spin_degeneracies(spin_degeneracy);
        Self {
            spin_degeneracy,
            symmetric_states,
            antisymmetric_states,
            statistics,
        }
    }

    fn product_states(&self) -> f64 {
        let g = self.spin_degeneracy as f64;
        g * g
    }
}

/// Relative momentum of a pair: the two members carry p ± Δp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumSplit {
    /// Half-difference of the pair momenta, kg·m/s, ≥ 0.
    pub delta_p: f64,
    /// Inverse thermal energy 1/(k_B T), 1/J.
    pub beta: f64,
    /// Single-particle mass, kg.
    pub mass: f64,
}

impl MomentumSplit {
    /// β Δp² / m, the pair's internal energy in thermal units.
    pub fn reduced_internal_energy(&self) -> f64 {
        self.beta * self.delta_p * self.delta_p / self.mass
    }
}

/// Ideal-gas Helmholtz free energy -k_B T n ln(Z e / n) (Stirling form), J.
pub fn free_energy_ideal(
    temperature: f64,
    count: f64,
    partition_z: f64,
) -> Result<f64, PseudochemError> {
    if !(temperature > 0.0) {
        return Err(PseudochemError::NonPositiveInput("temperature"));
    }
    if !(count > 0.0) {
        return Err(PseudochemError::NonPositiveInput("count"));
    }
    if !(partition_z > 0.0) {
        return Err(PseudochemError::NonPositiveInput("partition function"));
    }
    Ok(-BOLTZMANN_KB * temperature * count * (libm::log(partition_z) - libm::log(count) + 1.0))
}

/// Total free energy of a monomer/dimer mixture at dimer fraction x₂:
/// N x₂ dimers of mass 2m (partition g² Z₀(2m), with Z₀(2m) = 2^{3/2} Z₀(m))
/// plus N (1 - 2x₂) monomers (partition g Z₀(m)).
pub fn total_free_energy_dimer(
    pair_fraction: f64,
    reduced: &ReducedState,
    temperature: f64,
    count: f64,
) -> Result<f64, PseudochemError> {
    if !(0.0..0.5).contains(&pair_fraction) {
        return Err(PseudochemError::Domain("pair fraction must lie in [0, 1/2)"));
    }
    if !(count > 0.0) {
        return Err(PseudochemError::NonPositiveInput("count"));
    }
    let g = reduced.spin_degeneracy as f64;
    let z_single = g * reduced.single_particle_z;
    let z_pair = g * g * TWO_POW_3_2 * reduced.single_particle_z;
    let pair_count = count * pair_fraction;
    let single_count = count * (1.0 - 2.0 * pair_fraction);
    let pair_term = if pair_count > 0.0 {
        free_energy_ideal(temperature, pair_count, z_pair)?
    } else {
        // n ln(Z e / n) → 0 as n → 0
        0.0
    };
    Ok(pair_term + free_energy_ideal(temperature, single_count, z_single)?)
}

fn polymer_fixed_point_root(eta: f64, order: u32) -> Result<f64, PseudochemError> {
    let j = order as f64;
    let amplitude = libm::pow(j, 1.5) * libm::pow(eta, j - 1.0);
    if amplitude == 0.0 {
        return Ok(0.0);
    }
    let hi = 1.0 / j - 1e-15;
    let mut f = |x: f64| -> Result<f64, PseudochemError> {
        Ok(amplitude * int_pow(1.0 - j * x, order) - x)
    };
    let mut df =
        |x: f64| -> Option<f64> { Some(-amplitude * j * j * int_pow(1.0 - j * x, order - 1) - 1.0) };
    // Residual tolerance scaled to the root's own magnitude so tiny fractions
    // keep full relative accuracy; always far below the 1e-12 contract.
    let tol = (1e-13 * amplitude.min(1.0)).max(1e-300);
    Ok(solve_bracketed(&mut f, Some(&mut df), 0.0, hi, tol, 300)?)
}

/// Equilibrium dimer fraction: root of x = 2^{3/2} η (1 - 2x)² in [0, 1/2).
///
/// Uses the cancellation-free closed form x = 2a / (4a + 1 + √(1 + 8a)) with
/// a = 2^{3/2} η, cross-checked against the bracketed iteration.
pub fn solve_dimer_fraction(eta: f64) -> Result<MixtureState, PseudochemError> {
    if !(0.0..0.2).contains(&eta) {
        return Err(PseudochemError::Domain(
            "eta must lie in [0, 0.2) for the semi-classical mixture",
        ));
    }
    if eta == 0.0 {
        return Ok(MixtureState {
            order: 2,
            fraction: 0.0,
            eta,
        });
    }
    let a = TWO_POW_3_2 * eta;
    let closed = 2.0 * a / (4.0 * a + 1.0 + libm::sqrt(1.0 + 8.0 * a));
    let iterated = polymer_fixed_point_root(eta, 2)?;
    if libm::fabs(closed - iterated) > 1e-10 {
        return Err(PseudochemError::NoConvergence);
    }
    Ok(MixtureState {
        order: 2,
        fraction: closed,
        eta,
    })
}

/// Equilibrium fraction of j-multiplets: root of x = j^{3/2} η^{j-1} (1-jx)^j
/// on [0, 1/j), by bisection-safeguarded Newton.
pub fn solve_polymer_fraction(eta: f64, order: u32) -> Result<MixtureState, PseudochemError> {
    if order < 2 {
        return Err(PseudochemError::Domain("multiplet order must be >= 2"));
    }
    if !(0.0..0.2).contains(&eta) {
        return Err(PseudochemError::Domain(
            "eta must lie in [0, 0.2) for the semi-classical mixture",
        ));
    }
    Ok(MixtureState {
        order,
        fraction: polymer_fixed_point_root(eta, order)?,
        eta,
    })
}

/// Exact inverse of the dimer fixed point: η = x₂ / (2^{3/2} (1 - 2x₂)²).
pub fn eta_from_dimer_fraction(pair_fraction: f64) -> Result<f64, PseudochemError> {
    if !(0.0..0.5).contains(&pair_fraction) {
        return Err(PseudochemError::Domain("pair fraction must lie in [0, 1/2)"));
    }
    let survivor = 1.0 - 2.0 * pair_fraction;
    Ok(pair_fraction / (TWO_POW_3_2 * survivor * survivor))
}

/// Pair partition function g² Z₀(2m) e^{-βΔp²/m}. At exactly Δp = 0 the
/// spatial-parity rule restricts the spin degeneracy: only the
/// antisymmetric states survive for Fermi pairs, only the symmetric ones
/// for Bose pairs (Boltzmann pairs keep all g²).
pub fn pair_partition_spin(
    ctx: &PairSpinContext,
    split: &MomentumSplit,
    z0_double_mass: f64,
) -> f64 {
    if split.delta_p == 0.0 {
        let degeneracy = match ctx.statistics {
            Statistics::Fermi => ctx.antisymmetric_states as f64,
            Statistics::Bose => ctx.symmetric_states as f64,
            Statistics::Boltzmann => ctx.product_states(),
        };
        degeneracy * z0_double_mass
    } else {
        ctx.product_states() * z0_double_mass * libm::exp(-split.reduced_internal_energy())
    }
}

/// Concentration of pairs at momentum gap Δp relative to the whole gas:
/// N₂(Δp)/N = x₂ e^{-βΔp²/m}, spin-independent for Δp ≠ 0; at exactly
/// Δp = 0 the surviving-degeneracy ratio g∓/g² applies instead.
pub fn pair_fraction_at_dp(
    zero_gap_fraction: f64,
    split: &MomentumSplit,
    ctx: &PairSpinContext,
) -> Result<f64, PseudochemError> {
    if !(0.0..0.5).contains(&zero_gap_fraction) {
        return Err(PseudochemError::Domain("pair fraction must lie in [0, 1/2)"));
    }
    if split.delta_p == 0.0 {
        let surviving = match ctx.statistics {
            Statistics::Fermi => ctx.antisymmetric_states as f64,
            Statistics::Bose => ctx.symmetric_states as f64,
            Statistics::Boltzmann => ctx.product_states(),
        };
        Ok(zero_gap_fraction * surviving / ctx.product_states())
    } else {
        Ok(zero_gap_fraction * libm::exp(-split.reduced_internal_energy()))
    }
}

/// Smallness measure of one momentum-difference quantum against thermal
/// energy: (J ħ)² / (m L² k_B T). Values far below 1 mean the two momenta
/// are indistinguishable in the continuous-spectrum approximation.
pub fn continuum_criterion(
    step_count: u32,
    box_length: f64,
    mass: f64,
    temperature: f64,
) -> Result<f64, PseudochemError> {
    if step_count == 0 {
        return Err(PseudochemError::NonPositiveInput("step count"));
    }
    if !(box_length > 0.0) {
        return Err(PseudochemError::NonPositiveInput("box length"));
    }
    if !(mass > 0.0) {
        return Err(PseudochemError::NonPositiveInput("mass"));
    }
    if !(temperature > 0.0) {
        return Err(PseudochemError::NonPositiveInput("temperature"));
    }
    let step = step_count as f64 * HBAR;
    Ok(step * step / (mass * box_length * box_length * BOLTZMANN_KB * temperature))
}
