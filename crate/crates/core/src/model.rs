//! Gas specifications, spin/statistics consistency, and the reduced
//! dimensionless state that the rest of the crate keys off.
//!
//! Unit handling is confined to this module: inputs are SI, and everything
//! downstream works with the dimensionless [`ReducedState`].

use core::f64::consts::PI;
use core::fmt;

use crate::constants::{BOLTZMANN_KB, PLANCK_H};

/// Exchange statistics of the gas particles.
///
/// `Boltzmann` is the classical reference. In the first-order pressure
/// correction the sign conventions are Fermi `+`, Bose `-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Bose,
    Fermi,
    Boltzmann,
}

impl Statistics {
    pub fn label(self) -> &'static str {
        match self {
            Self::Bose => "bose",
            Self::Fermi => "fermi",
            Self::Boltzmann => "boltzmann",
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelError {
    /// A quantity that must be strictly positive was not.
    NonPositiveInput(&'static str),
    /// Integer spin paired with Fermi statistics, or half-integer with Bose.
    SpinStatisticsMismatch,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositiveInput(what) => write!(f, "{what} must be positive"),
            Self::SpinStatisticsMismatch => {
                write!(f, "spin parity is inconsistent with the exchange statistics")
            }
        }
    }
}

impl core::error::Error for ModelError {}

/// Physical description of the gas, SI units throughout.
///
/// `count` is a real number rather than an integer: the mixture chemistry
/// treats particle numbers as continuous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasSpec {
    /// Particle number (> 0, continuous).
    pub count: f64,
    /// Volume in m³ (> 0).
    pub volume: f64,
    /// Temperature in K (> 0).
    pub temperature: f64,
    /// Particle mass in kg (> 0).
    pub mass: f64,
    /// Twice the spin quantum number (so 0 = spinless, 1 = spin-1/2, ...).
    pub spin_two_s: u32,
    pub statistics: Statistics,
}

impl GasSpec {
    /// Number of spin projections, 2s + 1.
    pub fn spin_degeneracy(&self) -> u32 {
        self.spin_two_s + 1
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.count > 0.0) {
            return Err(ModelError::NonPositiveInput("count"));
        }
        if !(self.volume > 0.0) {
            return Err(ModelError::NonPositiveInput("volume"));
        }
        if !(self.temperature > 0.0) {
            return Err(ModelError::NonPositiveInput("temperature"));
        }
        if !(self.mass > 0.0) {
            return Err(ModelError::NonPositiveInput("mass"));
        }
        if !validate_spin_statistics(self.spin_two_s, self.statistics) {
            return Err(ModelError::SpinStatisticsMismatch);
        }
        Ok(())
    }
}

/// Dimensionless state that all downstream computations consume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedState {
    /// Degeneracy control parameter N λ³ / V = N / Z₀.
    pub eta: f64,
    /// Per-spin-state control parameter, eta / spin_degeneracy.
    pub eta_sp: f64,
    /// 2s + 1.
    pub spin_degeneracy: u32,
    pub statistics: Statistics,
    /// Thermal de Broglie wavelength λ = h / √(2π m k_B T), in m.
    pub thermal_wavelength: f64,
    /// Single-particle translational partition function V (2π m k_B T)^{3/2} / h³.
    pub single_particle_z: f64,
}

/// True iff the spin parity is compatible with the statistics
/// (integer spin ↔ Bose, half-integer ↔ Fermi; Boltzmann always passes).
pub fn validate_spin_statistics(spin_two_s: u32, statistics: Statistics) -> bool {
    match statistics {
        Statistics::Boltzmann => true,
        Statistics::Bose => spin_two_s % 2 == 0,
        Statistics::Fermi => spin_two_s % 2 == 1,
    }
}

/// Splits the g² two-particle spin product states into exchange-symmetric
/// and exchange-antisymmetric counts: `(g(g+1)/2, g(g-1)/2)`.
pub fn pair_spin_degeneracies(spin_degeneracy: u32) -> (u64, u64) {
    assert!(spin_degeneracy >= 1, "spin degeneracy must be >= 1");
    let g = spin_degeneracy as u64;
    (g * (g + 1) / 2, g * (g - 1) / 2)
}

/// Maps a physical [`GasSpec`] to its dimensionless [`ReducedState`].
pub fn reduced_from_physical(spec: &GasSpec) -> Result<ReducedState, ModelError> {
    spec.validate()?;
    let two_pi_m_kt = 2.0 * PI * spec.mass * BOLTZMANN_KB * spec.temperature;
    let sqrt_two_pi_m_kt = libm::sqrt(two_pi_m_kt);
    let thermal_wavelength = PLANCK_H / sqrt_two_pi_m_kt;
    // (2π m k_B T)^{3/2} / h³, kept as one expression so eta = count / z holds
    // to the last bit.
    let single_particle_z =
        spec.volume * two_pi_m_kt * sqrt_two_pi_m_kt / (PLANCK_H * PLANCK_H * PLANCK_H);
    let eta = spec.count / single_particle_z;
    let g = spec.spin_degeneracy();
    Ok(ReducedState {
        eta,
        eta_sp: eta / g as f64,
        spin_degeneracy: g,
        statistics: spec.statistics,
        thermal_wavelength,
        single_particle_z,
    })
}
