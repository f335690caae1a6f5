//! Physical constants, fixed to the exact post-2019 SI definitions.
//!
//! These are deliberately not configurable: golden outputs stay bit-stable
//! only if every consumer agrees on the same values.

use core::f64::consts::PI;

/// Planck constant, J·s (exact by SI definition).
pub const PLANCK_H: f64 = 6.626_070_15e-34;

/// Boltzmann constant, J/K (exact by SI definition).
pub const BOLTZMANN_KB: f64 = 1.380_649e-23;

/// Reduced Planck constant h/2π, J·s.
pub const HBAR: f64 = PLANCK_H / (2.0 * PI);

/// The constants bundled as a value, for code that wants to pass them around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Planck constant, J·s.
    pub planck_h: f64,
    /// Boltzmann constant, J/K.
    pub boltzmann_kb: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
}

impl PhysicalConstants {
    /// The exact SI values.
    pub const SI: Self = Self {
        planck_h: PLANCK_H,
        boltzmann_kb: BOLTZMANN_KB,
        hbar: HBAR,
    };
}
