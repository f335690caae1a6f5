//! Numerics for semi-classical ideal quantum gases.
//!
//! The library is organized around the dimensionless degeneracy parameter
//! `eta = N λ³ / V` (cubed thermal de Broglie wavelength over specific
//! volume), which controls the size of quantum corrections to classical
//! ideal-gas behavior:
//!
//! * [`model`] — physical gas specifications in SI units, spin/statistics
//!   consistency rules, and the mapping to the dimensionless reduced state.
//! * [`statmech`] — polylogarithm kernels for the quantum number equation,
//!   fugacity solving, and exact vs. first-order pressure-correction ratios.
//! * [`pseudochem`] — Helmholtz free energies for particle/multiplet
//!   mixtures and the equilibrium fractions of momentum-space multiplets
//!   ("pseudo-molecules"), including spin-resolved pair statistics.
//! * [`lattice`] — finite momentum-mode lattices with exact canonical
//!   partition functions (direct enumeration and the symmetrization
//!   recursion) and a seeded Boltzmann coincidence sampler, used as
//!   independent desk-scale oracles for the continuum results.
//!
//! The crate is `no_std` (with `alloc`); all floating-point transcendentals
//! go through `libm` so results do not depend on the host `std` build.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod constants;
pub mod lattice;
pub mod model;
pub mod numeric;
pub mod pseudochem;
pub mod rng;
pub mod roots;
pub mod statmech;

pub use model::{GasSpec, ReducedState, Statistics};
pub use statmech::Fugacity;
