//! Finite momentum-mode lattices with exact canonical statistics.
//!
//! A [`ModeLattice`] is the full, explicit single-particle spectrum of a
//! cubic box truncated at `|n_i| <= n_max` per axis. On such a lattice the
//! canonical partition function and the full mode-occupancy distribution
//! can be computed exactly, by two independent routes:
//!
//! * [`enumerate_exact`] — brute-force sum over every occupation
//!   configuration (multisets for Bose, subsets for Fermi, weighted
//!   multisets for Boltzmann);
//! * [`canonical_partition_recursion`] — the symmetrization recursion
//!   Z_N = (1/N) Σ_k (±1)^{k+1} z₁(kβ) Z_{N-k}, with occupancy marginals
//!   obtained by removing one mode from the spectrum at a time.
//!
//! A seeded, counter-based Boltzmann sampler provides the matching
//! stochastic estimate of momentum-coincidence fractions.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use core::fmt;

use crate::constants::{BOLTZMANN_KB, HBAR, PLANCK_H};
use crate::model::Statistics;
use crate::numeric::{int_pow, NeumaierSum};
use crate::rng::SplitMix64;

/// Mode-count guard: up to (2·20 + 1)³ = 68921 modes.
pub const MAX_N_MAX: u32 = 20;
/// Configuration budget for exact enumeration.
pub const MAX_CONFIGURATIONS: u128 = 5_000_000;

/// How box momenta are quantized: the physically standard periodic-box
/// convention p = (h/L) n, or the ħ-based variant p = (ħ/L) n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantizationConvention {
    HbarOverL,
    HOverL,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeError {
    /// n_max beyond the mode-count guard.
    LatticeTooLarge,
    /// The exact enumeration would exceed the configuration budget.
    EnumerationTooLarge,
    NonPositiveInput(&'static str),
    InvalidInput(&'static str),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LatticeTooLarge => write!(f, "lattice exceeds the mode-count guard"),
            Self::EnumerationTooLarge => {
                write!(f, "enumeration exceeds the configuration budget")
            }
            Self::NonPositiveInput(what) => write!(f, "{what} must be positive"),
            Self::InvalidInput(what) => write!(f, "{what}"),
        }
    }
}

impl core::error::Error for LatticeError {}

/// Explicit single-particle spectrum of a truncated cubic momentum lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeLattice {
    /// Box edge length L, m.
    pub box_length: f64,
    /// Particle mass, kg.
    pub mass: f64,
    /// Inverse thermal energy 1/(k_B T), 1/J.
    pub beta: f64,
    /// Modes run over integer vectors with |n_i| <= n_max per axis.
    pub n_max: u32,
    pub convention: QuantizationConvention,
    /// Mode energies p²/2m in J, sorted ascending; exactly one zero entry.
    pub energies: Vec<f64>,
}

impl ModeLattice {
    pub fn mode_count(&self) -> usize {
        self.energies.len()
    }

    /// Boltzmann factors e^{-multiple·β·ε} per mode.
    pub fn boltzmann_factors(&self, multiple: f64) -> Vec<f64> {
        self.energies
            .iter()
            .map(|&e| libm::exp(-multiple * self.beta * e))
            .collect()
    }

    /// z₁(multiple·β) = Σ_modes e^{-multiple·β·ε}, compensated.
    pub fn single_particle_sum(&self, multiple: f64) -> f64 {
        let mut acc = NeumaierSum::new();
        for w in self.boltzmann_factors(multiple) {
            acc.add(w);
        }
        acc.value()
    }

    /// Continuum single-particle partition function V (2π m k_B T)^{3/2}/h³.
    /// The discrete sum approaches this in the `HOverL` convention once the
    /// level spacing is small against k_B T and the thermal occupation fits
    /// inside the truncation.
    pub fn continuum_partition(&self) -> f64 {
        let volume = self.box_length * self.box_length * self.box_length;
        let two_pi_m_kt = 2.0 * core::f64::consts::PI * self.mass / self.beta;
        volume * two_pi_m_kt * libm::sqrt(two_pi_m_kt) / (PLANCK_H * PLANCK_H * PLANCK_H)
    }

    /// Effective degeneracy parameter η = N / z₁(β) for this finite system.
    pub fn effective_eta(&self, particle_count: u32) -> f64 {
        particle_count as f64 / self.single_particle_sum(1.0)
    }
}

/// Enumerates the (2·n_max + 1)³ modes of a cubic box. `n_max = 0` is the
/// degenerate single-mode lattice.
pub fn build_lattice(
    box_length: f64,
    mass: f64,
    temperature: f64,
    n_max: u32,
    convention: QuantizationConvention,
) -> Result<ModeLattice, LatticeError> {
    if n_max > MAX_N_MAX {
        return Err(LatticeError::LatticeTooLarge);
    }
    if !(box_length > 0.0) {
        return Err(LatticeError::NonPositiveInput("box length"));
    }
    if !(mass > 0.0) {
        return Err(LatticeError::NonPositiveInput("mass"));
    }
    if !(temperature > 0.0) {
        return Err(LatticeError::NonPositiveInput("temperature"));
    }
    let unit = match convention {
        QuantizationConvention::HOverL => PLANCK_H / box_length,
        QuantizationConvention::HbarOverL => HBAR / box_length,
    };
    let energy_scale = unit * unit / (2.0 * mass);
    let span = -(n_max as i64)..=n_max as i64;
    let mut energies = Vec::with_capacity((2 * n_max as usize + 1).pow(3));
    for nx in span.clone() {
        for ny in span.clone() {
            for nz in span.clone() {
                let norm2 = (nx * nx + ny * ny + nz * nz) as f64;
                energies.push(energy_scale * norm2);
            }
        }
    }
    energies.sort_unstable_by(f64::total_cmp);
    Ok(ModeLattice {
        box_length,
        mass,
        beta: 1.0 / (BOLTZMANN_KB * temperature),
        n_max,
        convention,
        energies,
    })
}

/// Exact canonical data for N particles on a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalResult {
    pub particle_count: u32,
    pub statistics: Statistics,
    /// Canonical partition function Z_N.
    pub partition_z: f64,
    /// j → expected fraction of particles sitting in modes of occupancy ≥ j.
    pub multiplet_fractions: BTreeMap<u32, f64>,
}

fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|k| k as f64).product()
}

/// Z_0..Z_n from the symmetrization recursion, given z₁(kβ) for k = 1..n.
fn symmetrized_partitions(power_sums: &[f64], n: u32, statistics: Statistics) -> Vec<f64> {
    let mut z = vec![1.0];
    for m in 1..=n as usize {
        let mut acc = NeumaierSum::new();
        for k in 1..=m {
            let sign = match statistics {
                Statistics::Bose => 1.0,
                Statistics::Fermi => {
                    if k % 2 == 1 {
                        1.0
                    } else {
                        -1.0
                    }
                }
                Statistics::Boltzmann => unreachable!("handled by the closed form"),
            };
            acc.add(sign * power_sums[k - 1] * z[m - k]);
        }
        z.push(acc.value() / m as f64);
    }
    z
}

/// Canonical partition function and occupancy statistics through the
/// symmetrization recursion (closed form z₁^N/N! for Boltzmann).
///
/// Occupancy marginals come from removing one mode at a time: with mode i
/// deleted from the spectrum, P(n_i = k) = x_i^k Z^{(i)}_{N-k} / Z_N.
pub fn canonical_partition_recursion(
    lattice: &ModeLattice,
    particle_count: u32,
    statistics: Statistics,
) -> CanonicalResult {
    assert!(
        (1..=12).contains(&particle_count),
        "recursion particle count must lie in [1, 12]"
    );
    let n = particle_count;
    let weights = lattice.boltzmann_factors(1.0);
    let power_sums: Vec<f64> = (1..=n)
        .map(|k| lattice.single_particle_sum(k as f64))
        .collect();

    let partition_z;
    let mut fractions = BTreeMap::new();

    match statistics {
        Statistics::Boltzmann => {
            let z1 = power_sums[0];
            partition_z = int_pow(z1, n) / factorial(n);
            // Mode occupancies are binomial: n_i ~ B(N, x_i/z₁).
            let mut acc = vec![NeumaierSum::new(); n as usize + 1];
            for &x in &weights {
                let p = x / z1;
                for k in 1..=n {
                    let prob = factorial(n) / (factorial(k) * factorial(n - k))
                        * int_pow(p, k)
                        * int_pow(1.0 - p, n - k);
                    for j in 1..=k {
                        acc[j as usize].add(k as f64 * prob);
                    }
                }
            }
            for j in 1..=n {
                fractions.insert(j, acc[j as usize].value() / n as f64);
            }
        }
        Statistics::Bose | Statistics::Fermi => {
            let z_all = symmetrized_partitions(&power_sums, n, statistics);
            partition_z = z_all[n as usize];
            if partition_z > 0.0 {
                let mut acc = vec![NeumaierSum::new(); n as usize + 1];
                for &x in &weights {
                    let removed: Vec<f64> = (1..=n)
                        .map(|k| power_sums[k as usize - 1] - int_pow(x, k))
                        .collect();
                    let z_removed = symmetrized_partitions(&removed, n, statistics);
                    let k_cap = if statistics == Statistics::Fermi { 1 } else { n };
                    for k in 1..=k_cap {
                        let prob = int_pow(x, k) * z_removed[(n - k) as usize] / partition_z;
                        for j in 1..=k {
                            acc[j as usize].add(k as f64 * prob);
                        }
                    }
                }
                for j in 1..=n {
                    fractions.insert(j, acc[j as usize].value() / n as f64);
                }
            }
        }
    }

    CanonicalResult {
        particle_count,
        statistics,
        partition_z,
        multiplet_fractions: fractions,
    }
}

/// C(n, k) if it stays at or below `cap`.
fn binomial_capped(n: u128, k: u128, cap: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 1..=k {
        c = c * (n - k + i) / i;
        if c > cap {
            return None;
        }
    }
    Some(c)
}

struct Enumerator<'a> {
    weights: &'a [f64],
    statistics: Statistics,
    partition: NeumaierSum,
    occupancy: Vec<NeumaierSum>,
}

impl Enumerator<'_> {
    fn visit(&mut self, start_mode: usize, remaining: u32, weight: f64, runs: &mut Vec<u32>) {
        if remaining == 0 {
            self.partition.add(weight);
            for &count in runs.iter() {
                for j in 1..=count {
                    self.occupancy[j as usize].add(weight * count as f64);
                }
            }
            return;
        }
        for mode in start_mode..self.weights.len() {
            let x = self.weights[mode];
            let max_count = match self.statistics {
                Statistics::Fermi => 1,
                _ => remaining,
            };
            let mut run_weight = weight;
            for count in 1..=max_count {
                run_weight *= x;
                let config_weight = match self.statistics {
                    Statistics::Boltzmann => run_weight / factorial(count),
                    _ => run_weight,
                };
                runs.push(count);
                self.visit(mode + 1, remaining - count, config_weight, runs);
                runs.pop();
            }
        }
    }
}

/// Brute-force ground truth: sums e^{-βE} over every occupation
/// configuration and tallies the exact occupancy distribution.
pub fn enumerate_exact(
    lattice: &ModeLattice,
    particle_count: u32,
    statistics: Statistics,
) -> Result<CanonicalResult, LatticeError> {
    if particle_count == 0 {
        return Err(LatticeError::InvalidInput("particle count must be >= 1"));
    }
    let modes = lattice.mode_count() as u128;
    let picks = particle_count as u128;
    let budget = match statistics {
        Statistics::Fermi => binomial_capped(modes, picks, MAX_CONFIGURATIONS),
        _ => binomial_capped(modes + picks - 1, picks, MAX_CONFIGURATIONS),
    };
    if budget.is_none() {
        return Err(LatticeError::EnumerationTooLarge);
    }

    let weights = lattice.boltzmann_factors(1.0);
    let mut enumerator = Enumerator {
        weights: &weights,
        statistics,
        partition: NeumaierSum::new(),
        occupancy: vec![NeumaierSum::new(); particle_count as usize + 1],
    };
    let mut runs = Vec::with_capacity(particle_count as usize);
    enumerator.visit(0, particle_count, 1.0, &mut runs);

    let partition_z = enumerator.partition.value();
    let mut fractions = BTreeMap::new();
    if partition_z > 0.0 {
        for j in 1..=particle_count {
            fractions.insert(
                j,
                enumerator.occupancy[j as usize].value() / (partition_z * particle_count as f64),
            );
        }
    }
    Ok(CanonicalResult {
        particle_count,
        statistics,
        partition_z,
        multiplet_fractions: fractions,
    })
}

/// Closed-form mean coincidence fraction under independent Boltzmann draws:
/// 1 - Σ_i p_i (1 - p_i)^{N-1} with p_i = e^{-βε_i}/z₁.
pub fn expected_pair_fraction(lattice: &ModeLattice, particle_count: u32) -> f64 {
    assert!(particle_count >= 2, "need at least two particles");
    let weights = lattice.boltzmann_factors(1.0);
    let z1 = lattice.single_particle_sum(1.0);
    let mut lonely = NeumaierSum::new();
    for &x in &weights {
        let p = x / z1;
        lonely.add(p * int_pow(1.0 - p, particle_count - 1));
    }
    1.0 - lonely.value()
}

/// Monte Carlo estimate of momentum-coincidence fractions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub trials: u32,
    pub pair_fraction_mean: f64,
    pub pair_fraction_stderr: f64,
    pub seed: u64,
}

fn multiplet_fraction_of_draws(draws: &mut [usize], multiplicity: u32) -> f64 {
    draws.sort_unstable();
    let total = draws.len();
    let mut in_multiplets = 0usize;
    let mut run = 1usize;
    for i in 1..=total {
        if i < total && draws[i] == draws[i - 1] {
            run += 1;
        } else {
            if run >= multiplicity as usize {
                in_multiplets += run;
            }
            run = 1;
        }
    }
    in_multiplets as f64 / total as f64
}

fn sampled_fractions(
    lattice: &ModeLattice,
    particle_count: u32,
    multiplicity: u32,
    trial_range: core::ops::Range<u32>,
    seed: u64,
) -> Vec<f64> {
    let weights = lattice.boltzmann_factors(1.0);
    let mut total = NeumaierSum::new();
    for &w in &weights {
        total.add(w);
    }
    let norm = total.value();
    let mut cdf = Vec::with_capacity(weights.len());
    let mut running = NeumaierSum::new();
    for &w in &weights {
        running.add(w);
        cdf.push(running.value() / norm);
    }
    if let Some(last) = cdf.last_mut() {
        *last = 1.0;
    }

    let top = cdf.len() - 1;
    let mut draws = vec![0usize; particle_count as usize];
    trial_range
        .map(|trial| {
            // One substream per trial: decomposing trials across workers
            // cannot change any drawn value.
            let mut rng = SplitMix64::substream(seed, trial as u64);
            for slot in draws.iter_mut() {
                let u = rng.next_f64();
                *slot = cdf.partition_point(|&c| c <= u).min(top);
            }
            multiplet_fraction_of_draws(&mut draws, multiplicity)
        })
        .collect()
}

fn mean_and_stderr(fractions: &[f64]) -> (f64, f64) {
    let n = fractions.len() as f64;
    let mut sum = NeumaierSum::new();
    for &f in fractions {
        sum.add(f);
    }
    let mean = sum.value() / n;
    let mut squares = NeumaierSum::new();
    for &f in fractions {
        squares.add((f - mean) * (f - mean));
    }
    let variance = squares.value() / (n - 1.0);
    (mean, libm::sqrt(variance / n))
}

/// Draws `particle_count` modes per trial with probability ∝ e^{-βε} and
/// reports the mean fraction of particles sharing a mode with at least one
/// other particle. Deterministic for a fixed seed, independent of how
/// trials are partitioned across workers.
pub fn sample_boltzmann_coincidences(
    lattice: &ModeLattice,
    particle_count: u32,
    trials: u32,
    seed: u64,
) -> SampleStats {
    assert!(particle_count >= 2, "coincidences need at least two particles");
    assert!(trials >= 100, "at least 100 trials required");
    let fractions = sampled_fractions(lattice, particle_count, 2, 0..trials, seed);
    let (mean, stderr) = mean_and_stderr(&fractions);
    SampleStats {
        trials,
        pair_fraction_mean: mean,
        pair_fraction_stderr: stderr,
        seed,
    }
}

/// One lattice of a scaling family: its effective η and the fraction of
/// particles in ≥ j-occupied modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingPoint {
    pub eta_effective: f64,
    pub fraction: f64,
    /// Standard error when the fraction was sampled; `None` when exact.
    pub stderr: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingMethod {
    /// Exact enumeration (subject to the configuration budget).
    Exact,
    /// Boltzmann coincidence sampling; lattice k uses substream seed + k.
    Sampled { trials: u32, seed: u64 },
}

/// Sweeps a family of lattices and reports (η_effective, fraction_j) pairs
/// for power-law fitting.
pub fn multiplet_scaling_report(
    lattices: &[ModeLattice],
    particle_count: u32,
    statistics: Statistics,
    multiplicity: u32,
    method: ScalingMethod,
) -> Result<Vec<ScalingPoint>, LatticeError> {
    if multiplicity < 2 || multiplicity > particle_count {
        return Err(LatticeError::InvalidInput(
            "multiplicity must lie in [2, particle count]",
        ));
    }
    if matches!(method, ScalingMethod::Sampled { .. }) && statistics != Statistics::Boltzmann {
        return Err(LatticeError::InvalidInput(
            "sampling draws independent particles and requires Boltzmann statistics",
        ));
    }
    let mut points = Vec::with_capacity(lattices.len());
    for (index, lattice) in lattices.iter().enumerate() {
        let eta_effective = lattice.effective_eta(particle_count);
        let point = match method {
            ScalingMethod::Exact => {
                let result = enumerate_exact(lattice, particle_count, statistics)?;
                ScalingPoint {
                    eta_effective,
                    fraction: result
                        .multiplet_fractions
                        .get(&multiplicity)
                        .copied()
                        .unwrap_or(0.0),
                    stderr: None,
                }
            }
            ScalingMethod::Sampled { trials, seed } => {
                assert!(trials >= 100, "at least 100 trials required");
                let fractions = sampled_fractions(
                    lattice,
                    particle_count,
                    multiplicity,
                    0..trials,
                    seed.wrapping_add(index as u64),
                );
                let (mean, stderr) = mean_and_stderr(&fractions);
                ScalingPoint {
                    eta_effective,
                    fraction: mean,
                    stderr: Some(stderr),
                }
            }
        };
        points.push(point);
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HELIUM4_MASS: f64 = 6.6465e-27;

    /// Box length for which h²β/(2mL²) = 1/T exactly by construction.
    fn theta_box() -> f64 {
        PLANCK_H / libm::sqrt(2.0 * HELIUM4_MASS * BOLTZMANN_KB)
    }

    fn lattice_with_theta(theta: f64, n_max: u32) -> ModeLattice {
        build_lattice(
            theta_box(),
            HELIUM4_MASS,
            1.0 / theta,
            n_max,
            QuantizationConvention::HOverL,
        )
        .unwrap()
    }

    #[test]
    fn build_counts_and_energies() {
        let lat = lattice_with_theta(0.5, 1);
        assert_eq!(lat.mode_count(), 27);
        assert_eq!(lat.energies[0], 0.0);
        assert!(lat.energies[1] > 0.0);
        assert!(lat.energies.windows(2).all(|w| w[0] <= w[1]));
        // first excited level is h²/(2mL²) in the h/L convention
        let expected = PLANCK_H * PLANCK_H / (2.0 * HELIUM4_MASS * theta_box() * theta_box());
        assert!((lat.energies[1] / expected - 1.0).abs() < 1e-14);
        // exactly one zero mode
        assert_eq!(lat.energies.iter().filter(|&&e| e == 0.0).count(), 1);
    }

    #[test]
    fn build_guards() {
        assert_eq!(
            build_lattice(1.0, 1.0, 1.0, 21, QuantizationConvention::HOverL).unwrap_err(),
            LatticeError::LatticeTooLarge
        );
        assert_eq!(
            build_lattice(0.0, 1.0, 1.0, 1, QuantizationConvention::HOverL).unwrap_err(),
            LatticeError::NonPositiveInput("box length")
        );
        assert_eq!(
            build_lattice(1.0, 1.0, -5.0, 1, QuantizationConvention::HOverL).unwrap_err(),
            LatticeError::NonPositiveInput("temperature")
        );
        // the degenerate single-mode lattice is allowed
        let single = build_lattice(1.0, 1.0, 1.0, 0, QuantizationConvention::HbarOverL).unwrap();
        assert_eq!(single.mode_count(), 1);
    }

    #[test]
    fn hbar_convention_shrinks_level_spacing() {
        let h = lattice_with_theta(0.5, 1);
        let hbar = build_lattice(
            theta_box(),
            HELIUM4_MASS,
            2.0,
            1,
            QuantizationConvention::HbarOverL,
        )
        .unwrap();
        let ratio = h.energies[1] / hbar.energies[1];
        let four_pi_sq = 4.0 * core::f64::consts::PI * core::f64::consts::PI;
        assert!((ratio / four_pi_sq - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recursion_small_particle_identities() {
        let lat = lattice_with_theta(std::f64::consts::LN_2, 1);
        let z1 = lat.single_particle_sum(1.0);
        let z2 = lat.single_particle_sum(2.0);
        let one = canonical_partition_recursion(&lat, 1, Statistics::Bose);
        assert!((one.partition_z / z1 - 1.0).abs() < 1e-14);
        let bose = canonical_partition_recursion(&lat, 2, Statistics::Bose);
        assert!((bose.partition_z / ((z1 * z1 + z2) / 2.0) - 1.0).abs() < 1e-14);
        let fermi = canonical_partition_recursion(&lat, 2, Statistics::Fermi);
        assert!((fermi.partition_z / ((z1 * z1 - z2) / 2.0) - 1.0).abs() < 1e-14);
        let boltz = canonical_partition_recursion(&lat, 2, Statistics::Boltzmann);
        assert!((boltz.partition_z / (z1 * z1 / 2.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn enumeration_agrees_with_recursion_on_everything() {
        let lat = lattice_with_theta(0.7, 1);
        for statistics in [Statistics::Bose, Statistics::Fermi, Statistics::Boltzmann] {
            for n in [2, 3] {
                let exact = enumerate_exact(&lat, n, statistics).unwrap();
                let rec = canonical_partition_recursion(&lat, n, statistics);
                assert!(
                    (exact.partition_z / rec.partition_z - 1.0).abs() < 1e-13,
                    "{statistics:?} N={n}"
                );
                for j in 1..=n {
                    let a = exact.multiplet_fractions[&j];
                    let b = rec.multiplet_fractions[&j];
                    assert!(
                        (a - b).abs() <= 1e-13 * a.max(1e-30),
                        "{statistics:?} N={n} j={j}: {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn fraction_accounting_sums_to_one() {
        let lat = lattice_with_theta(0.9, 1);
        let r = enumerate_exact(&lat, 4, Statistics::Bose).unwrap();
        // fractions of particles in exactly-j modes: F_j - F_{j+1}
        let mut total = 0.0;
        for j in 1..=4u32 {
            let f = r.multiplet_fractions[&j];
            let next = r.multiplet_fractions.get(&(j + 1)).copied().unwrap_or(0.0);
            total += f - next;
        }
        assert!((total - 1.0).abs() < 1e-12);
        assert!((r.multiplet_fractions[&1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pauli_forbids_double_occupancy() {
        let lat = lattice_with_theta(1.1, 1);
        for n in [2, 3, 4] {
            let r = enumerate_exact(&lat, n, Statistics::Fermi).unwrap();
            for j in 2..=n {
                assert_eq!(r.multiplet_fractions[&j], 0.0);
            }
            let rec = canonical_partition_recursion(&lat, n, Statistics::Fermi);
            for j in 2..=n {
                assert_eq!(rec.multiplet_fractions[&j], 0.0);
            }
        }
    }

    #[test]
    fn hot_bose_pair_fraction_approaches_the_counting_limit() {
        // As β → 0 every configuration is equally likely and the doubly
        // occupied fraction for N = 2 over M modes is exactly 2/(M+1).
        let lat = lattice_with_theta(1e-10, 1);
        let r = enumerate_exact(&lat, 2, Statistics::Bose).unwrap();
        let m = lat.mode_count() as f64;
        assert!((r.multiplet_fractions[&2] - 2.0 / (m + 1.0)).abs() < 1e-8);
    }

    #[test]
    fn boltzmann_enumeration_matches_closed_forms() {
        let lat = lattice_with_theta(0.8, 1);
        let n = 3;
        let r = enumerate_exact(&lat, n, Statistics::Boltzmann).unwrap();
        let z1 = lat.single_particle_sum(1.0);
        assert!((r.partition_z / (z1 * z1 * z1 / 6.0) - 1.0).abs() < 1e-13);
        // independent-draw closed form for the pair fraction
        let expected = expected_pair_fraction(&lat, n);
        assert!((r.multiplet_fractions[&2] - expected).abs() < 1e-13);
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let lat = lattice_with_theta(0.5, 20);
        assert_eq!(
            enumerate_exact(&lat, 3, Statistics::Bose).unwrap_err(),
            LatticeError::EnumerationTooLarge
        );
    }

    #[test]
    fn sampler_forced_coincidences() {
        let single = build_lattice(1.0, 1.0, 1.0, 0, QuantizationConvention::HOverL).unwrap();
        let s = sample_boltzmann_coincidences(&single, 2, 200, 7);
        assert_eq!(s.pair_fraction_mean, 1.0);
        assert_eq!(s.pair_fraction_stderr, 0.0);
        // frozen gas: essentially all weight in the zero mode
        let cold = lattice_with_theta(80.0, 1);
        let c = sample_boltzmann_coincidences(&cold, 3, 500, 11);
        assert_eq!(c.pair_fraction_mean, 1.0);
    }

    #[test]
    fn sampler_is_deterministic_and_splittable() {
        let lat = lattice_with_theta(0.6, 2);
        let a = sample_boltzmann_coincidences(&lat, 4, 400, 123);
        let b = sample_boltzmann_coincidences(&lat, 4, 400, 123);
        assert_eq!(a, b);
        let c = sample_boltzmann_coincidences(&lat, 4, 400, 124);
        assert_ne!(a.pair_fraction_mean, c.pair_fraction_mean);
        // splitting the trial range across workers reproduces every draw
        let whole = sampled_fractions(&lat, 4, 2, 0..400, 123);
        let mut halves = sampled_fractions(&lat, 4, 2, 0..137, 123);
        halves.extend(sampled_fractions(&lat, 4, 2, 137..400, 123));
        assert_eq!(whole, halves);
    }

    #[test]
    fn sampler_tracks_the_closed_form_mean() {
        let lat = lattice_with_theta(0.45, 2);
        let expected = expected_pair_fraction(&lat, 2);
        let s = sample_boltzmann_coincidences(&lat, 2, 40_000, 2024);
        assert!(
            (s.pair_fraction_mean - expected).abs() <= 3.0 * s.pair_fraction_stderr,
            "mean {} expected {} stderr {}",
            s.pair_fraction_mean,
            expected,
            s.pair_fraction_stderr
        );
    }

    #[test]
    fn scaling_report_validates_inputs() {
        let lat = lattice_with_theta(0.5, 1);
        let family = [lat];
        assert!(matches!(
            multiplet_scaling_report(&family, 2, Statistics::Bose, 1, ScalingMethod::Exact),
            Err(LatticeError::InvalidInput(_))
        ));
        assert!(matches!(
            multiplet_scaling_report(
                &family,
                2,
                Statistics::Bose,
                2,
                ScalingMethod::Sampled {
                    trials: 200,
                    seed: 1
                }
            ),
            Err(LatticeError::InvalidInput(_))
        ));
        let ok = multiplet_scaling_report(&family, 2, Statistics::Bose, 2, ScalingMethod::Exact)
            .unwrap();
        assert_eq!(ok.len(), 1);
        assert!(ok[0].fraction > 0.0 && ok[0].stderr.is_none());
    }
}
