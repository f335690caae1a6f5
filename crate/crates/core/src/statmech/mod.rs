//! Quantum-statistics machinery: the number equation in dual (series and
//! quadrature) form, fugacity solving, and pressure-correction ratios.
//!
//! The series route ([`occupancy_ratio_series`]) and the quadrature route
//! ([`occupancy_ratio_quadrature`]) are independent evaluations of the same
//! occupancy function η_sp(z); keeping both is what lets the test suite
//! cross-validate them against each other.

mod polylog;
mod quadrature;

pub use polylog::{polylog, polylog_alternating, MAX_TERMS};
pub use quadrature::occupancy_ratio_quadrature;

use core::fmt;

use crate::model::Statistics;
use crate::roots::{solve_bracketed, BracketError};

/// Hard cap on the Bose fugacity; the near-condensation regime above it is
/// out of scope for the semi-classical toolkit.
pub const BOSE_FUGACITY_CAP: f64 = 0.99;

/// 2^{5/2}, the denominator of the first-order pressure correction.
pub const TWO_POW_5_2: f64 = 4.0 * core::f64::consts::SQRT_2;

/// 2^{3/2}, the mass ratio factor Z₀(2m)/Z₀(m).
pub const TWO_POW_3_2: f64 = 2.0 * core::f64::consts::SQRT_2;

/// Default relative tolerance for series evaluations.
pub const SERIES_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatmechError {
    /// Input outside the supported domain.
    Domain(&'static str),
    /// An iterative evaluation hit its cap before reaching tolerance.
    NoConvergence,
    /// Adaptive quadrature exhausted its subdivision budget.
    QuadratureFailure,
    /// Bose occupancy demand exceeds what any fugacity below the cap gives.
    OutOfSemiclassicalRange,
}

impl fmt::Display for StatmechError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain(what) => write!(f, "{what}"),
            Self::NoConvergence => write!(f, "series or solver did not converge"),
            Self::QuadratureFailure => write!(f, "quadrature did not reach tolerance"),
            Self::OutOfSemiclassicalRange => {
                write!(f, "occupancy outside the semi-classical Bose range")
            }
        }
    }
}

impl core::error::Error for StatmechError {}

impl From<BracketError<StatmechError>> for StatmechError {
    fn from(err: BracketError<StatmechError>) -> Self {
        match err {
            BracketError::Eval(e) => e,
            BracketError::NoSignChange | BracketError::NoConvergence => Self::NoConvergence,
        }
    }
}

/// Fugacity z = e^{βμ}. For Bose statistics the constructor enforces the
/// semi-classical cap z ≤ 0.99; Fermi admits any non-negative value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fugacity(f64);

impl Fugacity {
    pub fn new(z: f64, statistics: Statistics) -> Result<Self, StatmechError> {
        if !(z >= 0.0) || !z.is_finite() {
            return Err(StatmechError::Domain("fugacity must be non-negative"));
        }
        if statistics == Statistics::Bose && z > BOSE_FUGACITY_CAP {
            return Err(StatmechError::Domain(
                "Bose fugacity above the semi-classical cap",
            ));
        }
        Ok(Self(z))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Occupancy η_sp(z) through the series route: Li_{3/2}(z) for Bose,
/// -Li_{3/2}(-z) for Fermi.
pub fn occupancy_ratio_series(
    z: f64,
    statistics: Statistics,
    rel_tol: f64,
) -> Result<f64, StatmechError> {
    match statistics {
        Statistics::Bose => {
            if z > BOSE_FUGACITY_CAP {
                return Err(StatmechError::Domain(
                    "Bose fugacity above the semi-classical cap",
                ));
            }
            polylog(1.5, z, rel_tol)
        }
        Statistics::Fermi => polylog_alternating(1.5, z, rel_tol),
        Statistics::Boltzmann => Err(StatmechError::Domain(
            "occupancy series is defined for Bose or Fermi statistics",
        )),
    }
}

/// Occupancy branch used inside the fugacity solver. Below z = 1 this is the
/// series; the Fermi branch continues past z = 1 through the integral
/// representation (the alternating series stops converging there).
fn occupancy_branch(z: f64, statistics: Statistics, rel_tol: f64) -> Result<f64, StatmechError> {
    if statistics == Statistics::Fermi && z > 1.0 {
        quadrature::quantum_integral(1.5, z, statistics, rel_tol.max(1e-13))
    } else {
        occupancy_ratio_series(z, statistics, rel_tol.max(1e-15))
    }
}

fn occupancy_derivative(z: f64, statistics: Statistics) -> Option<f64> {
    if z <= 0.0 || z > 1.0 {
        return None;
    }
    let half_order = match statistics {
        Statistics::Bose => polylog(0.5, z, 1e-12),
        Statistics::Fermi => polylog_alternating(0.5, z, 1e-12),
        Statistics::Boltzmann => return None,
    };
    half_order.ok().map(|v| v / z)
}

/// Solves the statistics-appropriate occupancy branch for the fugacity:
/// returns z with |η_sp(z) - eta_sp| ≤ tol.
///
/// Boltzmann statistics is the identity z = η_sp. The Bose solve is
/// bracketed on [0, 0.99]; demands at or above Li_{3/2}(0.99) are rejected
/// as [`StatmechError::OutOfSemiclassicalRange`]. The Fermi bracket starts
/// at [0, 1] and doubles its upper end as needed; past z = 1 the branch is
/// integral-backed and the achievable residual is limited to ~2e-12.
pub fn solve_fugacity(
    eta_sp: f64,
    statistics: Statistics,
    tol: f64,
) -> Result<Fugacity, StatmechError> {
    if !(eta_sp >= 0.0) || !eta_sp.is_finite() {
        return Err(StatmechError::Domain("eta_sp must be non-negative"));
    }
    if !(tol >= 1e-14) {
        return Err(StatmechError::Domain("solver tolerance must be >= 1e-14"));
    }
    if eta_sp == 0.0 {
        return Ok(Fugacity(0.0));
    }
    if statistics == Statistics::Boltzmann {
        return Ok(Fugacity(eta_sp));
    }

    let eval_tol = 1e-15;
    // Residual target scaled to the demand so small occupancies keep full
    // relative accuracy; never looser than the caller's absolute tolerance.
    let tol_scaled = tol * eta_sp.min(1.0);
    let (lo, hi, tol_eff) = match statistics {
        Statistics::Bose => {
            let cap_occupancy = polylog(1.5, BOSE_FUGACITY_CAP, eval_tol)?;
            if eta_sp >= cap_occupancy {
                return Err(StatmechError::OutOfSemiclassicalRange);
            }
            (0.0, BOSE_FUGACITY_CAP, tol_scaled)
        }
        Statistics::Fermi => {
            let at_one = occupancy_branch(1.0, statistics, eval_tol)?;
            if eta_sp <= at_one {
                (0.0, 1.0, tol_scaled)
            } else {
                let mut lo = 1.0;
                let mut hi = 2.0;
                while occupancy_branch(hi, statistics, 1e-10)? < eta_sp {
                    lo = hi;
                    hi *= 2.0;
                    if hi > 1024.0 {
                        return Err(StatmechError::NoConvergence);
                    }
                }
                // Past z = 1 the branch is integral-backed, which limits the
                // achievable residual.
                (lo, hi, tol.max(2e-12))
            }
        }
        Statistics::Boltzmann => unreachable!(),
    };

    let mut f = |z: f64| occupancy_branch(z, statistics, eval_tol).map(|v| v - eta_sp);
    let mut df = |z: f64| occupancy_derivative(z, statistics);
    let root = solve_bracketed(&mut f, Some(&mut df), lo, hi, tol_eff, 200)?;
    Ok(Fugacity(root))
}

/// Exact pressure ratio PV/(N k_B T) as the order-5/2 over order-3/2 branch
/// ratio; defined as 1 at z = 0 and identically 1 for Boltzmann statistics.
pub fn pressure_ratio_exact(z: f64, statistics: Statistics) -> Result<f64, StatmechError> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(StatmechError::Domain("fugacity must be non-negative"));
    }
    if z == 0.0 || statistics == Statistics::Boltzmann {
        return Ok(1.0);
    }
    let (num, den) = if statistics == Statistics::Fermi && z > 1.0 {
        (
            quadrature::quantum_integral(2.5, z, statistics, 1e-12)?,
            quadrature::quantum_integral(1.5, z, statistics, 1e-12)?,
        )
    } else {
        match statistics {
            Statistics::Bose => {
                if z > BOSE_FUGACITY_CAP {
                    return Err(StatmechError::Domain(
                        "Bose fugacity above the semi-classical cap",
                    ));
                }
                (polylog(2.5, z, SERIES_REL_TOL)?, polylog(1.5, z, SERIES_REL_TOL)?)
            }
            Statistics::Fermi => (
                polylog_alternating(2.5, z, SERIES_REL_TOL)?,
                polylog_alternating(1.5, z, SERIES_REL_TOL)?,
            ),
            Statistics::Boltzmann => unreachable!(),
        }
    };
    Ok(num / den)
}

/// First-order pressure ratio 1 ± η / (2^{5/2} g): + Fermi, - Bose,
/// exactly 1 for Boltzmann.
pub fn pressure_first_order(eta: f64, spin_degeneracy: u32, statistics: Statistics) -> f64 {
    assert!(eta >= 0.0, "eta must be non-negative");
    assert!(spin_degeneracy >= 1, "spin degeneracy must be >= 1");
    let correction = eta / (TWO_POW_5_2 * spin_degeneracy as f64);
    match statistics {
        Statistics::Fermi => 1.0 + correction,
        Statistics::Bose => 1.0 - correction,
        Statistics::Boltzmann => 1.0,
    }
}

/// A solved thermodynamic point: fugacity plus both pressure ratios at a
/// given per-spin-state occupancy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    pub eta_sp: f64,
    pub fugacity: Fugacity,
    pub pressure_ratio_exact: f64,
    pub pressure_ratio_first_order: f64,
}

pub fn thermo_point(eta_sp: f64, statistics: Statistics) -> Result<ThermoPoint, StatmechError> {
    let fugacity = solve_fugacity(eta_sp, statistics, 1e-14)?;
    Ok(ThermoPoint {
        eta_sp,
        fugacity,
        pressure_ratio_exact: pressure_ratio_exact(fugacity.value(), statistics)?,
        pressure_ratio_first_order: pressure_first_order(eta_sp, 1, statistics),
    })
}
