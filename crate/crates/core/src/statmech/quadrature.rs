//! Independent quadrature route for the quantum number equation.
//!
//! The occupancy integral (2/√π) ∫₀^∞ √u / (e^u/z ± 1) du is evaluated after
//! the substitution u = t², which removes the √u endpoint singularity and
//! turns the integrand into a smooth, rapidly decaying function of t. The
//! same kernel with u^{3/2} (order 5/2) backs the exact pressure ratio when
//! the series route is unavailable.

use crate::model::Statistics;

use super::{StatmechError, BOSE_FUGACITY_CAP};

/// Subdivision budget for one integral; generous for these integrands.
const MAX_INTERVALS: usize = 1 << 20;
const MAX_DEPTH: u32 = 60;
/// Past t = 8.5 the integrand is below e^{-72} of its peak.
const UPPER_LIMIT: f64 = 8.5;

struct Budget {
    remaining: usize,
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
    tol_abs: f64,
    depth: u32,
    budget: &mut Budget,
) -> Result<f64, StatmechError> {
    if budget.remaining == 0 || depth > MAX_DEPTH {
        return Err(StatmechError::QuadratureFailure);
    }
    budget.remaining -= 1;
    let (ml, fml, left) = simpson(f, a, fa, m, fm);
    let (mr, fmr, right) = simpson(f, m, fm, b, fb);
    let delta = left + right - whole;
    if libm::fabs(delta) <= 15.0 * tol_abs {
        return Ok(left + right + delta / 15.0);
    }
    let half = 0.5 * tol_abs;
    Ok(
        adapt(f, a, fa, ml, fml, m, fm, left, half, depth + 1, budget)?
            + adapt(f, m, fm, mr, fmr, b, fb, right, half, depth + 1, budget)?,
    )
}

/// Adaptive Simpson integration of `f` over `[a, b]` to a relative tolerance.
pub(crate) fn integrate_adaptive(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<f64, StatmechError> {
    const SEED_PANELS: usize = 8;
    let width = (b - a) / SEED_PANELS as f64;
    let mut rough = 0.0;
    let mut panels = [(0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64); SEED_PANELS];
    for (i, panel) in panels.iter_mut().enumerate() {
        let pa = a + i as f64 * width;
        let pb = if i == SEED_PANELS - 1 { b } else { pa + width };
        let (fa, fb) = (f(pa), f(pb));
        let (m, fm, s) = simpson(f, pa, fa, pb, fb);
        *panel = (pa, fa, m, fm, pb, fb, s);
        rough += s;
    }
    let scale = libm::fabs(rough).max(f64::MIN_POSITIVE);
    let tol_abs = rel_tol * scale / SEED_PANELS as f64;
    let mut budget = Budget {
        remaining: MAX_INTERVALS,
    };
    let mut total = 0.0;
    for (pa, fa, m, fm, pb, fb, s) in panels {
        total += adapt(f, pa, fa, m, fm, pb, fb, s, tol_abs, 0, &mut budget)?;
    }
    Ok(total)
}

/// Normalized occupancy integral of order `s`:
/// (1/Γ(s)) ∫₀^∞ u^{s-1} / (e^u/z ± 1) du, with + for Fermi and - for Bose.
/// Tends to z as z → 0 for every order.
pub(crate) fn quantum_integral(
    order: f64,
    z: f64,
    statistics: Statistics,
    rel_tol: f64,
) -> Result<f64, StatmechError> {
    if order != 1.5 && order != 2.5 {
        return Err(StatmechError::Domain("integral order must be 3/2 or 5/2"));
    }
    let sign = match statistics {
        Statistics::Bose => -1.0,
        Statistics::Fermi => 1.0,
        Statistics::Boltzmann => {
            return Err(StatmechError::Domain(
                "occupancy integral is defined for Bose or Fermi statistics",
            ))
        }
    };
    if !(z >= 0.0) {
        return Err(StatmechError::Domain("fugacity must be non-negative"));
    }
    if statistics == Statistics::Bose && z > BOSE_FUGACITY_CAP {
        return Err(StatmechError::Domain(
            "Bose fugacity above the semi-classical cap",
        ));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let prefactor = 2.0 / libm::tgamma(order);
    let quartic = order == 2.5;
    let integrand = move |t: f64| {
        let t2 = t * t;
        let power = if quartic { t2 * t2 } else { t2 };
        power / (libm::exp(t2) / z + sign)
    };
    let value = integrate_adaptive(&integrand, 0.0, UPPER_LIMIT, rel_tol)?;
    Ok(prefactor * value)
}

/// Occupancy integral of order 3/2 at relative tolerance 1e-10: the
/// quadrature counterpart of [`super::occupancy_ratio_series`].
pub fn occupancy_ratio_quadrature(z: f64, statistics: Statistics) -> Result<f64, StatmechError> {
    quantum_integral(1.5, z, statistics, 1e-10)
}
