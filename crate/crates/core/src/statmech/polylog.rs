//! Polylogarithm kernels for the quantum number equation.
//!
//! [`polylog`] sums Li_s(z) = Σ_{k≥1} z^k / k^s directly, with a geometric
//! tail bound for z < 1 and an Euler–Maclaurin tail for z = 1.
//! [`polylog_alternating`] evaluates -Li_s(-z) = Σ_{k≥1} (-1)^{k+1} z^k / k^s
//! through the square-argument split
//!
//!   -Li_s(-z) = Li_s(z) - 2^{1-s} Li_s(z²),
//!
//! which keeps every series positive-term and stays valid at z = 1.

use super::StatmechError;

/// Hard cap on series terms before giving up.
pub const MAX_TERMS: usize = 10_000_000;

/// Orders used by this crate. The number equation needs 3/2, the pressure
/// ratio 5/2, and Newton derivatives 1/2.
const SUPPORTED_ORDERS: [f64; 3] = [0.5, 1.5, 2.5];

fn check_order(order: f64) -> Result<(), StatmechError> {
    if SUPPORTED_ORDERS.contains(&order) {
        Ok(())
    } else {
        Err(StatmechError::Domain("polylog order must be 1/2, 3/2 or 5/2"))
    }
}

/// Li_s(z) for z in [0, 1] (z in [0, 1) when s = 1/2, where the series
/// diverges at the endpoint).
///
/// Truncates once the geometric tail bound z^{K+1} / ((K+1)^s (1-z)) drops
/// below `rel_tol` times the partial sum.
pub fn polylog(order: f64, z: f64, rel_tol: f64) -> Result<f64, StatmechError> {
    check_order(order)?;
    if !(rel_tol >= 1e-15) {
        return Err(StatmechError::Domain("tolerance must be >= 1e-15"));
    }
    if !(0.0..=1.0).contains(&z) {
        return Err(StatmechError::Domain("polylog argument must lie in [0, 1]"));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == 1.0 {
        if order <= 1.0 {
            return Err(StatmechError::Domain("polylog diverges at z = 1 for s <= 1"));
        }
        return Ok(zeta_euler_maclaurin(order, rel_tol));
    }

    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 1..=MAX_TERMS {
        power *= z;
        sum += power / libm::pow(k as f64, order);
        let tail_bound = power * z / (libm::pow((k + 1) as f64, order) * (1.0 - z));
        if tail_bound <= rel_tol * sum {
            return Ok(sum);
        }
    }
    Err(StatmechError::NoConvergence)
}

/// ζ(s) = Li_s(1) for s > 1 by direct summation plus an Euler–Maclaurin
/// tail estimate; the first omitted correction bounds the error.
fn zeta_euler_maclaurin(order: f64, rel_tol: f64) -> f64 {
    let s = order;
    let mut cutoff = 64usize;
    loop {
        let mut sum = 0.0;
        for k in 1..=cutoff {
            sum += libm::pow(k as f64, -s);
        }
        let a = (cutoff + 1) as f64;
        let tail = libm::pow(a, 1.0 - s) / (s - 1.0)
            + 0.5 * libm::pow(a, -s)
            + s / 12.0 * libm::pow(a, -s - 1.0)
            - s * (s + 1.0) * (s + 2.0) / 720.0 * libm::pow(a, -s - 3.0);
        let error_estimate =
            s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0 * libm::pow(a, -s - 5.0);
        let total = sum + tail;
        if error_estimate <= rel_tol * total || cutoff >= 1 << 20 {
            return total;
        }
        cutoff *= 2;
    }
}

/// -Li_s(-z) = Σ_{k≥1} (-1)^{k+1} z^k / k^s for z in [0, 1].
pub fn polylog_alternating(order: f64, z: f64, rel_tol: f64) -> Result<f64, StatmechError> {
    check_order(order)?;
    if !(0.0..=1.0).contains(&z) {
        return Err(StatmechError::Domain(
            "alternating polylog argument must lie in [0, 1]",
        ));
    }
    let inner_tol = (rel_tol / 4.0).max(1e-15);
    let direct = polylog(order, z, inner_tol)?;
    let squared = polylog(order, z * z, inner_tol)?;
    Ok(direct - libm::exp2(1.0 - order) * squared)
}
