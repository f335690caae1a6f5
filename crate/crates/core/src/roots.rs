//! Bracketed scalar root finding: Newton steps safeguarded by bisection.
//!
//! The bracket never widens and every Newton step is accepted only if it
//! stays strictly inside the current bracket, so convergence is guaranteed
//! whenever the function changes sign on the initial interval.

use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketError<E> {
    /// The function has the same sign at both bracket ends.
    NoSignChange,
    /// The residual tolerance was not reached within the iteration cap.
    NoConvergence,
    /// A function evaluation failed.
    Eval(E),
}

impl<E: fmt::Display> fmt::Display for BracketError<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoSignChange => write!(f, "no sign change over the bracket"),
            Self::NoConvergence => write!(f, "root solve did not converge"),
            Self::Eval(e) => write!(f, "root solve evaluation failed: {e}"),
        }
    }
}

/// Finds `x` in `[lo, hi]` with `|f(x)| <= tol_residual`.
///
/// `derivative` may return `None` at points where it is unavailable; the
/// solver falls back to bisection for that step.
pub fn solve_bracketed<E>(
    f: &mut dyn FnMut(f64) -> Result<f64, E>,
    mut derivative: Option<&mut dyn FnMut(f64) -> Option<f64>>,
    lo: f64,
    hi: f64,
    tol_residual: f64,
    max_iter: usize,
) -> Result<f64, BracketError<E>> {
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a).map_err(BracketError::Eval)?;
    if libm::fabs(fa) <= tol_residual {
        return Ok(a);
    }
    let mut fb = f(b).map_err(BracketError::Eval)?;
    if libm::fabs(fb) <= tol_residual {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(BracketError::NoSignChange);
    }

    let mut x = 0.5 * (a + b);
    for _ in 0..max_iter {
        let fx = f(x).map_err(BracketError::Eval)?;
        if libm::fabs(fx) <= tol_residual {
            return Ok(x);
        }
        if fx * fa > 0.0 {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }

        let newton = derivative
            .as_mut()
            .and_then(|d| d(x))
            .filter(|&dfx| dfx != 0.0 && dfx.is_finite())
            .map(|dfx| x - fx / dfx)
            .filter(|&xn| xn > a.min(b) && xn < a.max(b));
        let next = newton.unwrap_or_else(|| 0.5 * (a + b));

        // When the bracket collapses to rounding width, the safest available
        // answer is the endpoint with the smaller residual.
        if libm::fabs(b - a) <= f64::EPSILON * (libm::fabs(a) + libm::fabs(b) + f64::MIN_POSITIVE) {
            let best = if libm::fabs(fa) <= libm::fabs(fb) { a } else { b };
            let fbest = if libm::fabs(fa) <= libm::fabs(fb) { fa } else { fb };
            return if libm::fabs(fbest) <= tol_residual {
                Ok(best)
            } else {
                Err(BracketError::NoConvergence)
            };
        }
        x = next;
    }
    Err(BracketError::NoConvergence)
}
