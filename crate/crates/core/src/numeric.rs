//! Small shared numeric utilities: compensated summation, log-log slope
//! fitting, and grid construction.

use alloc::vec::Vec;

/// Neumaier-compensated accumulator.
///
/// Partial results merge by summation and the merge is order-independent to
/// within ~1e-15 relative, which is what lets enumeration and sampling work
/// be split across workers without changing reported values.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if libm::fabs(self.sum) >= libm::fabs(value) {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: NeumaierSum) {
        self.add(other.sum);
        self.compensation += other.compensation;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Least-squares slope of `y` against `x`. Panics if fewer than two points.
pub fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    assert!(x.len() == y.len() && x.len() >= 2, "need >= 2 paired points");
    let n = x.len() as f64;
    let xm = x.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        num += (xi - xm) * (yi - ym);
        den += (xi - xm) * (xi - xm);
    }
    num / den
}

/// Least-squares slope of `ln y` against `ln x` for strictly positive pairs.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|&(x, _)| libm::log(x)).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, y)| libm::log(y)).collect();
    least_squares_slope(&xs, &ys)
}

/// `n` linearly spaced values from `a` to `b` inclusive. `n == 1` yields `[a]`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![a],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    b
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// `n` log-spaced values from `a` to `b` inclusive; endpoints exact.
pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(a > 0.0 && b > 0.0, "logspace endpoints must be positive");
    let (la, lb) = (libm::log(a), libm::log(b));
    match n {
        0 => Vec::new(),
        1 => alloc::vec![a],
        _ => (0..n)
            .map(|i| {
                if i == 0 {
                    a
                } else if i == n - 1 {
                    b
                } else {
                    libm::exp(la + (lb - la) * i as f64 / (n - 1) as f64)
                }
            })
            .collect(),
    }
}

/// Integer power by binary exponentiation.
pub fn int_pow(base: f64, exponent: u32) -> f64 {
    let mut result = 1.0;
    let mut b = base;
    let mut e = exponent;
    while e > 0 {
        if e & 1 == 1 {
            result *= b;
        }
        b *= b;
        e >>= 1;
    }
    result
}
