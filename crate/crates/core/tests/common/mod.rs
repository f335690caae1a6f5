//! Test-side oracles, deliberately independent of the library's own
//! evaluation paths: plain summation with no tail-bound logic, plain
//! midpoint bisection, fixed-grid Simpson, and brute-force enumeration.

#![allow(dead_code)]

/// Σ_{k=1}^{terms} z^k / k^s by plain accumulation in descending magnitude.
pub fn direct_series(order: f64, z: f64, terms: usize) -> f64 {
    let mut sum = 0.0;
    for k in (1..=terms).rev() {
        sum += z.powi(k as i32) / (k as f64).powf(order);
    }
    sum
}

/// Σ_{k=1}^{terms} (-1)^{k+1} z^k / k^s, same style.
pub fn alternating_series(order: f64, z: f64, terms: usize) -> f64 {
    let mut sum = 0.0;
    for k in (1..=terms).rev() {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * z.powi(k as i32) / (k as f64).powf(order);
    }
    sum
}

/// Plain midpoint bisection; assumes f(lo) and f(hi) straddle zero.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iterations: u32) -> f64 {
    let flo = f(lo);
    assert!(
        flo * f(hi) <= 0.0,
        "oracle bisection needs a sign change on the bracket"
    );
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if f(mid) * flo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Fixed-grid composite Simpson rule with `panels` subintervals (even).
pub fn composite_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels >= 2 && panels % 2 == 0);
    let h = (b - a) / panels as f64;
    let mut sum = f(a) + f(b);
    for i in 1..panels {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += weight * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Brute-force exchange-symmetry enumeration of two-spin product states:
/// counts (symmetric, antisymmetric) combinations of g projections.
pub fn pair_exchange_enumeration(spin_degeneracy: u32) -> (u64, u64) {
    let g = spin_degeneracy as u64;
    let mut symmetric = 0u64;
    let mut antisymmetric = 0u64;
    for a in 0..g {
        for b in 0..g {
            if a <= b {
                // |ab> + |ba> (including a == b)
                symmetric += 1;
            }
            if a < b {
                // |ab> - |ba|
                antisymmetric += 1;
            }
        }
    }
    (symmetric, antisymmetric)
}

/// Least-squares slope of ln y vs ln x, recomputed here so slope checks do
/// not lean on the library's fitting helper.
pub fn loglog_slope_oracle(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}
