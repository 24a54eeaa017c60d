//! Scalar optimisation and root finding.
//!
//! Small, dependency-free routines tuned for the smooth single-minimum
//! objectives in this crate: a coarse log-spaced scan to bracket, golden
//! section to refine, and bisection for sign-change roots. All loops run a
//! fixed, input-independent iteration count so results are deterministic.

use crate::error::{Error, Result};

/// Golden ratio.
const PHI: f64 = 1.618_033_988_749_895;
/// 2 - PHI, the symmetric golden-section fraction.
const RESP: f64 = 2.0 - PHI;

/// Minimise `f` on `[lo, hi]` by golden-section search, refining until the
/// bracket is narrower than `tol` (absolute). Returns `(x_min, f(x_min))`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut x1 = a + RESP * (b - a);
    let mut x2 = b - RESP * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // The bracket shrinks by a fixed factor per step; bound the count so
    // the loop terminates even for very tight tolerances.
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + RESP * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - RESP * (b - a);
            f2 = f(x2);
        }
    }
    let xm = 0.5 * (a + b);
    (xm, f(xm))
}

/// Minimise `f` on `[lo, hi]` (`0 < lo < hi`) by a log-spaced coarse scan
/// of `n_scan` points followed by golden-section refinement of the
/// bracketing interval. Suited to objectives whose minimum may sit many
/// decades from either endpoint.
pub fn log_scan_golden_min<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    n_scan: usize,
    tol: f64,
) -> Result<(f64, f64)> {
    if lo.is_nan() || hi.is_nan() || lo <= 0.0 || hi <= lo {
        return Err(Error::InvalidInput(format!(
            "scan interval must satisfy 0 < lo < hi, got [{lo}, {hi}]"
        )));
    }
    let n = n_scan.max(4);
    let (llo, lhi) = (lo.ln(), hi.ln());
    let grid: Vec<f64> = (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect();
    let mut best = 0;
    let mut best_val = f64::INFINITY;
    for (i, &x) in grid.iter().enumerate() {
        let v = f(x);
        if v < best_val {
            best_val = v;
            best = i;
        }
    }
    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(n - 1)];
    Ok(golden_min(f, a, b, tol))
}

/// Find a root of `f` on `[lo, hi]` by bisection, assuming a sign change.
/// Runs exactly `iterations` halvings (deterministic); 200 reaches f64
/// resolution on any physical interval.
pub fn bisect_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, iterations: usize) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::Numerical(format!(
            "no sign change on [{lo:e}, {hi:e}]: f = {fa:e}, {fb:e}"
        )));
    }
    let mut fa = fa;
    for _ in 0..iterations {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn golden_finds_parabola_minimum() {
        // Positional accuracy of a value-comparison search bottoms out
        // near sqrt(ulp(f)/f''), ~2e-8 for this objective.
        let (x, v) = golden_min(|x| (x - 0.37).powi(2) + 1.5, 0.0, 1.0, 1.0e-10);
        assert_abs_diff_eq!(x, 0.37, epsilon = 1.0e-7);
        assert_abs_diff_eq!(v, 1.5, epsilon = 1.0e-12);
    }

    #[test]
    fn log_scan_handles_minimum_far_from_endpoints() {
        let (x, _) =
            log_scan_golden_min(|x| (x.ln() - (-6.0)).powi(2), 1.0e-9, 1.0, 48, 1.0e-12).unwrap();
        assert_abs_diff_eq!(x, (-6.0_f64).exp(), epsilon = 1.0e-7);
    }

    #[test]
    fn bisect_root_linear() {
        let r = bisect_root(|x| 3.0 * x - 1.2, -10.0, 10.0, 200).unwrap();
        assert_abs_diff_eq!(r, 0.4, epsilon = 1.0e-14);
        assert!(bisect_root(|x| x * x + 1.0, -1.0, 1.0, 50).is_err());
    }
}
