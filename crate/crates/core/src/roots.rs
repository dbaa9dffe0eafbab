//! Root finding for increasing functions: bracket expansion followed by
//! Newton steps that fall back to bisection whenever they leave the bracket.

use crate::error::Result;

const MAX_ITER: usize = 300;

/// Solves `f(x) = target` for nondecreasing `f` on `[lo, ∞)` with
/// `f(lo) <= target`. `df` is the derivative used for Newton steps.
///
/// Stops when `|f(x) - target| <= f_tol * max(1, |target|)` or the bracket
/// has collapsed to adjacent floats.
pub fn solve_increasing<F, D>(f: F, df: D, target: f64, lo: f64, guess: f64, f_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
    D: Fn(f64) -> f64,
{
    let scale = f_tol * target.abs().max(1.0);
    let mut a = lo;
    let mut step = (guess - lo).max(1e-3);
    let mut b = lo + step;
    while f(b)? < target {
        a = b;
        step *= 2.0;
        b = lo + step;
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..MAX_ITER {
        let fx = f(x)? - target;
        if fx.abs() <= scale {
            return Ok(x);
        }
        if fx < 0.0 {
            a = x;
        } else {
            b = x;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Ok(x);
        }
        let d = df(x);
        let newton = x - fx / d;
        x = if d > 0.0 && newton > a && newton < b { newton } else { mid };
    }
    Ok(x)
}
