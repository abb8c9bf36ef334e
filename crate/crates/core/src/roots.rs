//! Root finding for increasing functions on a bracket.

use crate::error::{Error, Result};

/// Safeguarded Newton iteration for an increasing `f` with `f(lo) ≤ 0 ≤ f(hi)`.
///
/// `f` returns the value and the derivative. Newton steps leaving the current
/// bracket (or shrinking it too slowly) are replaced by bisection. Stops when
/// `|f| ≤ f_tol` or the bracket width falls below `x_tol`.
pub fn newton_bisect<F>(f: F, lo: f64, hi: f64, f_tol: f64, x_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    newton_bisect_from(f, lo, hi, 0.5 * (lo + hi), f_tol, x_tol)
}

/// [`newton_bisect`] started from `x0` (clamped into the bracket).
pub fn newton_bisect_from<F>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    x0: f64,
    f_tol: f64,
    x_tol: f64,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    if !(lo <= hi) {
        return Err(Error::Root(format!("empty bracket [{lo}, {hi}]")));
    }
    let mut x = x0.clamp(lo, hi);
    let mut width_before = hi - lo;
    for iter in 0..200 {
        let (v, d) = f(x)?;
        if v.abs() <= f_tol {
            return Ok(x);
        }
        if v < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let width = hi - lo;
        if width <= x_tol || width <= 4.0 * f64::EPSILON * x.abs() {
            return Ok(x);
        }
        let newton = x - v / d;
        // every other step, insist the bracket has at least halved
        let stalled = iter % 2 == 1 && width > 0.5 * width_before;
        if iter % 2 == 1 {
            width_before = width;
        }
        x = if d > 0.0 && newton > lo && newton < hi && !stalled {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::Root(format!("no convergence in [{lo}, {hi}]")))
}

/// Plain bisection for an increasing `f`, to bracket width `x_tol`.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, x_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= x_tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Root("bisection iteration limit".into()))
}

/// Grow `hi` geometrically until `f(hi) ≥ 0`.
pub fn expand_upper<F>(mut f: F, lo: f64, start: f64, limit: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut hi = start.max(lo + f64::MIN_POSITIVE);
    loop {
        if f(hi)? >= 0.0 {
            return Ok(hi);
        }
        if hi > limit {
            return Err(Error::Root(format!("no sign change below {limit}")));
        }
        hi = 2.0 * hi + 1.0;
    }
}
