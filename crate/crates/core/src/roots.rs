//! Bracketed scalar root finding shared by the likelihood solvers.

use crate::error::{Error, Result};

/// Expands `[lo, hi]` geometrically (positive arguments) until `f` changes
/// sign, starting from a guess `x0 > 0`.
pub(crate) fn bracket_positive<F: FnMut(f64) -> f64>(mut f: F, x0: f64) -> Result<(f64, f64)> {
    let f0 = f(x0);
    if !f0.is_finite() {
        return Err(Error::domain(format!("score is not finite at {x0}")));
    }
    let mut lo = x0;
    let mut hi = x0;
    for _ in 0..200 {
        lo *= 0.5;
        hi *= 2.0;
        let (flo, fhi) = (f(lo), f(hi));
        if flo.is_finite() && flo.signum() != f0.signum() {
            return Ok((lo, lo * 2.0));
        }
        if fhi.is_finite() && fhi.signum() != f0.signum() {
            return Ok((hi * 0.5, hi));
        }
    }
    Err(Error::no_convergence("no sign change found while bracketing a root", 200))
}

/// Illinois regula falsi with bisection safeguards on a sign-changing
/// bracket. Returns once `|f| ≤ ftol` or the bracket collapses.
pub(crate) fn solve<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    ftol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::domain("root bracket does not change sign"));
    }
    let mut side = 0i8;
    for _ in 0..max_iter {
        let mut c = (a * fb - b * fa) / (fb - fa);
        // Fall back to bisection when the secant step leaves the middle 98%.
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if !(c > lo + 0.01 * (hi - lo) && c < hi - 0.01 * (hi - lo)) {
            c = 0.5 * (a + b);
        }
        let fc = f(c);
        if fc.abs() <= ftol || (hi - lo) <= 4.0 * f64::EPSILON * c.abs() {
            return Ok(c);
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    Err(Error::no_convergence("root finder", max_iter))
}
