use statrs::function::gamma::ln_gamma;

use super::pfq::{generalized_pfq, terminating_degree};
use super::quad::{ln_beta_kernel_integral, xln1m};
use super::{nonpositive_integer, EvalPolicy};
use crate::error::{Error, Result};

/// Gauss hypergeometric function by its power series (`|x| < 1`, or any `x`
/// when the series terminates).
pub fn gauss_2f1_series(a: f64, b: f64, c: f64, x: f64, policy: &EvalPolicy) -> Result<f64> {
    generalized_pfq(&[a, b], &[c], x, policy)
}

/// `ln ₂F₁(a, b; c; x)` from Euler's integral
/// `Γ(c)/(Γ(b)Γ(c-b)) ∫₀¹ t^(b-1) (1-t)^(c-b-1) (1-xt)^(-a) dt`.
///
/// Needs `c > b > 0` (or the same with `a` and `b` swapped) and `x < 1`;
/// the integral is positive there.
pub fn ln_gauss_2f1_euler(a: f64, b: f64, c: f64, x: f64, policy: &EvalPolicy) -> Result<f64> {
    let (a, b) = if b > 0.0 && c - b > 0.0 {
        (a, b)
    } else if a > 0.0 && c - a > 0.0 {
        (b, a)
    } else {
        return Err(Error::domain(format!(
            "Euler integral for 2F1 needs c > b > 0 (a={a}, b={b}, c={c})"
        )));
    };
    if !(x < 1.0) {
        return Err(Error::domain(format!("Euler integral for 2F1 needs x < 1 (x={x})")));
    }
    let ln_norm = ln_gamma(c) - ln_gamma(b) - ln_gamma(c - b);
    let ln_i = ln_beta_kernel_integral(
        b,
        c - b,
        |t| xln1m(-a, x * t),
        policy.quad_abs_tol,
        policy.rel_tol,
    )?;
    Ok(ln_norm + ln_i)
}

/// Euler-integral evaluation of `₂F₁`; see [`ln_gauss_2f1_euler`].
pub fn gauss_2f1_euler(a: f64, b: f64, c: f64, x: f64, policy: &EvalPolicy) -> Result<f64> {
    ln_gauss_2f1_euler(a, b, c, x, policy).map(f64::exp)
}

/// Gauss hypergeometric function `₂F₁(a, b; c; x)` for real `x < 1`.
///
/// Strategy: terminating sum; series for `|x| ≤ ½`; Euler integral when
/// admissible; series for `|x| < 1`; Pfaff transformation for `x ≤ -1`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64, policy: &EvalPolicy) -> Result<f64> {
    if ![a, b, c, x].iter().all(|v| v.is_finite()) {
        return Err(Error::domain("2F1 arguments must be finite"));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if terminating_degree(&[a, b]).is_some() {
        return gauss_2f1_series(a, b, c, x, policy);
    }
    if nonpositive_integer(c).is_some() {
        return Err(Error::domain(format!("2F1 undefined for c = {c}")));
    }
    if x.abs() <= 0.5 {
        return gauss_2f1_series(a, b, c, x, policy);
    }
    let euler_ok = (b > 0.0 && c - b > 0.0) || (a > 0.0 && c - a > 0.0);
    if x < 1.0 && euler_ok {
        return gauss_2f1_euler(a, b, c, x, policy);
    }
    if x.abs() < 1.0 {
        return gauss_2f1_series(a, b, c, x, policy);
    }
    if x <= -1.0 {
        // Pfaff: (1-x)^(-a) ₂F₁(a, c-b; c; x/(x-1)), argument in [½, 1).
        let z = x / (x - 1.0);
        let f = gauss_2f1(a, c - b, c, z, policy)?;
        return Ok((1.0 - x).powf(-a) * f);
    }
    Err(Error::domain(format!("2F1 requires x < 1 (x = {x})")))
}
