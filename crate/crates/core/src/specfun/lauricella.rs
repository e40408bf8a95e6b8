use statrs::function::gamma::ln_gamma;

use super::pfq::generalized_pfq;
use super::quad::{ln_beta_kernel_integral, xln1m};
use super::{nonpositive_integer, series_done, EvalPolicy, KahanSum};
use crate::error::{Error, Result};

fn check(a: f64, b: &[f64], c: f64, x: &[f64]) -> Result<()> {
    if b.len() != x.len() {
        return Err(Error::domain(format!(
            "F_D needs as many b parameters as arguments ({} vs {})",
            b.len(),
            x.len()
        )));
    }
    if b.is_empty() {
        return Err(Error::domain("F_D needs at least one variable"));
    }
    if !(a.is_finite() && c.is_finite() && b.iter().chain(x).all(|v| v.is_finite())) {
        return Err(Error::domain("F_D arguments must be finite"));
    }
    Ok(())
}

/// Finite multiple sum of `F_D`, valid for any arguments when every `bᵢ`
/// is a nonpositive integer.
pub fn lauricella_fd_finite(a: f64, b: &[f64], c: f64, x: &[f64]) -> Result<f64> {
    check(a, b, c, x)?;
    let bounds: Vec<usize> = b
        .iter()
        .map(|&bi| {
            nonpositive_integer(bi).ok_or_else(|| {
                Error::domain("finite F_D sum needs every b to be a nonpositive integer")
            })
        })
        .collect::<Result<_>>()?;
    let total: usize = bounds.iter().sum();
    // (a)_m / (c)_m for m = 0..=total
    let mut ac = vec![1.0; total + 1];
    for m in 0..total {
        let den = c + m as f64;
        if den == 0.0 {
            return Err(Error::domain(format!("F_D undefined for c = {c}")));
        }
        ac[m + 1] = ac[m] * (a + m as f64) / den;
    }
    // (bᵢ)_r xᵢ^r / r!
    let factors: Vec<Vec<f64>> = bounds
        .iter()
        .zip(b.iter().zip(x))
        .map(|(&n, (&bi, &xi))| {
            let mut f = vec![1.0; n + 1];
            for r in 0..n {
                f[r + 1] = f[r] * (bi + r as f64) * xi / (r as f64 + 1.0);
            }
            f
        })
        .collect();
    let mut idx = vec![0usize; b.len()];
    let mut s = KahanSum::default();
    loop {
        let m: usize = idx.iter().sum();
        let prod: f64 = idx.iter().zip(&factors).map(|(&r, f)| f[r]).product();
        s.add(ac[m] * prod);
        // odometer increment
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(s.value());
            }
            if idx[j] < bounds[j] {
                idx[j] += 1;
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Euler-integral evaluation of `F_D` (`c > a > 0`, every `xᵢ < 1`).
pub fn lauricella_fd_euler(a: f64, b: &[f64], c: f64, x: &[f64], policy: &EvalPolicy) -> Result<f64> {
    check(a, b, c, x)?;
    if !(a > 0.0 && c - a > 0.0) {
        return Err(Error::domain(format!(
            "Euler integral for F_D needs c > a > 0 (a={a}, c={c})"
        )));
    }
    if x.iter().any(|&xi| !(xi < 1.0)) {
        return Err(Error::domain("Euler integral for F_D needs every x < 1"));
    }
    let ln_norm = ln_gamma(c) - ln_gamma(a) - ln_gamma(c - a);
    let ln_i = ln_beta_kernel_integral(
        a,
        c - a,
        |t| b.iter().zip(x).map(|(&bi, &xi)| xln1m(-bi, xi * t)).sum(),
        policy.quad_abs_tol,
        policy.rel_tol,
    )?;
    Ok((ln_norm + ln_i).exp())
}

/// Nested power series: peel off the first variable and recurse.
fn fd_series(a: f64, b: &[f64], c: f64, x: &[f64], policy: &EvalPolicy) -> Result<f64> {
    if b.len() == 1 {
        return generalized_pfq(&[a, b[0]], &[c], x[0], policy);
    }
    let mut s = KahanSum::default();
    let mut coef = 1.0;
    for k in 0..policy.max_terms {
        let kf = k as f64;
        let row = coef * fd_series(a + kf, &b[1..], c + kf, &x[1..], policy)?;
        s.add(row);
        let ratio = (a + kf) * (b[0] + kf) / ((c + kf) * (kf + 1.0)) * x[0];
        coef *= ratio;
        if coef == 0.0 {
            return Ok(s.value());
        }
        let settled = [a, b[0], c].iter().all(|&v| kf + 1.0 > -v);
        if settled && series_done(row, ratio, s.value(), policy.rel_tol) {
            return Ok(s.value());
        }
    }
    Err(Error::no_convergence("F_D series", policy.max_terms))
}

/// Lauricella function `F_D⁽ⁿ⁾(a; b₁…bₙ; c; x₁…xₙ)`.
///
/// Strategy: finite sum when every `bᵢ` terminates; Euler integral when
/// `c > a > 0` and all `xᵢ < 1`; nested series when all `|xᵢ| < 1`.
pub fn lauricella_fd(a: f64, b: &[f64], c: f64, x: &[f64], policy: &EvalPolicy) -> Result<f64> {
    check(a, b, c, x)?;
    if x.iter().all(|&xi| xi == 0.0) {
        return Ok(1.0);
    }
    if b.iter().all(|&bi| nonpositive_integer(bi).is_some()) {
        return lauricella_fd_finite(a, b, c, x);
    }
    if nonpositive_integer(c).is_some() {
        return Err(Error::domain(format!("F_D undefined for c = {c}")));
    }
    if a > 0.0 && c - a > 0.0 && x.iter().all(|&xi| xi < 1.0) {
        return lauricella_fd_euler(a, b, c, x, policy);
    }
    if x.iter().all(|&xi| xi.abs() < 1.0) {
        return fd_series(a, b, c, x, policy);
    }
    Err(Error::domain(
        "F_D: no evaluation strategy for these parameters",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cases() {
        let p = EvalPolicy::default();
        assert_eq!(lauricella_fd(1.0, &[0.5, 2.0], 3.0, &[0.0, 0.0], &p).unwrap(), 1.0);
        // All b zero.
        assert_eq!(lauricella_fd(1.0, &[0.0, 0.0, 0.0], 3.0, &[5.0, 0.1, -2.0], &p).unwrap(), 1.0);
        assert!(lauricella_fd(1.0, &[1.0], 2.0, &[0.5, 0.5], &p).is_err());
    }

    #[test]
    fn a_equals_c_is_product() {
        let p = EvalPolicy::default();
        let v = lauricella_fd(2.0, &[0.5, 1.5, -0.5], 2.0, &[0.3, -0.4, 0.6], &p).unwrap();
        let e = 0.7f64.powf(-0.5) * 1.4f64.powf(-1.5) * 0.4f64.powf(0.5);
        assert!((v - e).abs() < 1e-12 * e);
    }

    #[test]
    fn series_matches_euler() {
        let p = EvalPolicy::default();
        let b = [0.4, 1.1, -0.7];
        let x = [0.3, -0.5, 0.6];
        let s = fd_series(1.3, &b, 3.1, &x, &p).unwrap();
        let e = lauricella_fd_euler(1.3, &b, 3.1, &x, &p).unwrap();
        assert!((s - e).abs() < 1e-10 * e.abs(), "{s} {e}");
    }
}
