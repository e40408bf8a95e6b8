use statrs::function::gamma::ln_gamma;

use super::gauss::gauss_2f1;
use super::pfq::generalized_pfq;
use super::quad::{ln_beta_kernel_integral, xln1m};
use super::{nonpositive_integer, series_done, EvalPolicy, KahanSum};
use crate::error::{Error, Result};

fn check_finite(v: &[f64]) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::domain("F1 arguments must be finite"))
    }
}

/// Appell `F₁(a; b₁, b₂; c; x, y)` when `b₁` or `b₂` is a nonpositive integer.
///
/// With both terminating this is a finite double sum valid for any `x, y`.
/// With only one terminating, the other index is summed in closed form as a
/// Gauss function, so that argument must be below one.
pub fn appell_f1_finite(
    a: f64,
    b1: f64,
    b2: f64,
    c: f64,
    x: f64,
    y: f64,
    policy: &EvalPolicy,
) -> Result<f64> {
    check_finite(&[a, b1, b2, c, x, y])?;
    let (b1, b2, x, y) = match (nonpositive_integer(b1), nonpositive_integer(b2)) {
        (Some(_), _) => (b1, b2, x, y),
        (None, Some(_)) => (b2, b1, y, x),
        (None, None) => {
            return Err(Error::domain(
                "finite F1 sum needs b1 or b2 to be a nonpositive integer",
            ))
        }
    };
    let n1 = nonpositive_integer(b1).unwrap();
    let mut s = KahanSum::default();
    let mut coef = 1.0; // (a)_k (b1)_k / ((c)_k k!) x^k
    for k in 0..=n1 {
        let kf = k as f64;
        if coef != 0.0 {
            let inner = if let Some(n2) = nonpositive_integer(b2) {
                // Finite inner sum.
                let mut t = 1.0;
                let mut si = KahanSum::default();
                si.add(t);
                for l in 0..n2 {
                    let lf = l as f64;
                    let den = c + kf + lf;
                    if den == 0.0 {
                        return Err(Error::domain(format!("F1 undefined for c = {c}")));
                    }
                    t *= (a + kf + lf) * (b2 + lf) / (den * (lf + 1.0)) * y;
                    si.add(t);
                }
                si.value()
            } else {
                gauss_2f1(a + kf, b2, c + kf, y, policy)?
            };
            s.add(coef * inner);
        }
        let den = c + kf;
        if den == 0.0 && k < n1 {
            return Err(Error::domain(format!("F1 undefined for c = {c}")));
        }
        coef *= (a + kf) * (b1 + kf) / (den * (kf + 1.0)) * x;
    }
    Ok(s.value())
}

/// `ln F₁` from the Euler integral
/// `Γ(c)/(Γ(a)Γ(c-a)) ∫₀¹ t^(a-1)(1-t)^(c-a-1)(1-xt)^(-b₁)(1-yt)^(-b₂) dt`,
/// valid for `c > a > 0` and `x, y < 1`.
pub fn ln_appell_f1_euler(
    a: f64,
    b1: f64,
    b2: f64,
    c: f64,
    x: f64,
    y: f64,
    policy: &EvalPolicy,
) -> Result<f64> {
    check_finite(&[a, b1, b2, c, x, y])?;
    if !(a > 0.0 && c - a > 0.0) {
        return Err(Error::domain(format!(
            "Euler integral for F1 needs c > a > 0 (a={a}, c={c})"
        )));
    }
    if !(x < 1.0 && y < 1.0) {
        return Err(Error::domain(format!(
            "Euler integral for F1 needs x, y < 1 (x={x}, y={y})"
        )));
    }
    let ln_norm = ln_gamma(c) - ln_gamma(a) - ln_gamma(c - a);
    let ln_i = ln_beta_kernel_integral(
        a,
        c - a,
        |t| xln1m(-b1, x * t) + xln1m(-b2, y * t),
        policy.quad_abs_tol,
        policy.rel_tol,
    )?;
    Ok(ln_norm + ln_i)
}

/// Euler-integral evaluation of `F₁`; see [`ln_appell_f1_euler`].
pub fn appell_f1_euler(
    a: f64,
    b1: f64,
    b2: f64,
    c: f64,
    x: f64,
    y: f64,
    policy: &EvalPolicy,
) -> Result<f64> {
    ln_appell_f1_euler(a, b1, b2, c, x, y, policy).map(f64::exp)
}

/// Double power series of `F₁`, for `max(|x|, |y|) < 1`.
pub fn appell_f1_series(
    a: f64,
    b1: f64,
    b2: f64,
    c: f64,
    x: f64,
    y: f64,
    policy: &EvalPolicy,
) -> Result<f64> {
    check_finite(&[a, b1, b2, c, x, y])?;
    if nonpositive_integer(c).is_some() {
        return Err(Error::domain(format!("F1 undefined for c = {c}")));
    }
    if x.abs() >= 1.0 || y.abs() >= 1.0 {
        return Err(Error::domain(format!(
            "F1 double series needs |x|, |y| < 1 (x={x}, y={y})"
        )));
    }
    // Σ_k (a)_k (b₁)_k / ((c)_k k!) xᵏ · ₂F₁(a+k, b₂; c+k; y)
    let mut s = KahanSum::default();
    let mut coef = 1.0;
    for k in 0..policy.max_terms {
        let kf = k as f64;
        let inner = generalized_pfq(&[a + kf, b2], &[c + kf], y, policy)?;
        let row = coef * inner;
        s.add(row);
        let ratio = (a + kf) * (b1 + kf) / ((c + kf) * (kf + 1.0)) * x;
        coef *= ratio;
        if coef == 0.0 {
            return Ok(s.value());
        }
        let settled = [a, b1, c].iter().all(|&v| kf + 1.0 > -v);
        // The inner factor tends to (1-y)^(-b₂), so the row ratio is
        // asymptotically that of the coefficients.
        if settled && series_done(row, ratio, s.value(), policy.rel_tol) {
            return Ok(s.value());
        }
    }
    Err(Error::no_convergence("F1 double series", policy.max_terms))
}

fn f1_untransformed(
    a: f64,
    b1: f64,
    b2: f64,
    c: f64,
    x: f64,
    y: f64,
    policy: &EvalPolicy,
) -> Result<f64> {
    if x == 0.0 && y == 0.0 {
        return Ok(1.0);
    }
    if nonpositive_integer(b1).is_some() || nonpositive_integer(b2).is_some() {
        let n1 = nonpositive_integer(b1);
        let n2 = nonpositive_integer(b2);
        // Single-terminating sums need the free argument below one.
        let ok = (n1.is_some() && n2.is_some())
            || (n1.is_some() && y < 1.0)
            || (n2.is_some() && x < 1.0);
        if ok {
            return appell_f1_finite(a, b1, b2, c, x, y, policy);
        }
    }
    if nonpositive_integer(c).is_some() {
        return Err(Error::domain(format!("F1 undefined for c = {c}")));
    }
    if a > 0.0 && c - a > 0.0 && x < 1.0 && y < 1.0 {
        return appell_f1_euler(a, b1, b2, c, x, y, policy);
    }
    appell_f1_series(a, b1, b2, c, x, y, policy)
}

/// Appell hypergeometric function `F₁(a; b₁, b₂; c; x, y)` for real `x, y < 1`.
///
/// Strategy: finite sum; Euler integral (`c > a > 0`); double series
/// (`|x|, |y| < 1`); otherwise one of the three Pfaff-type transformations
/// that brings both arguments inside the unit disc.
pub fn appell_f1(
    a: f64,
    b1: f64,
    b2: f64,
    c: f64,
    x: f64,
    y: f64,
    policy: &EvalPolicy,
) -> Result<f64> {
    check_finite(&[a, b1, b2, c, x, y])?;
    let direct_ok = (nonpositive_integer(b1).is_some() && nonpositive_integer(b2).is_some())
        || (a > 0.0 && c - a > 0.0 && x < 1.0 && y < 1.0)
        || (x.abs() < 1.0 && y.abs() < 1.0)
        || (nonpositive_integer(b1).is_some() && y < 1.0)
        || (nonpositive_integer(b2).is_some() && x < 1.0);
    if direct_ok {
        return f1_untransformed(a, b1, b2, c, x, y, policy);
    }
    if !(x < 1.0 && y < 1.0) {
        return Err(Error::domain(format!(
            "F1 requires x, y < 1 (x={x}, y={y})"
        )));
    }
    let cands = [
        (
            // (1-x)^(-b₁)(1-y)^(-b₂) F₁(c-a; b₁, b₂; c; x/(x-1), y/(y-1))
            x / (x - 1.0),
            y / (y - 1.0),
            0usize,
        ),
        (x / (x - 1.0), (y - x) / (1.0 - x), 1),
        ((x - y) / (1.0 - y), y / (y - 1.0), 2),
    ];
    let (xx, yy, which) = cands
        .iter()
        .copied()
        .min_by(|p, q| p.0.abs().max(p.1.abs()).total_cmp(&q.0.abs().max(q.1.abs())))
        .unwrap();
    if xx.abs().max(yy.abs()) >= 1.0 {
        return Err(Error::domain(format!(
            "no F1 transformation reaches the unit disc (x={x}, y={y})"
        )));
    }
    match which {
        0 => Ok((1.0 - x).powf(-b1)
            * (1.0 - y).powf(-b2)
            * f1_untransformed(c - a, b1, b2, c, xx, yy, policy)?),
        // (1-x)^(-a) F₁(a; c-b₁-b₂, b₂; c; x/(x-1), (y-x)/(1-x))
        1 => Ok((1.0 - x).powf(-a) * f1_untransformed(a, c - b1 - b2, b2, c, xx, yy, policy)?),
        // (1-y)^(-a) F₁(a; b₁, c-b₁-b₂; c; (x-y)/(1-y), y/(y-1))
        _ => Ok((1.0 - y).powf(-a) * f1_untransformed(a, b1, c - b1 - b2, c, xx, yy, policy)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn finite_example() {
        let p = EvalPolicy::default();
        let v = appell_f1(1.0, -1.0, -1.0, 3.0, 0.2, 0.4, &p).unwrap();
        assert!(close(v, 1.0 - 0.2 + 2.0 / 12.0 * 0.08, 1e-14), "{v}");
    }

    #[test]
    fn reduces_to_gauss_on_axis() {
        let p = EvalPolicy::default();
        let f = appell_f1(1.5, 0.5, 2.0, 3.5, 0.6, 0.0, &p).unwrap();
        let g = gauss_2f1(1.5, 0.5, 3.5, 0.6, &p).unwrap();
        assert!(close(f, g, 1e-12));
        // Equal arguments: F₁(a;b₁,b₂;c;x,x) = ₂F₁(a, b₁+b₂; c; x)
        let f = appell_f1(1.5, 0.5, 2.0, 3.5, -0.4, -0.4, &p).unwrap();
        let g = gauss_2f1(1.5, 2.5, 3.5, -0.4, &p).unwrap();
        assert!(close(f, g, 1e-12));
    }

    #[test]
    fn three_paths_agree() {
        let p = EvalPolicy::default();
        let s = appell_f1_series(1.2, 0.7, -1.6, 2.9, 0.5, -0.8, &p).unwrap();
        let e = appell_f1_euler(1.2, 0.7, -1.6, 2.9, 0.5, -0.8, &p).unwrap();
        assert!(close(s, e, 1e-10), "{s} {e}");
        let f = appell_f1_finite(1.2, -3.0, 1.6, 2.9, 0.5, -0.8, &p).unwrap();
        let e = appell_f1_euler(1.2, -3.0, 1.6, 2.9, 0.5, -0.8, &p).unwrap();
        assert!(close(f, e, 1e-10), "{f} {e}");
    }

    #[test]
    fn transformation_outside_disc() {
        let p = EvalPolicy::default();
        // a = c rules out the Euler path; compare against the Euler value at
        // a nearby admissible point via the transformation identity itself.
        let v = appell_f1(2.0, 0.5, 0.7, 2.0, -3.0, -1.5, &p).unwrap();
        // F₁(a; b₁, b₂; a; x, y) = (1-x)^(-b₁) (1-y)^(-b₂)
        assert!(close(v, 4f64.powf(-0.5) * 2.5f64.powf(-0.7), 1e-12), "{v}");
        assert!(appell_f1(1.0, 0.5, 0.5, 2.0, 1.2, 0.1, &p).is_err());
    }
}
