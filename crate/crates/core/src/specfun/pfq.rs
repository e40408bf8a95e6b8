use super::{nonpositive_integer, series_done, EvalPolicy, KahanSum};
use crate::error::{Error, Result};

/// Degree of the polynomial when some numerator parameter is `-N`.
pub(crate) fn terminating_degree(numer: &[f64]) -> Option<usize> {
    numer.iter().filter_map(|&a| nonpositive_integer(a)).min()
}

fn check_denominators(numer: &[f64], denom: &[f64]) -> Result<()> {
    let degree = terminating_degree(numer);
    for &b in denom {
        if let Some(m) = nonpositive_integer(b) {
            match degree {
                Some(n) if n <= m => {}
                _ => {
                    return Err(Error::domain(format!(
                        "denominator parameter {b} is a nonpositive integer"
                    )))
                }
            }
        }
    }
    Ok(())
}

/// Coefficients `c_k` of a terminating series `Σ c_k x^k`, or `None` when no
/// numerator parameter is a nonpositive integer.
pub fn terminating_coefficients(numer: &[f64], denom: &[f64]) -> Result<Option<Vec<f64>>> {
    let Some(n) = terminating_degree(numer) else {
        return Ok(None);
    };
    check_denominators(numer, denom)?;
    let mut c = Vec::with_capacity(n + 1);
    let mut t = 1.0;
    c.push(t);
    for k in 0..n {
        let kf = k as f64;
        let num: f64 = numer.iter().map(|&a| a + kf).product();
        let den: f64 = denom.iter().map(|&b| b + kf).product();
        t *= num / (den * (kf + 1.0));
        c.push(t);
    }
    Ok(Some(c))
}

fn term_ratio(numer: &[f64], denom: &[f64], k: f64, x: f64) -> f64 {
    let num: f64 = numer.iter().map(|&a| a + k).product();
    let den: f64 = denom.iter().map(|&b| b + k).product();
    num / (den * (k + 1.0)) * x
}

/// Generalized hypergeometric function `pFq(a; b; x)`.
///
/// Terminating series are summed exactly for any `x`; otherwise the series
/// must converge (`p ≤ q`, or `p = q + 1` with `|x| < 1`).
pub fn generalized_pfq(numer: &[f64], denom: &[f64], x: f64, policy: &EvalPolicy) -> Result<f64> {
    if numer.iter().chain(denom).any(|v| !v.is_finite()) || !x.is_finite() {
        return Err(Error::domain("pFq parameters must be finite"));
    }
    if let Some(c) = terminating_coefficients(numer, denom)? {
        let mut s = KahanSum::default();
        let mut xp = 1.0;
        for ck in c {
            s.add(ck * xp);
            xp *= x;
        }
        return Ok(s.value());
    }
    check_denominators(numer, denom)?;
    let p = numer.len();
    let q = denom.len();
    if p > q + 1 || (p == q + 1 && x.abs() >= 1.0) {
        return Err(Error::domain(format!(
            "{p}F{q} series diverges at x = {x}; no continuation available"
        )));
    }
    let mut s = KahanSum::default();
    let mut t = 1.0;
    s.add(t);
    for k in 0..policy.max_terms {
        let kf = k as f64;
        t *= term_ratio(numer, denom, kf, x);
        s.add(t);
        if !t.is_finite() {
            return Err(Error::no_convergence("pFq series overflowed", k));
        }
        let kn = kf + 1.0;
        let settled = numer.iter().chain(denom).all(|&v| kn > -v);
        if settled && series_done(t, term_ratio(numer, denom, kn, x), s.value(), policy.rel_tol) {
            return Ok(s.value());
        }
    }
    Err(Error::no_convergence("pFq series", policy.max_terms))
}

/// `₃F₂(a₁, a₂, a₃; b₁, b₂; x)`.
pub fn hyper_3f2(a: [f64; 3], b: [f64; 2], x: f64, policy: &EvalPolicy) -> Result<f64> {
    generalized_pfq(&a, &b, x, policy)
}
