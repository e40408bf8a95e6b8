use serde::{Deserialize, Serialize};

use super::ks::{ks_test, KsResult};
use crate::error::{Error, Result};
use crate::roots;

/// Maximum-likelihood Weibull fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeibullFit {
    pub shape: f64,
    pub scale: f64,
    pub log_likelihood: f64,
    /// Standard errors of (shape, scale) from the observed information; the
    /// shape entry is absent when the shape was held fixed.
    pub std_errors: (Option<f64>, f64),
}

/// `ℓ(c, λ) = n ln c − n c ln λ + (c−1) Σ ln x − Σ (x/λ)^c`.
pub fn weibull_log_likelihood(data: &[f64], shape: f64, scale: f64) -> f64 {
    let n = data.len() as f64;
    n * shape.ln() - n * shape * scale.ln() + (shape - 1.0) * data.iter().map(|x| x.ln()).sum::<f64>()
        - data.iter().map(|x| (x / scale).powf(shape)).sum::<f64>()
}

fn check_data(data: &[f64]) -> Result<()> {
    if data.len() < 2 {
        return Err(Error::Input("Weibull fit needs at least two observations".into()));
    }
    if let Some(bad) = data.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::Input(format!("Weibull data must be positive, got {bad}")));
    }
    if data.iter().all(|&x| x == data[0]) {
        return Err(Error::domain("all observations are equal; the likelihood has no maximum"));
    }
    Ok(())
}

/// Scale maximising the likelihood at a given shape: `λ = (Σ x^c / n)^(1/c)`.
fn profile_scale(data: &[f64], shape: f64) -> f64 {
    let n = data.len() as f64;
    (data.iter().map(|x| x.powf(shape)).sum::<f64>() / n).powf(1.0 / shape)
}

/// Derivative of the profile log-likelihood in the shape.
fn profile_score(data: &[f64], c: f64) -> f64 {
    // Scale by the maximum for overflow safety; the ratio S1/S0 is invariant.
    let m = data.iter().cloned().fold(0.0, f64::max);
    let n = data.len() as f64;
    let (mut s0, mut s1, mut sl) = (0.0, 0.0, 0.0);
    for &x in data {
        let r = x / m;
        let p = r.powf(c);
        s0 += p;
        s1 += p * x.ln();
        sl += x.ln();
    }
    n / c - n * s1 / s0 + sl
}

fn std_errors(data: &[f64], c: f64, lam: f64, shape_free: bool) -> (Option<f64>, f64) {
    let n = data.len() as f64;
    let (mut a, mut b, mut d) = (0.0, 0.0, 0.0);
    for &x in data {
        let z = x / lam;
        let p = z.powf(c);
        let l = z.ln();
        a += p;
        b += p * l;
        d += p * l * l;
    }
    let i_cc = n / (c * c) + d;
    let i_ll = -(n * c / (lam * lam)) + c * (c + 1.0) / (lam * lam) * a;
    let i_cl = n / lam - a / lam - c / lam * b;
    if !shape_free {
        return (None, (1.0 / i_ll).sqrt());
    }
    let det = i_cc * i_ll - i_cl * i_cl;
    (Some((i_ll / det).sqrt()), (i_cc / det).sqrt())
}

/// Weibull MLE by Newton-safeguarded root finding on the profile score.
/// With `common_shape` given only the scale is estimated.
pub fn weibull_fit(data: &[f64], common_shape: Option<f64>) -> Result<WeibullFit> {
    check_data(data)?;
    let shape = match common_shape {
        Some(c) if c > 0.0 && c.is_finite() => c,
        Some(c) => return Err(Error::Input(format!("shape must be positive, got {c}"))),
        None => {
            let f = |c: f64| profile_score(data, c);
            let (lo, hi) = roots::bracket_positive(f, 1.0)?;
            roots::solve(f, lo, hi, 1e-12, 200)?
        }
    };
    let scale = profile_scale(data, shape);
    Ok(WeibullFit {
        shape,
        scale,
        log_likelihood: weibull_log_likelihood(data, shape, scale),
        std_errors: std_errors(data, shape, scale, common_shape.is_none()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetFit {
    pub name: String,
    pub fit: WeibullFit,
    pub ks: KsResult,
}

/// Common-shape fit across several datasets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub common_shape: f64,
    pub pooled_log_likelihood: f64,
    pub datasets: Vec<DatasetFit>,
}

fn weibull_cdf(shape: f64, scale: f64) -> impl Fn(f64) -> f64 {
    move |x: f64| {
        if x <= 0.0 {
            0.0
        } else {
            -(-(x / scale).powf(shape)).exp_m1()
        }
    }
}

/// Maximises the pooled likelihood over one shape and a scale per dataset,
/// then reports per-dataset fits and K-S diagnostics. With `shape` given the
/// shape is held at that value instead.
pub fn weibull_common_shape_fit(
    datasets: &[(&str, &[f64])],
    shape: Option<f64>,
) -> Result<FitReport> {
    if datasets.is_empty() {
        return Err(Error::Input("no datasets to fit".into()));
    }
    for (_, d) in datasets {
        check_data(d)?;
    }
    let c = match shape {
        Some(c) => c,
        None => {
            let f = |c: f64| datasets.iter().map(|(_, d)| profile_score(d, c)).sum::<f64>();
            let (lo, hi) = roots::bracket_positive(f, 1.0)?;
            roots::solve(f, lo, hi, 1e-12, 200)?
        }
    };
    let mut out = Vec::with_capacity(datasets.len());
    for (name, d) in datasets {
        let fit = weibull_fit(d, Some(c))?;
        let ks = ks_test(d, weibull_cdf(c, fit.scale))?;
        out.push(DatasetFit {
            name: name.to_string(),
            fit,
            ks,
        });
    }
    Ok(FitReport {
        common_shape: c,
        pooled_log_likelihood: out.iter().map(|d| d.fit.log_likelihood).sum(),
        datasets: out,
    })
}

/// K-S check of one dataset against a given Weibull.
pub fn ks_weibull(data: &[f64], shape: f64, scale: f64) -> Result<KsResult> {
    ks_test(data, weibull_cdf(shape, scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn score_vanishes_at_fit() {
        let d = [1.2, 0.4, 2.2, 3.1, 0.9, 1.7, 0.3];
        let f = weibull_fit(&d, None).unwrap();
        assert!(profile_score(&d, f.shape).abs() < 1e-9);
        // Perturbing either parameter lowers the likelihood.
        for (dc, dl) in [(1e-3, 0.0), (-1e-3, 0.0), (0.0, 1e-3), (0.0, -1e-3)] {
            assert!(weibull_log_likelihood(&d, f.shape + dc, f.scale + dl) < f.log_likelihood);
        }
    }

    #[test]
    fn degenerate_data() {
        assert!(weibull_fit(&[2.0, 2.0, 2.0], None).is_err());
        assert!(weibull_fit(&[2.0], None).is_err());
        assert!(weibull_fit(&[2.0, -1.0], None).is_err());
    }

    #[test]
    fn identical_datasets_pool_to_single_shape() {
        let d: &[f64] = &[1.2, 0.4, 2.2, 3.1, 0.9, 1.7, 0.3];
        let single = weibull_fit(d, None).unwrap();
        let pooled = weibull_common_shape_fit(&[("a", d), ("b", d), ("c", d)], None).unwrap();
        assert!((pooled.common_shape - single.shape).abs() < 1e-9);
    }
}
