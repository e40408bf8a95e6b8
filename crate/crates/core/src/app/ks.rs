use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

/// Asymptotic Kolmogorov tail `Pr(K > λ) = 2 Σ_{k=1}^{100} (-1)^(k-1) e^(-2k²λ²)`.
///
/// For small `λ` the alternating series is slow, so the complementary
/// theta-function form is used instead.
pub fn kolmogorov_p_value(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 0.3 {
        let c = (2.0 * std::f64::consts::PI).sqrt() / lambda;
        let cdf: f64 = (1..=100)
            .map(|k| {
                let j = (2 * k - 1) as f64;
                (-(j * j) * std::f64::consts::PI.powi(2) / (8.0 * lambda * lambda)).exp()
            })
            .sum::<f64>()
            * c;
        return (1.0 - cdf).clamp(0.0, 1.0);
    }
    let s: f64 = (1..=100)
        .map(|k| {
            let kf = k as f64;
            let t = (-2.0 * kf * kf * lambda * lambda).exp();
            if k % 2 == 1 {
                t
            } else {
                -t
            }
        })
        .sum();
    (2.0 * s).clamp(0.0, 1.0)
}

/// One-sample two-sided Kolmogorov–Smirnov test against `cdf`.
pub fn ks_test<F: Fn(f64) -> f64>(data: &[f64], cdf: F) -> Result<KsResult> {
    if data.is_empty() {
        return Err(Error::Input("K-S test needs at least one observation".into()));
    }
    if data.iter().any(|x| !x.is_finite()) {
        return Err(Error::Input("K-S data must be finite".into()));
    }
    let mut s = data.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in s.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    Ok(KsResult {
        statistic: d,
        p_value: kolmogorov_p_value(n.sqrt() * d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantile_data_gives_half_over_n() {
        let n = 8;
        let data: Vec<f64> = (1..=n).map(|i| (i as f64 - 0.5) / n as f64).collect();
        let r = ks_test(&data, |x| x).unwrap();
        assert!((r.statistic - 0.5 / n as f64).abs() < 1e-15);
    }

    #[test]
    fn p_value_monotone_and_continuous() {
        let mut prev = 1.0;
        for i in 1..400 {
            let p = kolmogorov_p_value(i as f64 * 0.005);
            assert!(p <= prev + 1e-12);
            prev = p;
        }
        // Both branches agree at the switch point.
        let a = kolmogorov_p_value(0.3 - 1e-12);
        let b = kolmogorov_p_value(0.3);
        assert!((a - b).abs() < 1e-9);
        // Classical 5% point.
        assert!((kolmogorov_p_value(1.358) - 0.05).abs() < 1e-3);
    }
}
