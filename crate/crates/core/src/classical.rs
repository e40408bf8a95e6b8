//! Maximum-likelihood estimation of `P` and its asymptotic confidence interval.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::model::{reliability_p, ParamTriple, SampleSet, SufficientStats};
use crate::roots;

/// `θ̂ᵢ = nᵢ / uᵢ`.
pub fn mle_theta(stats: &SufficientStats) -> Result<ParamTriple> {
    ParamTriple::new(
        stats.n1 as f64 / stats.u,
        stats.n2 as f64 / stats.v,
        stats.n3 as f64 / stats.w,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MleResult {
    pub theta_hat: ParamTriple,
    pub p_hat: f64,
}

/// Plug-in MLE of `P` (invariance principle).
pub fn mle_p(stats: &SufficientStats) -> Result<MleResult> {
    let theta_hat = mle_theta(stats)?;
    Ok(MleResult {
        theta_hat,
        p_hat: reliability_p(&theta_hat),
    })
}

/// Gradient `∂P/∂θᵢ`.
pub fn grad_p(theta: &ParamTriple) -> [f64; 3] {
    let [t1, t2, t3] = theta.as_array();
    let d = t2 + t3;
    let s = t1 + t2 + t3;
    let (d2, s2) = (d * d, s * s);
    [
        t2 / s2,
        t3 / d2 - (t1 + t3) / s2,
        -t2 / d2 + t2 / s2,
    ]
}

/// Hessian `∂²P/∂θᵢ∂θⱼ`, from `P = θ₂/(θ₂+θ₃) - θ₂/(θ₁+θ₂+θ₃)`.
pub fn hess_p(theta: &ParamTriple) -> [[f64; 3]; 3] {
    let [t1, t2, t3] = theta.as_array();
    let d3 = (t2 + t3).powi(3);
    let s3 = (t1 + t2 + t3).powi(3);
    let p11 = -2.0 * t2 / s3;
    let p12 = (t1 - t2 + t3) / s3;
    let p13 = -2.0 * t2 / s3;
    let p22 = -2.0 * t3 / d3 + 2.0 * (t1 + t3) / s3;
    let p23 = (t2 - t3) / d3 - (t2 - t1 - t3) / s3;
    let p33 = 2.0 * t2 / d3 - 2.0 * t2 / s3;
    [[p11, p12, p13], [p12, p22, p23], [p13, p23, p33]]
}

/// Expected Fisher information `diag(nᵢ/θᵢ²)`.
pub fn fisher_information(theta: &ParamTriple, n: [usize; 3]) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        m[i][i] = n[i] as f64 / theta.get(i).powi(2);
    }
    m
}

/// Delta-method variance `∇Pᵀ I⁻¹ ∇P = Σ (∂P/∂θᵢ)² θᵢ²/nᵢ`.
pub fn delta_variance(theta: &ParamTriple, n: [usize; 3]) -> f64 {
    let g = grad_p(theta);
    (0..3)
        .map(|i| g[i] * g[i] * theta.get(i).powi(2) / n[i] as f64)
        .sum()
}

/// Normal-approximation interval for `P`, clamped to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticCi {
    pub lower: f64,
    pub upper: f64,
    /// Nominal level is `1 - gamma`.
    pub gamma: f64,
    pub p_hat: f64,
    pub std_err: f64,
    /// Whether either endpoint was clamped to `[0, 1]`.
    pub clamped: bool,
}

impl AsymptoticCi {
    pub fn length(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, p: f64) -> bool {
        self.lower <= p && p <= self.upper
    }
}

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma < 1.0 {
        Ok(())
    } else {
        Err(Error::Input(format!("gamma must lie in (0, 1), got {gamma}")))
    }
}

/// `100(1-γ)%` asymptotic confidence interval `P̂ ± z_{γ/2} σ̂_P`.
pub fn asymptotic_ci(stats: &SufficientStats, gamma: f64) -> Result<AsymptoticCi> {
    check_gamma(gamma)?;
    let mle = mle_p(stats)?;
    let se = delta_variance(&mle.theta_hat, stats.sizes()).sqrt();
    let z = Normal::standard().inverse_cdf(1.0 - gamma / 2.0);
    let (lo, hi) = (mle.p_hat - z * se, mle.p_hat + z * se);
    Ok(AsymptoticCi {
        lower: lo.max(0.0),
        upper: hi.min(1.0),
        gamma,
        p_hat: mle.p_hat,
        std_err: se,
        clamped: lo < 0.0 || hi > 1.0,
    })
}

/// Profile score in `σ` of the Kumaraswamy likelihood, with each `θᵢ`
/// replaced by its conditional MLE `nᵢ / Σⱼ -ln(1 - sⱼ^σ)`.
pub fn kumaraswamy_profile_score(samples: &SampleSet, sigma: f64) -> f64 {
    let mut score = 0.0;
    for v in [&samples.x, &samples.y, &samples.z] {
        let n = v.len() as f64;
        let mut t_sum = 0.0;
        let mut r_sum = 0.0;
        for &s in v {
            let sp = s.powf(sigma);
            let ln_s = s.ln();
            t_sum += -(-sp).ln_1p();
            // d/dσ ln(1 - s^σ)
            r_sum += -sp * ln_s / (1.0 - sp);
            score += ln_s;
        }
        let theta = n / t_sum;
        score += n / sigma + (theta - 1.0) * r_sum;
    }
    score
}

/// Joint MLE of the common Kumaraswamy shape `σ` (the rates are profiled out).
pub fn mle_sigma(samples: &SampleSet, init: f64) -> Result<f64> {
    for v in [&samples.x, &samples.y, &samples.z] {
        if let Some(bad) = v.iter().find(|&&s| !(s > 0.0 && s < 1.0)) {
            return Err(Error::Input(format!("value {bad} lies outside (0, 1)")));
        }
    }
    if !(init > 0.0 && init.is_finite()) {
        return Err(Error::Input(format!("initial σ must be positive, got {init}")));
    }
    let score = |s: f64| kumaraswamy_profile_score(samples, s);
    let (lo, hi) = roots::bracket_positive(score, init)?;
    roots::solve(score, lo, hi, 1e-10, 200)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(n: [usize; 3], s: [f64; 3]) -> SufficientStats {
        SufficientStats::new(n, s).unwrap()
    }

    #[test]
    fn mle_closed_form() {
        let st = stats([10, 10, 10], [10.0, 20.0, 40.0]);
        let m = mle_p(&st).unwrap();
        assert_eq!(m.theta_hat.as_array(), [1.0, 0.5, 0.25]);
        assert!((m.p_hat - 0.5 / (0.75 * 1.75)).abs() < 1e-15);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let th = [0.7, 0.3, 1.9];
        let g = grad_p(&ParamTriple::from_array(th).unwrap());
        for i in 0..3 {
            let h = 1e-6;
            let mut a = th;
            let mut b = th;
            a[i] += h;
            b[i] -= h;
            let fd = (reliability_p(&ParamTriple::from_array(a).unwrap())
                - reliability_p(&ParamTriple::from_array(b).unwrap()))
                / (2.0 * h);
            assert!((fd - g[i]).abs() < 1e-8, "i={i}: {fd} vs {}", g[i]);
        }
    }

    #[test]
    fn interval_is_clamped() {
        // Tiny samples near P ≈ 1 push the upper end past one.
        let st = stats([2, 2, 2], [0.01, 1.0, 1e4]);
        let ci = asymptotic_ci(&st, 0.05).unwrap();
        assert!(ci.upper <= 1.0 && ci.lower >= 0.0);
        assert!(asymptotic_ci(&st, 1.0).is_err());
    }
}
