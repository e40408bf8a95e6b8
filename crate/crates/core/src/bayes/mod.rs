//! Bayesian estimation of `P` under independent gamma priors.
//!
//! With `θᵢ ~ Gamma(shape bᵢ, rate aᵢ)` the posterior factorises into
//! `Gamma(wᵢ = nᵢ + bᵢ, vᵢ = uᵢ + aᵢ)`. The posterior mean of `P` is
//! available as an Appell-function series, as an equivalent two-term
//! decomposition, by Lindley's approximation, or by Gibbs sampling.

mod closed;
mod lindley;
mod mcmc;

pub use closed::{
    bayes_p_closed, bayes_p_decomposed, bayes_p_oracle, ClosedSeries, KappaRegion,
};
pub use lindley::{lindley_p, LindleyWorkspace};
pub use mcmc::{gibbs_chain, gibbs_chain_with_rng, hpd_interval, ChainConfig, ChainSummary, HpdInterval};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SufficientStats;

/// Hyperparameters: `θᵢ ~ Gamma(shape bᵢ, rate aᵢ)`, density ∝ `θ^(b-1) e^(-aθ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorSpec {
    pub a: [f64; 3],
    pub b: [f64; 3],
}

impl PriorSpec {
    pub fn new(a: [f64; 3], b: [f64; 3]) -> Result<Self> {
        if a.iter().chain(&b).any(|&x| !(x.is_finite() && x >= 0.0)) {
            return Err(Error::Input(format!(
                "prior hyperparameters must be non-negative, got a={a:?} b={b:?}"
            )));
        }
        Ok(Self { a, b })
    }

    /// The non-informative prior `π(θ) ∝ 1/(θ₁θ₂θ₃)`, i.e. all hyperparameters zero.
    pub fn jeffreys() -> Self {
        Self {
            a: [0.0; 3],
            b: [0.0; 3],
        }
    }

    /// The informative prior used in the simulation study.
    pub fn study_default() -> Self {
        Self {
            a: [1.0, 2.0, 3.0],
            b: [1.5, 2.5, 2.0],
        }
    }

    pub fn is_jeffreys(&self) -> bool {
        self.a == [0.0; 3] && self.b == [0.0; 3]
    }
}

/// Posterior shapes `w` and rates `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PosteriorSummary {
    pub w: [f64; 3],
    pub v: [f64; 3],
}

impl PosteriorSummary {
    pub fn new(w: [f64; 3], v: [f64; 3]) -> Result<Self> {
        if w.iter().chain(&v).any(|&x| !(x.is_finite() && x > 0.0)) {
            return Err(Error::domain(format!(
                "posterior parameters must be positive, got w={w:?} v={v:?}"
            )));
        }
        Ok(Self { w, v })
    }

    /// Posterior mean of each `θᵢ`.
    pub fn theta_mean(&self) -> [f64; 3] {
        [0, 1, 2].map(|i| self.w[i] / self.v[i])
    }
}

/// `wᵢ = nᵢ + bᵢ`, `vᵢ = uᵢ + aᵢ`.
pub fn posterior_params(stats: &SufficientStats, prior: &PriorSpec) -> Result<PosteriorSummary> {
    let n = stats.sizes();
    let s = stats.sums();
    PosteriorSummary::new(
        [0, 1, 2].map(|i| n[i] as f64 + prior.b[i]),
        [0, 1, 2].map(|i| s[i] + prior.a[i]),
    )
}
