use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use super::PosteriorSummary;
use crate::error::{Error, Result};
use crate::model::{reliability_p, ParamTriple};

/// Length, burn-in, thinning and seed of a Gibbs run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConfig {
    pub iterations: usize,
    pub burn_in: usize,
    pub thin: usize,
    pub seed: u64,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            iterations: 5000,
            burn_in: 1000,
            thin: 5,
            seed: 42,
        }
    }
}

impl ChainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.thin == 0 {
            return Err(Error::Input("thinning interval must be at least 1".into()));
        }
        if self.burn_in >= self.iterations {
            return Err(Error::Input(format!(
                "burn-in ({}) must be shorter than the chain ({})",
                self.burn_in, self.iterations
            )));
        }
        Ok(())
    }

    /// Number of draws retained after burn-in and thinning.
    pub fn kept(&self) -> usize {
        (self.iterations - self.burn_in).div_ceil(self.thin)
    }
}

/// Gibbs sampler for `P`. The full conditionals are the independent gamma
/// posteriors, so each sweep draws `θ₁, θ₂, θ₃` and records `P(θ)`.
pub fn gibbs_chain(post: &PosteriorSummary, cfg: &ChainConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    gibbs_chain_with_rng(post, cfg, &mut rng)
}

pub fn gibbs_chain_with_rng<R: rand::Rng + ?Sized>(
    post: &PosteriorSummary,
    cfg: &ChainConfig,
    rng: &mut R,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    let dists = [0, 1, 2]
        .map(|i| Gamma::new(post.w[i], 1.0 / post.v[i]).map_err(|e| Error::domain(e.to_string())));
    let [g1, g2, g3] = dists;
    let (g1, g2, g3) = (g1?, g2?, g3?);
    let mut out = Vec::with_capacity(cfg.kept());
    for it in 0..cfg.iterations {
        let t = [g1.sample(rng), g2.sample(rng), g3.sample(rng)];
        if it >= cfg.burn_in && (it - cfg.burn_in).is_multiple_of(cfg.thin) {
            // Gamma draws can underflow to zero for tiny shapes; P is then 0 or its limit.
            let p = match ParamTriple::from_array(t) {
                Ok(th) => reliability_p(&th),
                Err(_) => {
                    let [a, b, c] = t;
                    let den = (b + c) * (a + b + c);
                    if den > 0.0 {
                        a * b / den
                    } else {
                        0.0
                    }
                }
            };
            out.push(p);
        }
    }
    Ok(out)
}

/// Mean, standard deviation and Monte Carlo standard error of a chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainSummary {
    pub mean: f64,
    pub std_dev: f64,
    pub mc_std_err: f64,
    pub draws: usize,
}

impl ChainSummary {
    pub fn of(draws: &[f64]) -> Result<Self> {
        if draws.len() < 2 {
            return Err(Error::domain("need at least two draws"));
        }
        let n = draws.len() as f64;
        let mean = draws.iter().sum::<f64>() / n;
        let var = draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0);
        Ok(Self {
            mean,
            std_dev: var.sqrt(),
            mc_std_err: (var / n).sqrt(),
            draws: draws.len(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HpdInterval {
    pub lower: f64,
    pub upper: f64,
    pub gamma: f64,
}

impl HpdInterval {
    pub fn length(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, p: f64) -> bool {
        self.lower <= p && p <= self.upper
    }
}

/// Shortest interval covering `⌈(1−γ)T⌉` of the sorted draws (Chen–Shao).
/// Ties go to the leftmost candidate.
pub fn hpd_interval(draws: &[f64], gamma: f64) -> Result<HpdInterval> {
    crate::classical::check_gamma(gamma)?;
    if draws.iter().any(|d| !d.is_finite()) {
        return Err(Error::domain("draws must be finite"));
    }
    let t = draws.len();
    // Guard against (1−γ)T landing a hair above an integer.
    let k = (((1.0 - gamma) * t as f64) - 1e-9).ceil().max(1.0) as usize;
    if k >= t {
        return Err(Error::domain(format!(
            "{t} draws are too few for a {:.1}% HPD interval",
            100.0 * (1.0 - gamma)
        )));
    }
    let mut s = draws.to_vec();
    s.sort_by(f64::total_cmp);
    let mut best = 0;
    let mut best_len = f64::INFINITY;
    for j in 0..=t - k {
        let len = s[j + k - 1] - s[j];
        if len < best_len {
            best_len = len;
            best = j;
        }
    }
    Ok(HpdInterval {
        lower: s[best],
        upper: s[best + k - 1],
        gamma,
    })
}
