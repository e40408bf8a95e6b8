use serde::{Deserialize, Serialize};

use super::datasets::DATASET_NAMES;
use super::weibull::weibull_common_shape_fit;
use crate::bayes::{
    bayes_p_decomposed, gibbs_chain, hpd_interval, lindley_p, posterior_params, ChainConfig,
    ChainSummary, HpdInterval, PriorSpec,
};
use crate::classical::{asymptotic_ci, mle_p, mle_sigma, AsymptoticCi};
use crate::error::Result;
use crate::model::{suff_stats, FamilyKind, SampleSet, SufficientStats, TransformFamily};
use crate::specfun::EvalPolicy;
use crate::umvue::umvue_p_decomposed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateOptions {
    /// Prior for the Bayes, Lindley and MCMC estimates.
    pub prior: PriorSpec,
    pub gamma: f64,
    pub chain: ChainConfig,
    pub policy: EvalPolicy,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        Self {
            prior: PriorSpec::jeffreys(),
            gamma: 0.05,
            chain: ChainConfig::default(),
            policy: EvalPolicy::default(),
        }
    }
}


/// Every point and interval estimate of `P` for one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub family: TransformFamily,
    pub stats: SufficientStats,
    pub prior: PriorSpec,
    pub umvue: f64,
    pub mle: f64,
    /// Posterior mean under the chosen prior.
    pub bayes: f64,
    /// Posterior mean under the non-informative prior.
    pub jeffreys_bayes: f64,
    pub lindley: f64,
    pub mcmc: ChainSummary,
    pub asymptotic_ci: AsymptoticCi,
    pub hpd: HpdInterval,
}

/// Fills in an unknown shape: the common Weibull shape by pooled maximum
/// likelihood, or the Kumaraswamy `σ` by its profile score.
pub fn resolve_family(
    kind: FamilyKind,
    sigma: Option<f64>,
    samples: &SampleSet,
) -> Result<TransformFamily> {
    match (kind, sigma) {
        (FamilyKind::Exponential, _) => Ok(TransformFamily::exponential()),
        (_, Some(s)) => TransformFamily::new(kind, s),
        (FamilyKind::Weibull, None) => {
            let sets: Vec<(&str, &[f64])> = DATASET_NAMES
                .iter()
                .copied()
                .zip([&samples.x[..], &samples.y[..], &samples.z[..]])
                .collect();
            let fit = weibull_common_shape_fit(&sets, None)?;
            TransformFamily::weibull(fit.common_shape)
        }
        (FamilyKind::Kumaraswamy, None) => TransformFamily::kumaraswamy(mle_sigma(samples, 1.0)?),
    }
}

/// Runs every estimator on one dataset.
pub fn estimate(
    samples: &SampleSet,
    family: &TransformFamily,
    opts: &EstimateOptions,
) -> Result<EstimateReport> {
    let stats = suff_stats(samples, family)?;
    let mle = mle_p(&stats)?;
    let post = posterior_params(&stats, &opts.prior)?;
    let post_j = posterior_params(&stats, &PriorSpec::jeffreys())?;
    let draws = gibbs_chain(&post, &opts.chain)?;
    Ok(EstimateReport {
        family: *family,
        stats,
        prior: opts.prior,
        umvue: umvue_p_decomposed(&stats)?,
        mle: mle.p_hat,
        bayes: bayes_p_decomposed(&post, &opts.policy)?,
        jeffreys_bayes: bayes_p_decomposed(&post_j, &opts.policy)?,
        lindley: lindley_p(&mle.theta_hat, stats.sizes(), &opts.prior)?,
        mcmc: ChainSummary::of(&draws)?,
        asymptotic_ci: asymptotic_ci(&stats, opts.gamma)?,
        hpd: hpd_interval(&draws, opts.gamma)?,
    })
}
