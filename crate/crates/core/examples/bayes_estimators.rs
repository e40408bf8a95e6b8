//! Posterior mean of P four ways: the hypergeometric series, its
//! decomposition, direct quadrature and a Gibbs chain; plus the Lindley
//! approximation and an HPD interval.
//!
//! cargo run --release --example bayes_estimators

use ordrel::bayes::{
    bayes_p_closed, bayes_p_decomposed, bayes_p_oracle, gibbs_chain, hpd_interval, lindley_p,
    posterior_params, ChainConfig, ChainSummary, PriorSpec,
};
use ordrel::classical::mle_p;
use ordrel::model::SufficientStats;
use ordrel::specfun::EvalPolicy;

fn main() -> ordrel::Result<()> {
    let stats = SufficientStats::new([15, 15, 15], [14.0, 160.0, 9000.0])?;
    let prior = PriorSpec::study_default();
    let post = posterior_params(&stats, &prior)?;
    let policy = EvalPolicy::default();

    let closed = bayes_p_closed(&post, &policy)?;
    println!("series      {:.12}  ({} terms, {:?})", closed.value, closed.terms, closed.region);
    println!("decomposed  {:.12}", bayes_p_decomposed(&post, &policy)?);
    println!("quadrature  {:.12}", bayes_p_oracle(&post, 1e-11)?);

    let draws = gibbs_chain(&post, &ChainConfig::default())?;
    let s = ChainSummary::of(&draws)?;
    println!("Gibbs       {:.6} ± {:.6}", s.mean, s.mc_std_err);

    let mle = mle_p(&stats)?;
    println!("MLE         {:.6}", mle.p_hat);
    println!("Lindley     {:.6}", lindley_p(&mle.theta_hat, stats.sizes(), &prior)?);

    let hpd = hpd_interval(&draws, 0.05)?;
    println!("95% HPD     ({:.4}, {:.4})", hpd.lower, hpd.upper);
    Ok(())
}
