//! Classical, UMVUE and Bayes estimators against independent references.

use approx::assert_relative_eq;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ordrel::bayes::{
    bayes_p_closed, bayes_p_decomposed, bayes_p_oracle, gibbs_chain, hpd_interval, lindley_p,
    posterior_params, ChainConfig, ChainSummary, PosteriorSummary, PriorSpec,
};
use ordrel::classical::{asymptotic_ci, delta_variance, grad_p, hess_p, mle_p};
use ordrel::model::{reliability_p, suff_stats, ParamTriple, SampleSet, SufficientStats, TransformFamily};
use ordrel::specfun::EvalPolicy;
use ordrel::umvue::{umvue_oracle, umvue_p, umvue_p_decomposed, umvue_p_with_reading, Phi3Reading};

fn theta(t: [f64; 3]) -> ParamTriple {
    ParamTriple::from_array(t).unwrap()
}

fn fd_grad(t: [f64; 3]) -> [f64; 3] {
    let mut g = [0.0; 3];
    for i in 0..3 {
        let h = 1e-6 * t[i];
        let (mut up, mut dn) = (t, t);
        up[i] += h;
        dn[i] -= h;
        g[i] = (reliability_p(&theta(up)) - reliability_p(&theta(dn))) / (2.0 * h);
    }
    g
}

proptest! {
    #[test]
    fn gradient_and_hessian_match_differences(t1 in 0.1f64..5.0, t2 in 0.1f64..5.0, t3 in 0.1f64..5.0) {
        let t = [t1, t2, t3];
        let g = grad_p(&theta(t));
        let fd = fd_grad(t);
        for i in 0..3 {
            prop_assert!((g[i] - fd[i]).abs() <= 1e-6 * g.iter().map(|x| x.abs()).fold(0.0, f64::max));
        }
        let h = hess_p(&theta(t));
        for j in 0..3 {
            let step = 1e-5 * t[j];
            let (mut up, mut dn) = (t, t);
            up[j] += step;
            dn[j] -= step;
            let (gu, gd) = (grad_p(&theta(up)), grad_p(&theta(dn)));
            for i in 0..3 {
                let d = (gu[i] - gd[i]) / (2.0 * step);
                prop_assert!((h[i][j] - d).abs() <= 1e-5 * h[i][j].abs().max(1e-3), "{i}{j}");
                prop_assert_eq!(h[i][j], h[j][i]);
            }
        }
    }
}

#[test]
fn mle_is_closed_form() {
    let s = SufficientStats::new([4, 5, 6], [2.0, 10.0, 30.0]).unwrap();
    let m = mle_p(&s).unwrap();
    assert_eq!(m.theta_hat.as_array(), [2.0, 0.5, 0.2]);
    assert_relative_eq!(m.p_hat, reliability_p(&theta([2.0, 0.5, 0.2])));
}

#[test]
fn asymptotic_ci_is_delta_method() {
    let s = SufficientStats::new([20, 20, 20], [10.0, 40.0, 200.0]).unwrap();
    let ci = asymptotic_ci(&s, 0.05).unwrap();
    let m = mle_p(&s).unwrap();
    let se = delta_variance(&m.theta_hat, s.sizes()).sqrt();
    assert_relative_eq!(ci.std_err, se, max_relative = 1e-12);
    assert_relative_eq!(ci.upper - ci.lower, 2.0 * 1.959963984540054 * se, max_relative = 1e-9);
    assert!(ci.contains(m.p_hat));
    assert!(asymptotic_ci(&s, 1.5).is_err());
}

#[test]
fn umvue_forms_agree_with_oracle() {
    let policy = EvalPolicy::default();
    for n in [[2, 2, 2], [3, 4, 2], [4, 2, 3]] {
        for sums in [[1.0, 2.0, 3.0], [1.0, 3.0, 2.0], [2.0, 0.5, 3.0], [3.0, 2.0, 0.7], [1.0, 1.0, 1.0]] {
            let s = SufficientStats::new(n, sums).unwrap();
            let oracle = umvue_oracle(&s, 1e-11).unwrap();
            assert_relative_eq!(umvue_p(&s, &policy).unwrap(), oracle, max_relative = 1e-8);
            assert_relative_eq!(umvue_p_decomposed(&s).unwrap(), oracle, max_relative = 1e-8);
        }
    }
}

#[test]
fn alternate_phi3_reading_disagrees() {
    let s = SufficientStats::new([3, 4, 3], [2.0, 0.5, 3.0]).unwrap();
    let policy = EvalPolicy::default();
    let oracle = umvue_oracle(&s, 1e-11).unwrap();
    let alt = umvue_p_with_reading(&s, Phi3Reading::Alternate, &policy).unwrap();
    assert!((alt - oracle).abs() > 1e-3);
}

#[test]
fn bayes_forms_agree_with_oracle() {
    let policy = EvalPolicy::default();
    for (w, v) in [
        ([11.5, 12.5, 12.0], [12.0, 130.0, 9000.0]),
        ([5.0, 4.0, 6.0], [3.0, 2.0, 4.0]),
        ([3.0, 7.0, 2.5], [8.0, 1.0, 1.5]),
        ([6.0, 3.0, 4.0], [1.0, 5.0, 2.0]),
    ] {
        let post = PosteriorSummary::new(w, v).unwrap();
        let oracle = bayes_p_oracle(&post, 1e-11).unwrap();
        assert_relative_eq!(bayes_p_closed(&post, &policy).unwrap().value, oracle, max_relative = 1e-7);
        assert_relative_eq!(bayes_p_decomposed(&post, &policy).unwrap(), oracle, max_relative = 1e-9);
    }
}

#[test]
fn gibbs_mean_and_hpd() {
    let post = PosteriorSummary::new([5.0, 4.0, 6.0], [3.0, 2.0, 4.0]).unwrap();
    let exact = bayes_p_decomposed(&post, &EvalPolicy::default()).unwrap();
    let cfg = ChainConfig { iterations: 60_000, burn_in: 0, thin: 1, seed: 9 };
    let draws = gibbs_chain(&post, &cfg).unwrap();
    let s = ChainSummary::of(&draws).unwrap();
    assert!((s.mean - exact).abs() < 4.0 * s.mc_std_err, "{} vs {exact}", s.mean);
    assert_eq!(draws, gibbs_chain(&post, &cfg).unwrap());

    let hpd = hpd_interval(&draws, 0.1).unwrap();
    let inside = draws.iter().filter(|&&p| hpd.contains(p)).count() as f64 / draws.len() as f64;
    assert!((inside - 0.9).abs() < 1e-3);
}

#[test]
fn lindley_approaches_mle_for_large_samples() {
    let family = TransformFamily::exponential();
    let th = theta([0.9, 0.5, 0.2]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let data = SampleSet::simulate(&family, &th, [10_000; 3], &mut rng).unwrap();
    let s = suff_stats(&data, &family).unwrap();
    let m = mle_p(&s).unwrap();
    for prior in [PriorSpec::jeffreys(), PriorSpec::new([0.0; 3], [1.0; 3]).unwrap()] {
        let l = lindley_p(&m.theta_hat, s.sizes(), &prior).unwrap();
        assert!((l - m.p_hat).abs() < 1e-3);
    }
}

#[test]
fn jeffreys_posterior_mean_matches_lindley_to_second_order() {
    let s = SufficientStats::new([200, 200, 200], [220.0, 400.0, 1000.0]).unwrap();
    let prior = PriorSpec::jeffreys();
    let post = posterior_params(&s, &prior).unwrap();
    let exact = bayes_p_decomposed(&post, &EvalPolicy::default()).unwrap();
    let l = lindley_p(&mle_p(&s).unwrap().theta_hat, s.sizes(), &prior).unwrap();
    assert!((exact - l).abs() < 1e-4, "{exact} vs {l}");
}
