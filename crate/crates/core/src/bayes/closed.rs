use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use super::PosteriorSummary;
use crate::error::{Error, Result};
use crate::specfun::quad::ln_beta_kernel_integral;
use crate::specfun::{ln_appell_f1_euler, ln_gauss_2f1_euler, EvalPolicy, KahanSum};

/// Which transformation the Appell series uses, by the position of
/// `κ₁ = 1 − v₃/v₂` and `κ₂ = 1 − v₁/v₂` relative to −1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KappaRegion {
    /// `κ₁, κ₂ > −1`
    Direct,
    /// `κ₁ > −1 ≥ κ₂`
    Kappa2Transformed,
    /// `κ₂ > −1 ≥ κ₁`
    Kappa1Transformed,
    /// `κ₁, κ₂ ≤ −1`
    BothTransformed,
}

impl KappaRegion {
    pub fn of(post: &PosteriorSummary) -> Self {
        let [v1, v2, v3] = post.v;
        let k1 = 1.0 - v3 / v2;
        let k2 = 1.0 - v1 / v2;
        match (k1 > -1.0, k2 > -1.0) {
            (true, true) => Self::Direct,
            (true, false) => Self::Kappa2Transformed,
            (false, true) => Self::Kappa1Transformed,
            (false, false) => Self::BothTransformed,
        }
    }
}

/// Result of summing the Appell series for the posterior mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedSeries {
    pub value: f64,
    pub terms: usize,
    pub region: KappaRegion,
}

const MIN_TERMS: usize = 20;
const MAX_TERMS: usize = 100_000;

/// Posterior mean of `P` as `Σ_{m≥1} K_m F₁(…)`, each `F₁` evaluated by its
/// Euler integral. Summation stops once `m ≥ 20` and a term falls below
/// `rel_tol` times the running sum.
pub fn bayes_p_closed(post: &PosteriorSummary, policy: &EvalPolicy) -> Result<ClosedSeries> {
    let [w1, w2, w3] = post.w;
    let [v1, v2, v3] = post.v;
    let big_w = w1 + w2 + w3;
    let region = KappaRegion::of(post);
    let k1 = 1.0 - v3 / v2;
    let k2 = 1.0 - v1 / v2;
    let ln_1mk1 = (v3 / v2).ln();
    let ln_1mk2 = (v1 / v2).ln();
    let ln_base = w2.ln() + ln_gamma(big_w) - ln_gamma(w1);
    let cap = policy.max_terms.min(MAX_TERMS);
    let mut sum = KahanSum::default();
    for m in 1..=cap {
        let mf = m as f64;
        let ln_g = ln_base + ln_gamma(w1 + mf) - ln_gamma(big_w + mf + 1.0);
        let c = big_w + mf + 1.0;
        let ln_term = match region {
            KappaRegion::Direct => {
                ln_g + w3 * ln_1mk1
                    + w1 * ln_1mk2
                    + ln_appell_f1_euler(big_w, w3, w1 + mf, c, k1, k2, policy)?
            }
            KappaRegion::Kappa2Transformed => {
                ln_g + (mf + 1.0) * ln_1mk1 - mf * ln_1mk2
                    + ln_appell_f1_euler(mf + 1.0, w2 + 1.0, w1 + mf, c, k1, 1.0 - v3 / v1, policy)?
            }
            KappaRegion::Kappa1Transformed => {
                ln_g + ln_1mk2
                    + ln_appell_f1_euler(mf + 1.0, w3, w2 + 1.0, c, 1.0 - v1 / v3, k2, policy)?
            }
            KappaRegion::BothTransformed => {
                ln_g - mf * ln_1mk2
                    + ln_appell_f1_euler(
                        mf + 1.0,
                        w3,
                        w1 + mf,
                        c,
                        1.0 - v2 / v3,
                        1.0 - v2 / v1,
                        policy,
                    )?
            }
        };
        let term = ln_term.exp();
        sum.add(term);
        if m >= MIN_TERMS && term <= policy.rel_tol * sum.value() {
            return Ok(ClosedSeries {
                value: sum.value(),
                terms: m,
                region,
            });
        }
    }
    Err(Error::no_convergence("posterior-mean Appell series", cap))
}

/// Posterior mean of `P` as `φ₁ − φ₂`, where `φ₁ = E[θ₂/(θ₂+θ₃)]` and
/// `φ₂ = E[θ₂/(θ₁+θ₂+θ₃)]`, each a single Gauss or Appell function.
pub fn bayes_p_decomposed(post: &PosteriorSummary, policy: &EvalPolicy) -> Result<f64> {
    let [w1, w2, w3] = post.w;
    let [v1, v2, v3] = post.v;
    let big_w = w1 + w2 + w3;
    let w23 = w2 + w3;
    let ln_pref = w2.ln();

    // μ₁ = 1 − v₂/v₃
    let mu1 = 1.0 - v2 / v3;
    let ln_1mmu1 = (v2 / v3).ln();
    let ln_phi1 = if mu1 > -1.0 {
        ln_pref + w2 * ln_1mmu1 - w23.ln()
            + ln_gauss_2f1_euler(w23, w2 + 1.0, w23 + 1.0, mu1, policy)?
    } else {
        ln_pref - w3 * ln_1mmu1 - w23.ln()
            + ln_gauss_2f1_euler(w23, w3, w23 + 1.0, 1.0 - v3 / v2, policy)?
    };

    // μ₂ = 1 − v₁/v₂, μ₃ = 1 − v₃/v₂
    let mu2 = 1.0 - v1 / v2;
    let mu3 = 1.0 - v3 / v2;
    let (ln_1mmu2, ln_1mmu3) = ((v1 / v2).ln(), (v3 / v2).ln());
    let c = big_w + 1.0;
    let ln_phi2 = ln_pref - big_w.ln()
        + match (mu2 > -1.0, mu3 > -1.0) {
            (true, true) => {
                w1 * ln_1mmu2 + w3 * ln_1mmu3
                    + ln_appell_f1_euler(big_w, w1, w3, c, mu2, mu3, policy)?
            }
            (true, false) => {
                ln_1mmu2 + ln_appell_f1_euler(1.0, w2 + 1.0, w3, c, mu2, 1.0 - v1 / v3, policy)?
            }
            (false, true) => {
                ln_1mmu3 + ln_appell_f1_euler(1.0, w1, w2 + 1.0, c, 1.0 - v3 / v1, mu3, policy)?
            }
            (false, false) => {
                ln_appell_f1_euler(1.0, w1, w3, c, 1.0 - v2 / v1, 1.0 - v2 / v3, policy)?
            }
        };
    Ok(ln_phi1.exp() - ln_phi2.exp())
}

/// Direct two-dimensional quadrature of the posterior mean over the simplex,
/// independent of any hypergeometric representation.
pub fn bayes_p_oracle(post: &PosteriorSummary, tol: f64) -> Result<f64> {
    let [w1, w2, w3] = post.w;
    let [v1, v2, v3] = post.v;
    let big_w = w1 + w2 + w3;
    let k1 = 1.0 - v3 / v2;
    let k2 = 1.0 - v1 / v2;
    let ln_c = ln_gamma(big_w) - ln_gamma(w1) - ln_gamma(w2) - ln_gamma(w3)
        + w1 * (v1 / v2).ln()
        + w3 * (v3 / v2).ln();
    let inner_tol = tol * 1e-2;
    let err = std::cell::RefCell::new(None);
    // s = (1 − t) x maps the triangle to the unit square.
    let outer = |t: f64| -> f64 {
        let r = ln_beta_kernel_integral(
            w3,
            w2 + 1.0,
            |x| -big_w * (1.0 - k1 * (1.0 - t) * x - k2 * t).ln(),
            inner_tol,
            inner_tol,
        );
        match r {
            Ok(v) => v,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let ln_i = ln_beta_kernel_integral(w1 + 1.0, w2 + w3, outer, tol, tol)?;
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    Ok((ln_c + ln_i).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn post(w: [f64; 3], v: [f64; 3]) -> PosteriorSummary {
        PosteriorSummary::new(w, v).unwrap()
    }

    #[test]
    fn regions() {
        assert_eq!(KappaRegion::of(&post([1.0; 3], [1.0, 1.0, 1.0])), KappaRegion::Direct);
        assert_eq!(KappaRegion::of(&post([1.0; 3], [5.0, 2.0, 1.0])), KappaRegion::Kappa2Transformed);
        assert_eq!(KappaRegion::of(&post([1.0; 3], [1.0, 2.0, 5.0])), KappaRegion::Kappa1Transformed);
        assert_eq!(KappaRegion::of(&post([1.0; 3], [5.0, 2.0, 4.0])), KappaRegion::BothTransformed);
        // κ = −1 exactly belongs to the transformed side.
        assert_eq!(KappaRegion::of(&post([1.0; 3], [4.0, 2.0, 1.0])), KappaRegion::Kappa2Transformed);
    }

    #[test]
    fn all_representations_agree() {
        let p = EvalPolicy::default();
        let w = [3.0, 4.0, 2.5];
        for v in [[2.0, 3.0, 4.0], [7.0, 3.0, 4.0], [2.0, 3.0, 8.0], [8.0, 3.0, 9.0]] {
            let ps = post(w, v);
            let o = bayes_p_oracle(&ps, 1e-12).unwrap();
            let d = bayes_p_decomposed(&ps, &p).unwrap();
            let c = bayes_p_closed(&ps, &p).unwrap();
            assert!((o - d).abs() < 1e-9, "{v:?}: oracle {o} decomposed {d}");
            assert!((o - c.value).abs() < 1e-7 * o, "{v:?}: oracle {o} series {c:?}");
        }
    }
}
