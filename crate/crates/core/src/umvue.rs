//! Uniformly minimum-variance unbiased estimation of `P`.
//!
//! With `R`, `S`, `T` the Rao–Blackwellised single-observation estimators,
//! `Pᵁ = Pr(R < S < T | u, v, w)` where each of `R/u`, `S/v`, `T/w` is
//! Beta(1, nᵢ − 1). Three evaluations are provided: the hypergeometric
//! closed form, an equivalent decomposition `φ₁ − φ₂` into finite double
//! sums (the production path), and a quadrature oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SufficientStats;
use crate::specfun::quad::integrate;
use crate::specfun::{appell_f1, gauss_2f1, terminating_coefficients, EvalPolicy, KahanSum};

/// Which ordering of `(u, v, w)` selects the closed form. Ties go to the
/// first matching variant in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UmvueRegion {
    /// `u ≤ v ≤ w`
    UVW,
    /// `u ≤ w ≤ v`
    UWV,
    /// `v ≤ min(u, w)`
    VMin,
    /// `w ≤ min(u, v)`
    WMin,
}

impl UmvueRegion {
    pub fn select(u: f64, v: f64, w: f64) -> Self {
        if u <= v && v <= w {
            Self::UVW
        } else if u <= w && w <= v {
            Self::UWV
        } else if v <= u && v <= w {
            Self::VMin
        } else {
            Self::WMin
        }
    }
}

/// Two readings of the `v ≤ min(u, w)` branch. The alternate one differs in
/// the Gauss-function denominator, the coefficient prefactor and the
/// summation range; it is kept for comparison and disagrees with the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phi3Reading {
    Corrected,
    Alternate,
}

fn sizes_checked(stats: &SufficientStats) -> Result<[usize; 3]> {
    let n = stats.sizes();
    if n.iter().any(|&k| k < 2) {
        return Err(Error::domain(format!(
            "the UMVUE needs at least two observations per sample, got {n:?}"
        )));
    }
    Ok(n)
}

pub(crate) fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}

/// `base^(m) · ₃F₂(1, -m, α; β, 2; -r/base)` with `base = 1 - r`, expanded so
/// that the ratio `r/(1-r)` never appears (it blows up as `r → 1`).
fn scaled_terminating_3f2(m: usize, alpha: f64, beta: f64, r: f64) -> Result<f64> {
    let c = terminating_coefficients(&[1.0, -(m as f64), alpha], &[beta, 2.0])?
        .expect("numerator -m terminates");
    let base = 1.0 - r;
    let mut s = KahanSum::default();
    for (k, ck) in c.iter().enumerate() {
        s.add(ck * (-r).powi(k as i32) * base.powi((m - k) as i32));
    }
    Ok(s.value())
}

/// Closed hypergeometric form of the UMVUE (corrected reading).
pub fn umvue_p(stats: &SufficientStats, policy: &EvalPolicy) -> Result<f64> {
    umvue_p_with_reading(stats, Phi3Reading::Corrected, policy)
}

/// Closed hypergeometric form with an explicit choice for the `v`-minimal
/// branch. Every special function here terminates, so all are finite sums.
pub fn umvue_p_with_reading(
    stats: &SufficientStats,
    reading: Phi3Reading,
    policy: &EvalPolicy,
) -> Result<f64> {
    let [n1, n2, n3] = sizes_checked(stats)?.map(|k| k as f64);
    let [n1u, n2u, n3u] = stats.sizes();
    let (u, v, w) = (stats.u, stats.v, stats.w);
    let val = match UmvueRegion::select(u, v, w) {
        r @ (UmvueRegion::UVW | UmvueRegion::UWV) => {
            let common = (n3 - 1.0) / n1
                * (u / w)
                * appell_f1(1.0, 1.0 - n2, 2.0 - n3, n1 + 1.0, u / v, u / w, policy)?
                + appell_f1(1.0, 1.0 - n2, 1.0 - n3, n1, u / v, u / w, policy)?;
            if r == UmvueRegion::UVW {
                common - (n3 - 1.0) / n2 * (v / w) * gauss_2f1(2.0 - n3, 1.0, n2 + 1.0, v / w, policy)?
            } else {
                common - gauss_2f1(1.0 - n2, 1.0, n3, w / v, policy)?
            }
        }
        UmvueRegion::VMin => {
            let (c2f1, terms) = match reading {
                Phi3Reading::Corrected => (n2 + 1.0, n3u - 1),
                Phi3Reading::Alternate => (n3 + 1.0, n2u),
            };
            let first = (n1 - 1.0) / n2
                * (v / u)
                * appell_f1(1.0, 2.0 - n1, 1.0 - n3, n2 + 1.0, v / u, v / w, policy)?;
            let second = (1.0 - (1.0 - v / u).powi(n1u as i32 - 1))
                * (v / w)
                * (n3 - 1.0)
                / n2
                * gauss_2f1(2.0 - n3, 1.0, c2f1, v / w, policy)?;
            let mut s = KahanSum::default();
            for a in 0..terms {
                let af = a as f64;
                let pref = match reading {
                    Phi3Reading::Corrected => (v / u) * (v / w).powi(a as i32 + 1),
                    Phi3Reading::Alternate => (v / w) * (v / w).powi(a as i32 + 1),
                };
                let coef = (n1 - 1.0) * (n3 - 1.0) / (n2 + 1.0) * pref
                    * binom(n3u.saturating_sub(2), a)
                    / binom(n2u + a + 1, a);
                let f = scaled_terminating_3f2(n1u - 2, n2 + 1.0, n2 + af + 2.0, v / u)?;
                s.add(if a % 2 == 0 { coef * f } else { -coef * f });
            }
            first - second + s.value()
        }
        UmvueRegion::WMin => {
            let first = (n1 - 1.0) / n3
                * (w / u)
                * appell_f1(1.0, 2.0 - n1, 1.0 - n2, n3 + 1.0, w / u, w / v, policy)?;
            let second = (1.0 - (1.0 - w / u).powi(n1u as i32 - 1))
                * gauss_2f1(1.0 - n2, 1.0, n3, w / v, policy)?;
            let mut s = KahanSum::default();
            for a in 0..n2u {
                let af = a as f64;
                let coef = (n1 - 1.0) * (n3 - 1.0) / n3
                    * (w / u)
                    * (w / v).powi(a as i32)
                    * binom(n2u - 1, a)
                    / binom(n3u + a, a);
                let f = scaled_terminating_3f2(n1u - 2, n3, n3 + af + 1.0, w / u)?;
                s.add(if a % 2 == 0 { coef * f } else { -coef * f });
            }
            first - second + s.value()
        }
    };
    Ok(val)
}

/// `φ₁ = Pr(S < T | v, w)`.
fn phi1(n2: usize, n3: usize, v: f64, w: f64) -> f64 {
    // w ≥ v: ₂F₁(1-n₃, 1; n₂; v/w); otherwise the complement with roles swapped.
    let half = |na: usize, nb: usize, z: f64| -> f64 {
        let mut s = KahanSum::default();
        for a in 0..nb {
            let t = binom(nb - 1, a) / binom(na + a - 1, a) * z.powi(a as i32);
            s.add(if a % 2 == 0 { t } else { -t });
        }
        s.value()
    };
    if w >= v {
        half(n2, n3, v / w)
    } else {
        1.0 - half(n3, n2, w / v)
    }
}

/// `φ₂ = Pr(S < T, S < R | u, v, w)`.
fn phi2(n: [usize; 3], u: f64, v: f64, w: f64) -> f64 {
    let [n1, n2, n3] = n;
    let mut s = KahanSum::default();
    let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    match UmvueRegion::select(u, v, w) {
        UmvueRegion::UVW | UmvueRegion::UWV => {
            for a in 0..n3 {
                for b in 0..n2 - 1 {
                    s.add(
                        sign(a + b) * (u / w).powi(a as i32) * (u / v).powi(b as i32 + 1)
                            * binom(n3 - 1, a)
                            * binom(n2 - 2, b)
                            / binom(n1 + a + b, a + b),
                    );
                }
            }
            (n2 - 1) as f64 / n1 as f64 * s.value()
        }
        UmvueRegion::VMin => {
            for a in 0..n1 {
                for b in 0..n3 {
                    s.add(
                        sign(a + b) * (v / u).powi(a as i32) * (v / w).powi(b as i32)
                            * binom(n1 - 1, a)
                            * binom(n3 - 1, b)
                            / binom(n2 + a + b - 1, a + b),
                    );
                }
            }
            s.value()
        }
        UmvueRegion::WMin => {
            for a in 0..n1 {
                for b in 0..n2 - 1 {
                    s.add(
                        sign(a + b) * (w / u).powi(a as i32) * (w / v).powi(b as i32 + 1)
                            * binom(n1 - 1, a)
                            * binom(n2 - 2, b)
                            / binom(n3 + a + b, a + b),
                    );
                }
            }
            (n2 - 1) as f64 / n3 as f64 * s.value()
        }
    }
}

/// UMVUE as `φ₁ − φ₂` (finite sums only). This is the default evaluator.
pub fn umvue_p_decomposed(stats: &SufficientStats) -> Result<f64> {
    let n = sizes_checked(stats)?;
    let (u, v, w) = (stats.u, stats.v, stats.w);
    Ok(phi1(n[1], n[2], v, w) - phi2(n, u, v, w))
}

/// Quadrature oracle: `∫₀^v f_S(s) Pr(R < s) Pr(T > s) ds`, with the two
/// inner probabilities themselves obtained by quadrature of the densities.
pub fn umvue_oracle(stats: &SufficientStats, tol: f64) -> Result<f64> {
    let [n1, n2, n3] = sizes_checked(stats)?;
    let (u, v, w) = (stats.u, stats.v, stats.w);
    let dens = |n: usize, scale: f64, x: f64| -> f64 {
        (n - 1) as f64 / scale * (1.0 - x / scale).max(0.0).powi(n as i32 - 2)
    };
    let inner_tol = tol * 1e-2;
    let mut err: Option<Error> = None;
    let mut outer = |s: f64| -> f64 {
        let fr = integrate(|r| dens(n1, u, r), 0.0, s.min(u), inner_tol, inner_tol, 200);
        let ft = integrate(|t| dens(n3, w, t), s, w, inner_tol, inner_tol, 200);
        match (fr, ft) {
            (Ok(a), Ok(b)) => dens(n2, v, s) * a.value * b.value,
            (Err(e), _) | (_, Err(e)) => {
                err.get_or_insert(e);
                0.0
            }
        }
    };
    let top = v.min(w);
    let mut total = 0.0;
    let mut lo = 0.0;
    for hi in [u, top] {
        if hi > lo && hi <= top {
            total += integrate(&mut outer, lo, hi, tol, tol, 1000)?.value;
            lo = hi;
        }
    }
    if let Some(e) = err {
        return Err(e);
    }
    Ok(total)
}
