//! Special functions: Pochhammer symbols, Gauss and generalized
//! hypergeometric functions, Appell F₁ and Lauricella F_D.
//!
//! Every evaluator tries, in order, an exact finite sum (some numerator
//! parameter is a nonpositive integer), an Euler-type integral evaluated by
//! adaptive quadrature, and finally a convergent power series.

mod appell;
mod gauss;
mod lauricella;
mod pfq;
mod pochhammer;
pub mod quad;

pub use appell::{appell_f1, appell_f1_euler, appell_f1_finite, appell_f1_series, ln_appell_f1_euler};
pub use gauss::{gauss_2f1, gauss_2f1_euler, gauss_2f1_series, ln_gauss_2f1_euler};
pub use lauricella::{lauricella_fd, lauricella_fd_euler, lauricella_fd_finite};
pub use pfq::{generalized_pfq, hyper_3f2, terminating_coefficients};
pub use pochhammer::{ln_pochhammer, pochhammer};

/// Tolerances and caps shared by all evaluators.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EvalPolicy {
    /// Relative tolerance for series truncation.
    pub rel_tol: f64,
    /// Maximum number of terms (per summation index) before giving up.
    pub max_terms: usize,
    /// Absolute tolerance of the peak-normalised quadratures.
    pub quad_abs_tol: f64,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 1_000_000,
            quad_abs_tol: 1e-12,
        }
    }
}

/// Returns `Some(n)` when `x` is a nonpositive integer `-n`.
pub(crate) fn nonpositive_integer(x: f64) -> Option<usize> {
    if x <= 0.0 && x == x.round() && x > -1e9 {
        Some((-x) as usize)
    } else {
        None
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = KahanSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Decides when a hypergeometric-type series can be truncated.
///
/// Truncation requires the term ratio to have settled below one and the
/// geometric tail bound `|t| r / (1 - r)` to fall under `rel_tol * |sum|`.
pub(crate) fn series_done(term: f64, ratio: f64, sum: f64, rel_tol: f64) -> bool {
    if term == 0.0 {
        return true;
    }
    let r = ratio.abs();
    if r >= 1.0 {
        return false;
    }
    let tail = term.abs() * r / (1.0 - r);
    tail <= rel_tol * sum.abs() || tail < 1e-300
}
