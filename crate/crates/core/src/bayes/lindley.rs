use serde::{Deserialize, Serialize};

use super::PriorSpec;
use crate::classical::{grad_p, hess_p};
use crate::error::Result;
use crate::model::{reliability_p, ParamTriple};

/// The pieces of Lindley's expansion at the MLE. With a diagonal Fisher
/// information only the diagonal terms survive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LindleyWorkspace {
    /// `∂ ln π / ∂θᵢ = (bᵢ − 1)/θᵢ − aᵢ`
    pub rho: [f64; 3],
    /// `ϖᵢᵢ = θᵢ²/nᵢ`, the inverse of `−∂²ℓ/∂θᵢ²`.
    pub varpi: [f64; 3],
    /// `ℓ_iii = 2nᵢ/θᵢ³`
    pub eps3: [f64; 3],
    pub grad: [f64; 3],
    pub hess: [[f64; 3]; 3],
}

impl LindleyWorkspace {
    pub fn new(theta_hat: &ParamTriple, n: [usize; 3], prior: &PriorSpec) -> Self {
        let th = theta_hat.as_array();
        let nf = n.map(|k| k as f64);
        Self {
            rho: [0, 1, 2].map(|i| (prior.b[i] - 1.0) / th[i] - prior.a[i]),
            varpi: [0, 1, 2].map(|i| th[i] * th[i] / nf[i]),
            eps3: [0, 1, 2].map(|i| 2.0 * nf[i] / th[i].powi(3)),
            grad: grad_p(theta_hat),
            hess: hess_p(theta_hat),
        }
    }

    /// `Σ Pᵢρᵢϖᵢᵢ + ½ Σ Pᵢᵢϖᵢᵢ + ½ Σ ℓ_iii ϖᵢᵢ² Pᵢ`.
    pub fn correction(&self) -> f64 {
        (0..3)
            .map(|i| {
                let s = self.varpi[i];
                self.grad[i] * self.rho[i] * s
                    + 0.5 * self.hess[i][i] * s
                    + 0.5 * self.eps3[i] * s * s * self.grad[i]
            })
            .sum()
    }
}

/// Lindley approximation of the posterior mean of `P` around the MLE.
pub fn lindley_p(theta_hat: &ParamTriple, n: [usize; 3], prior: &PriorSpec) -> Result<f64> {
    let ws = LindleyWorkspace::new(theta_hat, n, prior);
    Ok(reliability_p(theta_hat) + ws.correction())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jeffreys_leaves_only_curvature() {
        // Under the non-informative prior the ρ and third-derivative terms cancel.
        let th = ParamTriple::new(0.8, 0.3, 0.5).unwrap();
        let n = [7, 9, 11];
        let l = lindley_p(&th, n, &PriorSpec::jeffreys()).unwrap();
        let h = hess_p(&th);
        let expect = reliability_p(&th)
            + 0.5 * (0..3).map(|i| h[i][i] * th.get(i).powi(2) / n[i] as f64).sum::<f64>();
        assert!((l - expect).abs() < 1e-15);
    }
}
