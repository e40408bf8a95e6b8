use statrs::function::gamma::ln_gamma;

/// Rising factorial `(λ)_k = λ (λ+1) ⋯ (λ+k-1)`, with `(λ)_0 = 1`.
pub fn pochhammer(lambda: f64, k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if k <= 64 || lambda <= 0.0 {
        let mut p = 1.0;
        for i in 0..k {
            p *= lambda + i as f64;
            if p == 0.0 {
                return 0.0;
            }
        }
        return p;
    }
    let (ln, sign) = ln_pochhammer(lambda, k);
    sign * ln.exp()
}

/// `(ln |(λ)_k|, sign)`; the sign is `0.0` when the symbol vanishes.
pub fn ln_pochhammer(lambda: f64, k: usize) -> (f64, f64) {
    if k == 0 {
        return (0.0, 1.0);
    }
    if lambda > 0.0 {
        return (ln_gamma(lambda + k as f64) - ln_gamma(lambda), 1.0);
    }
    // Factors λ+i are negative for i < -λ; handle those one by one and the
    // positive remainder through the gamma function.
    let mut ln = 0.0;
    let mut sign = 1.0;
    let mut i = 0usize;
    while i < k {
        let f = lambda + i as f64;
        if f == 0.0 {
            return (f64::NEG_INFINITY, 0.0);
        }
        if f > 0.0 {
            break;
        }
        ln += (-f).ln();
        sign = -sign;
        i += 1;
    }
    if i < k {
        let start = lambda + i as f64;
        ln += ln_gamma(lambda + k as f64) - ln_gamma(start);
    }
    (ln, sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(pochhammer(3.0, 0), 1.0);
        assert_eq!(pochhammer(1.0, 5), 120.0);
        assert_eq!(pochhammer(-2.0, 2), 2.0);
        assert_eq!(pochhammer(-2.0, 3), 0.0);
        assert_eq!(pochhammer(0.5, 2), 0.75);
    }

    #[test]
    fn log_variant_matches_product() {
        for &(l, k) in &[(-3.5, 7usize), (2.25, 90), (-0.3, 4), (0.1, 100)] {
            let direct: f64 = (0..k).map(|i| l + i as f64).product();
            let (ln, s) = ln_pochhammer(l, k);
            assert_eq!(s, direct.signum());
            assert!((ln - direct.abs().ln()).abs() < 1e-10 * ln.abs().max(1.0));
        }
        assert_eq!(ln_pochhammer(-4.0, 6).1, 0.0);
    }
}
