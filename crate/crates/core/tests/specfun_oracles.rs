//! Hypergeometric evaluators against brute-force double sums, classical
//! closed forms, and each other.

use approx::assert_relative_eq;
use proptest::prelude::*;

use ordrel::specfun::{
    appell_f1, appell_f1_euler, appell_f1_finite, appell_f1_series, gauss_2f1, gauss_2f1_euler,
    gauss_2f1_series, generalized_pfq, hyper_3f2, lauricella_fd, lauricella_fd_euler, pochhammer,
    EvalPolicy,
};

/// Term-by-term double sum with Pochhammer products rebuilt from scratch.
fn f1_brute(a: f64, b1: f64, b2: f64, c: f64, x: f64, y: f64, terms: usize) -> f64 {
    let mut s = 0.0;
    for m in 0..terms {
        for n in 0..terms - m {
            let fact = (1..=m).map(|k| k as f64).product::<f64>()
                * (1..=n).map(|k| k as f64).product::<f64>();
            s += pochhammer(a, m + n) * pochhammer(b1, m) * pochhammer(b2, n)
                / (pochhammer(c, m + n) * fact)
                * x.powi(m as i32)
                * y.powi(n as i32);
        }
    }
    s
}

fn p() -> EvalPolicy {
    EvalPolicy::default()
}

#[test]
fn gauss_closed_forms() {
    for x in [-0.9, -0.3, 0.1, 0.5, 0.8] {
        assert_relative_eq!(
            gauss_2f1(1.0, 1.0, 2.0, x, &p()).unwrap(),
            -(-x).ln_1p() / x,
            max_relative = 1e-12
        );
        let r: f64 = x.abs().sqrt();
        assert_relative_eq!(
            gauss_2f1(0.5, 0.5, 1.5, r * r, &p()).unwrap(),
            r.asin() / r,
            max_relative = 1e-12
        );
        // (1 - x)^(-a)
        assert_relative_eq!(
            gauss_2f1(2.3, 1.7, 1.7, x, &p()).unwrap(),
            (1.0 - x).powf(-2.3),
            max_relative = 1e-12
        );
    }
}

#[test]
fn gauss_far_left_uses_pfaff() {
    // -ln(1-x)/x well outside the unit disc.
    for x in [-3.0, -20.0, -500.0] {
        assert_relative_eq!(
            gauss_2f1(1.0, 1.0, 2.0, x, &p()).unwrap(),
            -(-x).ln_1p() / x,
            max_relative = 1e-10
        );
    }
}

#[test]
fn pfq_reduces_to_known_series() {
    // 0F0 = exp, 1F0(a;;x) = (1-x)^-a
    assert_relative_eq!(generalized_pfq(&[], &[], 1.3, &p()).unwrap(), 1.3f64.exp(), max_relative = 1e-11);
    assert_relative_eq!(
        generalized_pfq(&[2.5], &[], 0.4, &p()).unwrap(),
        0.6f64.powf(-2.5),
        max_relative = 1e-12
    );
    // Saalschützian 3F2(-n, a, b; c, 1+a+b-c-n; 1) = (c-a)_n (c-b)_n / ((c)_n (c-a-b)_n)
    let (n, a, b, c) = (4usize, 1.3, 2.2, 3.7);
    let lhs = hyper_3f2([-(n as f64), a, b], [c, 1.0 + a + b - c - n as f64], 1.0, &p()).unwrap();
    let rhs = pochhammer(c - a, n) * pochhammer(c - b, n) / (pochhammer(c, n) * pochhammer(c - a - b, n));
    assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
}

#[test]
fn f1_matches_brute_force() {
    for &(a, b1, b2, c, x, y) in &[
        (1.0, 0.5, 0.5, 2.0, 0.3, -0.4),
        (2.5, 1.5, 0.3, 4.0, 0.2, 0.25),
        (0.7, 2.0, 1.1, 1.9, -0.35, 0.1),
    ] {
        let want = f1_brute(a, b1, b2, c, x, y, 60);
        assert_relative_eq!(appell_f1(a, b1, b2, c, x, y, &p()).unwrap(), want, max_relative = 1e-10);
        assert_relative_eq!(appell_f1_series(a, b1, b2, c, x, y, &p()).unwrap(), want, max_relative = 1e-10);
    }
}

#[test]
fn f1_reductions() {
    let (a, b1, b2, c) = (1.4, 0.8, 2.1, 3.3);
    for x in [-0.7, 0.2, 0.6] {
        // Equal arguments collapse to 2F1 with summed b.
        assert_relative_eq!(
            appell_f1(a, b1, b2, c, x, x, &p()).unwrap(),
            gauss_2f1(a, b1 + b2, c, x, &p()).unwrap(),
            max_relative = 1e-10
        );
        // A zero argument drops its b.
        assert_relative_eq!(
            appell_f1(a, b1, b2, c, x, 0.0, &p()).unwrap(),
            gauss_2f1(a, b1, c, x, &p()).unwrap(),
            max_relative = 1e-10
        );
    }
}

#[test]
fn f1_finite_for_terminating_parameters() {
    let (x, y) = (0.9, -2.5);
    let want = f1_brute(1.5, -2.0, -3.0, 2.5, x, y, 8);
    let got = appell_f1_finite(1.5, -2.0, -3.0, 2.5, x, y, &p()).unwrap();
    assert_relative_eq!(got, want, max_relative = 1e-12);
}

#[test]
fn f1_outside_unit_disc_matches_integral() {
    // Euler's integral stays valid for x, y < 1 even where the series diverges.
    for &(x, y) in &[(-2.0, 0.5), (0.5, -3.0), (-1.5, -4.0)] {
        assert_relative_eq!(
            appell_f1(1.2, 0.6, 0.9, 3.0, x, y, &p()).unwrap(),
            appell_f1_euler(1.2, 0.6, 0.9, 3.0, x, y, &p()).unwrap(),
            max_relative = 1e-9
        );
    }
}

#[test]
fn fd3_matches_euler() {
    let (a, b, c, x) = (1.3, [0.5, 1.2, 0.7], 3.1, [0.3, -0.2, 0.45]);
    assert_relative_eq!(
        lauricella_fd(a, &b, c, &x, &p()).unwrap(),
        lauricella_fd_euler(a, &b, c, &x, &p()).unwrap(),
        max_relative = 1e-10
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_series_vs_euler(b in 0.2f64..4.0, dc in 0.2f64..4.0, a in -2.0f64..4.0, x in -0.9f64..0.9) {
        let c = b + dc;
        let s = gauss_2f1_series(a, b, c, x, &p()).unwrap();
        let e = gauss_2f1_euler(a, b, c, x, &p()).unwrap();
        prop_assert!((s - e).abs() <= 1e-8 * s.abs().max(1e-300), "{s} vs {e}");
    }

    #[test]
    fn fd2_is_f1(a in 0.2f64..3.0, dc in 0.2f64..3.0, b1 in -1.5f64..3.0, b2 in -1.5f64..3.0,
                 x in -0.8f64..0.8, y in -0.8f64..0.8) {
        let c = a + dc;
        let f1 = appell_f1(a, b1, b2, c, x, y, &p()).unwrap();
        let fd = lauricella_fd(a, &[b1, b2], c, &[x, y], &p()).unwrap();
        prop_assert!((f1 - fd).abs() <= 1e-10 * f1.abs(), "{f1} vs {fd}");
    }

    #[test]
    fn evaluation_is_pure(a in 0.2f64..3.0, x in -0.8f64..0.8) {
        let once = appell_f1(a, 0.5, 1.5, a + 1.0, x, -x / 2.0, &p()).unwrap();
        prop_assert_eq!(once, appell_f1(a, 0.5, 1.5, a + 1.0, x, -x / 2.0, &p()).unwrap());
    }
}
