//! Adaptive Gauss–Kronrod quadrature and log-scaled Euler-kernel integrals.

// The Kronrod tables below carry more digits than an f64 holds.
#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_208_188_304,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub evaluations: usize,
}

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    resabs: f64,
}

fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resg = 0.0;
    let mut resk = WGK[10] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
    }
    if !resk.is_finite() {
        return Err(Error::domain(format!(
            "integrand is not finite on [{a}, {b}]"
        )));
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Segment {
        a,
        b,
        value,
        err,
        resabs,
    })
}

/// Globally adaptive 21-point Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// Stops once the estimated error is below `max(abs_tol, rel_tol * |I|)`
/// (or the rounding level of `∫|f|`, whichever is larger).
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integration limits must be finite"));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_err: 0.0,
            evaluations: 0,
        });
    }
    let mut segs = vec![gk21(&mut f, a, b)?];
    let mut evaluations = 21;
    loop {
        let total: f64 = segs.iter().map(|s| s.value).sum();
        let err: f64 = segs.iter().map(|s| s.err).sum();
        // Never ask for more than the rounding level of the summed |f|.
        let floor = 100.0 * f64::EPSILON * segs.iter().map(|s| s.resabs).sum::<f64>();
        if err <= abs_tol.max(rel_tol * total.abs()).max(floor) {
            return Ok(QuadResult {
                value: total,
                abs_err: err,
                evaluations,
            });
        }
        // Split the worst segment that is still wide enough to split.
        let worst = segs
            .iter()
            .enumerate()
            .filter(|(_, s)| {
                let mid = 0.5 * (s.a + s.b);
                mid > s.a && mid < s.b && (s.b - s.a).abs() > 1e3 * f64::EPSILON * s.a.abs().max(s.b.abs()).max(f64::MIN_POSITIVE)
            })
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i);
        let Some(i) = worst else {
            // Nothing left to refine: accept at roundoff level.
            return Ok(QuadResult {
                value: total,
                abs_err: err,
                evaluations,
            });
        };
        if segs.len() >= max_subdivisions {
            return Err(Error::no_convergence(
                format!("adaptive quadrature on [{a}, {b}] (error estimate {err:.3e})"),
                segs.len(),
            ));
        }
        let s = segs.swap_remove(i);
        let mid = 0.5 * (s.a + s.b);
        segs.push(gk21(&mut f, s.a, mid)?);
        segs.push(gk21(&mut f, mid, s.b)?);
        evaluations += 42;
    }
}

/// `a * ln(t)`, with the convention `0 * ln(0) = 0`.
#[inline]
pub(crate) fn xlny(a: f64, t: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * t.ln()
    }
}

/// `a * ln(1 - t)`, with the convention `0 * ln(0) = 0`.
#[inline]
pub(crate) fn xln1m(a: f64, t: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * (-t).ln_1p()
    }
}

const SPLIT: f64 = 0.5;

/// `ln ∫₀¹ t^(α-1) (1-t)^(β-1) exp(ln_g(t)) dt` for `α, β > 0`.
///
/// The interval is split at 1/2. On each half an integrable endpoint
/// singularity (exponent below zero) is removed by the substitution
/// `t = ½ y^(1/α)` (resp. `1 - t = ½ y^(1/β)`), and the integrand is
/// rescaled by its maximum over a grid that is geometric near every
/// endpoint, so that large or tiny magnitudes never over/underflow.
pub fn ln_beta_kernel_integral<G: Fn(f64) -> f64>(
    alpha: f64,
    beta: f64,
    ln_g: G,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::domain(format!(
            "Euler kernel exponents must be positive (got {alpha}, {beta})"
        )));
    }
    let sub_left = alpha < 1.0;
    let sub_right = beta < 1.0;
    let ln_half = SPLIT.ln();

    // Left piece, variable y in [0, 1].
    let left = |y: f64| -> f64 {
        if sub_left {
            let t = SPLIT * y.powf(1.0 / alpha);
            alpha * ln_half - alpha.ln() + xln1m(beta - 1.0, t) + ln_g(t)
        } else {
            let t = SPLIT * y;
            ln_half + xlny(alpha - 1.0, t) + xln1m(beta - 1.0, t) + ln_g(t)
        }
    };
    // Right piece, variable y in [0, 1], with 1 - t = ½ y^(1/β) (or ½ y).
    let right = |y: f64| -> f64 {
        if sub_right {
            let s = SPLIT * y.powf(1.0 / beta);
            let t = 1.0 - s;
            beta * ln_half - beta.ln() + xlny(alpha - 1.0, t) + ln_g(t)
        } else {
            let s = SPLIT * y;
            let t = 1.0 - s;
            ln_half + xlny(alpha - 1.0, t) + xlny(beta - 1.0, s) + ln_g(t)
        }
    };

    let mut shift = f64::NEG_INFINITY;
    let mut probe = |y: f64| {
        for v in [left(y), right(y)] {
            if v.is_finite() && v > shift {
                shift = v;
            }
        }
    };
    for k in 1..=64 {
        let y = 0.5f64.powi(k);
        probe(y);
        probe(1.0 - y);
    }
    for k in 1..128 {
        probe(k as f64 / 128.0);
    }
    if !shift.is_finite() {
        return Err(Error::domain("Euler integrand vanishes or is not finite"));
    }

    let mut total = 0.0;
    let mut err = 0.0;
    for piece in [&left as &dyn Fn(f64) -> f64, &right] {
        let r = integrate(
            |y| (piece(y) - shift).exp(),
            0.0,
            1.0,
            0.5 * abs_tol,
            rel_tol,
            4000,
        )?;
        total += r.value;
        err += r.abs_err;
    }
    if !(total > 0.0) {
        return Err(Error::domain("Euler integral underflowed"));
    }
    let _ = err;
    Ok(shift + total.ln())
}
