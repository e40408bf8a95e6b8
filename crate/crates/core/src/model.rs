//! The proportional-hazard transform family, parameters, samples and
//! sufficient statistics.

use std::io::Read;
use std::path::Path;

use rand::distributions::Open01;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which member of the family `F(s) = 1 - exp(-θ T(s))` is in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    /// `T(s) = -ln(1 - s^σ)` on `(0, 1)`.
    Kumaraswamy,
    /// `T(s) = s` on `(0, ∞)`.
    Exponential,
    /// `T(s) = s^c` on `(0, ∞)`, with `θ = λ^(-c)` for scale `λ`.
    Weibull,
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kumaraswamy" => Ok(Self::Kumaraswamy),
            "exponential" => Ok(Self::Exponential),
            "weibull" => Ok(Self::Weibull),
            other => Err(Error::Input(format!("unknown family '{other}'"))),
        }
    }
}

/// A transform `T` together with its (known) shape parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformFamily {
    pub kind: FamilyKind,
    /// `σ` for Kumaraswamy, the shape `c` for Weibull, `1` for Exponential.
    pub sigma: f64,
}

impl TransformFamily {
    pub fn new(kind: FamilyKind, sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::Input(format!("shape parameter must be positive, got {sigma}")));
        }
        if kind == FamilyKind::Exponential && sigma != 1.0 {
            return Err(Error::Input("the exponential family has no shape parameter".into()));
        }
        Ok(Self { kind, sigma })
    }

    pub fn kumaraswamy(sigma: f64) -> Result<Self> {
        Self::new(FamilyKind::Kumaraswamy, sigma)
    }

    pub fn exponential() -> Self {
        Self {
            kind: FamilyKind::Exponential,
            sigma: 1.0,
        }
    }

    pub fn weibull(shape: f64) -> Result<Self> {
        Self::new(FamilyKind::Weibull, shape)
    }

    /// Open support interval.
    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            FamilyKind::Kumaraswamy => (0.0, 1.0),
            _ => (0.0, f64::INFINITY),
        }
    }

    pub fn in_support(&self, s: f64) -> bool {
        let (lo, hi) = self.support();
        s > lo && s < hi
    }

    /// `T(s)`; callers must check the support first.
    pub fn transform(&self, s: f64) -> f64 {
        match self.kind {
            FamilyKind::Kumaraswamy => -(-s.powf(self.sigma)).ln_1p(),
            FamilyKind::Exponential => s,
            FamilyKind::Weibull => s.powf(self.sigma),
        }
    }

    /// `T⁻¹(t)` for `t ≥ 0`.
    pub fn inverse_transform(&self, t: f64) -> f64 {
        match self.kind {
            FamilyKind::Kumaraswamy => (-(-t).exp_m1()).powf(1.0 / self.sigma),
            FamilyKind::Exponential => t,
            FamilyKind::Weibull => t.powf(1.0 / self.sigma),
        }
    }

    /// `F(s; θ) = 1 - exp(-θ T(s))`, clamped to `[0, 1]` outside the support.
    pub fn cdf(&self, theta: f64, s: f64) -> Result<f64> {
        check_theta(theta)?;
        if s.is_nan() {
            return Err(Error::domain("cdf evaluated at NaN"));
        }
        let (lo, hi) = self.support();
        if s <= lo {
            return Ok(0.0);
        }
        if s >= hi {
            return Ok(1.0);
        }
        Ok(-(-theta * self.transform(s)).exp_m1())
    }

    /// Density `θ T'(s) exp(-θ T(s))`.
    pub fn pdf(&self, theta: f64, s: f64) -> Result<f64> {
        check_theta(theta)?;
        if !self.in_support(s) {
            return Ok(0.0);
        }
        let c = self.sigma;
        let dt = match self.kind {
            FamilyKind::Kumaraswamy => c * s.powf(c - 1.0) / (1.0 - s.powf(c)),
            FamilyKind::Exponential => 1.0,
            FamilyKind::Weibull => c * s.powf(c - 1.0),
        };
        Ok(theta * dt * (-theta * self.transform(s)).exp())
    }

    /// `n` draws by inversion, `s = T⁻¹(-ln(U)/θ)` with `U ~ Uniform(0, 1)`.
    ///
    /// Kumaraswamy draws with very small `θ` round to exactly `1.0` in double
    /// precision and are then rejected by [`suff_stats`].
    pub fn sample<R: Rng + ?Sized>(&self, theta: f64, n: usize, rng: &mut R) -> Result<Vec<f64>> {
        check_theta(theta)?;
        Ok((0..n)
            .map(|_| {
                let u: f64 = rng.sample(Open01);
                self.inverse_transform(-u.ln() / theta)
            })
            .collect())
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && theta > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("θ must be positive and finite, got {theta}")))
    }
}

/// The rate parameters `(θ₁, θ₂, θ₃)` of `X`, `Y`, `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamTriple([f64; 3]);

impl ParamTriple {
    pub fn new(theta1: f64, theta2: f64, theta3: f64) -> Result<Self> {
        for t in [theta1, theta2, theta3] {
            check_theta(t)?;
        }
        Ok(Self([theta1, theta2, theta3]))
    }

    pub fn from_array(t: [f64; 3]) -> Result<Self> {
        Self::new(t[0], t[1], t[2])
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }
}

/// `P = Pr(X < Y < Z) = θ₁θ₂ / ((θ₂+θ₃)(θ₁+θ₂+θ₃))`.
pub fn reliability_p(theta: &ParamTriple) -> f64 {
    let [t1, t2, t3] = theta.0;
    t1 * t2 / ((t2 + t3) * (t1 + t2 + t3))
}

/// `Pr(X₁ < X₂ < ⋯ < Xₙ) = Π_{i<n} θᵢ / (θᵢ + ⋯ + θₙ)`.
pub fn reliability_pn(theta: &[f64]) -> Result<f64> {
    if theta.len() < 2 {
        return Err(Error::domain("need at least two components"));
    }
    for &t in theta {
        check_theta(t)?;
    }
    // Suffix sums accumulated from the right; subtracting from the total
    // would cancel catastrophically when a large θ precedes small ones.
    let mut tail = theta[theta.len() - 1];
    let mut p = 1.0;
    for &t in theta[..theta.len() - 1].iter().rev() {
        tail += t;
        p *= t / tail;
    }
    Ok(p)
}

/// Independent samples from `X`, `Y` and `Z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
}

impl SampleSet {
    pub fn new(x: Vec<f64>, y: Vec<f64>, z: Vec<f64>) -> Result<Self> {
        for (name, v) in [("x", &x), ("y", &y), ("z", &z)] {
            if v.is_empty() {
                return Err(Error::Input(format!("sample '{name}' is empty")));
            }
            if let Some(bad) = v.iter().find(|s| !s.is_finite()) {
                return Err(Error::Input(format!("sample '{name}' contains {bad}")));
            }
        }
        Ok(Self { x, y, z })
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.x.len(), self.y.len(), self.z.len()]
    }

    /// Draws `n = sizes` observations from the family with rates `theta`.
    pub fn simulate<R: Rng + ?Sized>(
        family: &TransformFamily,
        theta: &ParamTriple,
        sizes: [usize; 3],
        rng: &mut R,
    ) -> Result<Self> {
        let x = family.sample(theta.get(0), sizes[0], rng)?;
        let y = family.sample(theta.get(1), sizes[1], rng)?;
        let z = family.sample(theta.get(2), sizes[2], rng)?;
        Self::new(x, y, z)
    }

    /// Reads a CSV with header `x,y,z`; columns may have different lengths,
    /// shorter ones being padded with blank cells.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::Input(format!("cannot read CSV header: {e}")))?
            .clone();
        let col = |name: &str| {
            headers
                .iter()
                .position(|h| h.eq_ignore_ascii_case(name))
                .ok_or_else(|| Error::Input(format!("CSV header lacks column '{name}'")))
        };
        let idx = [col("x")?, col("y")?, col("z")?];
        let mut cols: [Vec<f64>; 3] = Default::default();
        let mut ended = [false; 3];
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::Input(format!("CSV row {}: {e}", row + 2)))?;
            for k in 0..3 {
                let cell = rec.get(idx[k]).unwrap_or("");
                if cell.is_empty() {
                    ended[k] = true;
                    continue;
                }
                if ended[k] {
                    return Err(Error::Input(format!(
                        "CSV row {}: column '{}' resumes after a blank cell",
                        row + 2,
                        ["x", "y", "z"][k]
                    )));
                }
                let v: f64 = cell.parse().map_err(|_| {
                    Error::Input(format!("CSV row {}: cannot parse '{cell}'", row + 2))
                })?;
                cols[k].push(v);
            }
        }
        let [x, y, z] = cols;
        Self::new(x, y, z)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let f = std::fs::File::open(path)
            .map_err(|e| Error::Input(format!("cannot open {}: {e}", path.display())))?;
        Self::from_csv_reader(f)
    }
}

/// `(u, v, w)` = sums of `T` over each sample, with the sample sizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SufficientStats {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

impl SufficientStats {
    pub fn new(n: [usize; 3], sums: [f64; 3]) -> Result<Self> {
        if n.contains(&0) {
            return Err(Error::Input("sample sizes must be positive".into()));
        }
        if sums.iter().any(|&s| !(s.is_finite() && s > 0.0)) {
            return Err(Error::domain(format!("sufficient statistics must be positive, got {sums:?}")));
        }
        Ok(Self {
            u: sums[0],
            v: sums[1],
            w: sums[2],
            n1: n[0],
            n2: n[1],
            n3: n[2],
        })
    }

    pub fn sums(&self) -> [f64; 3] {
        [self.u, self.v, self.w]
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.n1, self.n2, self.n3]
    }
}

/// Sufficient statistics of `samples` under `family`.
pub fn suff_stats(samples: &SampleSet, family: &TransformFamily) -> Result<SufficientStats> {
    let mut sums = [0.0; 3];
    for (k, (name, v)) in [("x", &samples.x), ("y", &samples.y), ("z", &samples.z)]
        .into_iter()
        .enumerate()
    {
        if let Some(bad) = v.iter().find(|&&s| !family.in_support(s)) {
            return Err(Error::Input(format!(
                "sample '{name}' value {bad} lies outside the support {:?}",
                family.support()
            )));
        }
        sums[k] = v.iter().map(|&s| family.transform(s)).sum();
    }
    SufficientStats::new(samples.sizes(), sums)
}
