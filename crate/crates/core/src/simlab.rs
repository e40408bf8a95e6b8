//! Monte Carlo harness: MSE/bias of the point estimators and the length and
//! coverage of the asymptotic and HPD intervals, cell by cell.

use std::io::Write;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bayes::{
    bayes_p_decomposed, gibbs_chain_with_rng, hpd_interval, lindley_p, posterior_params,
    ChainConfig, PriorSpec,
};
use crate::classical::{asymptotic_ci, check_gamma, mle_p};
use crate::error::{Error, Result};
use crate::model::{reliability_p, suff_stats, ParamTriple, SampleSet, TransformFamily};
use crate::specfun::EvalPolicy;
use crate::umvue::umvue_p_decomposed;

/// The six point estimators of the study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorTag {
    Umvue,
    Mle,
    Bayes,
    JeffreysBayes,
    Lindley,
    Mcmc,
}

impl EstimatorTag {
    pub const ALL: [EstimatorTag; 6] = [
        Self::Umvue,
        Self::Mle,
        Self::Bayes,
        Self::JeffreysBayes,
        Self::Lindley,
        Self::Mcmc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Umvue => "umvue",
            Self::Mle => "mle",
            Self::Bayes => "bayes",
            Self::JeffreysBayes => "jeffreys_bayes",
            Self::Lindley => "lindley",
            Self::Mcmc => "mcmc",
        }
    }
}

impl std::str::FromStr for EstimatorTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown estimator '{s}'")))
    }
}

/// One cell of the simulation grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimCellConfig {
    pub theta: ParamTriple,
    pub sizes: [usize; 3],
    pub replications: usize,
    /// Prior of the conjugate Bayes and MCMC estimators.
    pub prior: PriorSpec,
    /// Prior of the Lindley approximation.
    pub lindley_prior: PriorSpec,
    /// Chain settings; the seed field is ignored, each replication derives its own.
    pub chain: ChainConfig,
    pub gamma: f64,
    pub seed: u64,
    pub family: TransformFamily,
    pub estimators: Vec<EstimatorTag>,
}

impl SimCellConfig {
    /// All six estimators and both intervals with the study's settings:
    /// 1000 replications, informative prior, 5000/1000/5 chains, 95% level.
    pub fn study(theta: ParamTriple, n: usize) -> Self {
        Self {
            theta,
            sizes: [n; 3],
            replications: 1000,
            prior: PriorSpec::study_default(),
            lindley_prior: PriorSpec::jeffreys(),
            chain: ChainConfig::default(),
            gamma: 0.05,
            seed: 20_240_101,
            family: TransformFamily::exponential(),
            estimators: EstimatorTag::ALL.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::Input("replications must be at least 1".into()));
        }
        if self.estimators.is_empty() {
            return Err(Error::Input("no estimators requested".into()));
        }
        if self.sizes.iter().any(|&n| n < 2) {
            return Err(Error::Input("every sample size must be at least 2".into()));
        }
        check_gamma(self.gamma)?;
        self.chain.validate()
    }

    fn wants(&self, t: EstimatorTag) -> bool {
        self.estimators.contains(&t)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorStats {
    pub tag: EstimatorTag,
    pub mean: f64,
    pub bias: f64,
    pub mse: f64,
    /// Monte Carlo standard errors of `bias` and `mse`.
    pub bias_se: f64,
    pub mse_se: f64,
    pub count: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalStats {
    pub avg_length: f64,
    pub coverage: f64,
    pub count: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimCellResult {
    pub config: SimCellConfig,
    pub true_p: f64,
    pub estimators: Vec<EstimatorStats>,
    /// Asymptotic interval (requires the MLE).
    pub ac: Option<IntervalStats>,
    /// HPD credible interval (requires the chain).
    pub cr: Option<IntervalStats>,
    /// Replications whose UMVUE fell outside `[0, 1]`.
    pub out_of_range_count: usize,
    /// Replications whose data could not be reduced to sufficient statistics.
    pub data_failures: usize,
}

impl SimCellResult {
    pub fn get(&self, tag: EstimatorTag) -> Option<&EstimatorStats> {
        self.estimators.iter().find(|e| e.tag == tag)
    }
}

#[derive(Default)]
struct Replication {
    estimates: [Option<Result<f64>>; 6],
    ac: Option<Result<(f64, bool)>>,
    cr: Option<Result<(f64, bool)>>,
    data_failed: bool,
}

fn slot(t: EstimatorTag) -> usize {
    EstimatorTag::ALL.iter().position(|&x| x == t).unwrap()
}

/// Independent RNG stream for replication `rep` of a cell seeded with `seed`.
pub fn replication_rng(seed: u64, rep: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep);
    rng
}

fn run_replication(cfg: &SimCellConfig, true_p: f64, rep: usize) -> Replication {
    let mut out = Replication::default();
    let policy = EvalPolicy::default();
    let mut rng = replication_rng(cfg.seed, rep as u64);
    let stats = SampleSet::simulate(&cfg.family, &cfg.theta, cfg.sizes, &mut rng)
        .and_then(|s| suff_stats(&s, &cfg.family));
    let stats = match stats {
        Ok(s) => s,
        Err(_) => {
            out.data_failed = true;
            return out;
        }
    };
    let mle = mle_p(&stats);
    if cfg.wants(EstimatorTag::Umvue) {
        out.estimates[slot(EstimatorTag::Umvue)] = Some(umvue_p_decomposed(&stats));
    }
    if cfg.wants(EstimatorTag::Mle) {
        out.estimates[slot(EstimatorTag::Mle)] = Some(mle.clone().map(|m| m.p_hat));
        out.ac = Some(
            asymptotic_ci(&stats, cfg.gamma).map(|ci| (ci.length(), ci.contains(true_p))),
        );
    }
    if cfg.wants(EstimatorTag::Bayes) {
        out.estimates[slot(EstimatorTag::Bayes)] = Some(
            posterior_params(&stats, &cfg.prior).and_then(|p| bayes_p_decomposed(&p, &policy)),
        );
    }
    if cfg.wants(EstimatorTag::JeffreysBayes) {
        out.estimates[slot(EstimatorTag::JeffreysBayes)] = Some(
            posterior_params(&stats, &PriorSpec::jeffreys())
                .and_then(|p| bayes_p_decomposed(&p, &policy)),
        );
    }
    if cfg.wants(EstimatorTag::Lindley) {
        out.estimates[slot(EstimatorTag::Lindley)] =
            Some(mle.and_then(|m| lindley_p(&m.theta_hat, stats.sizes(), &cfg.lindley_prior)));
    }
    if cfg.wants(EstimatorTag::Mcmc) {
        let chain = ChainConfig {
            seed: rng.next_u64(),
            ..cfg.chain
        };
        let draws = posterior_params(&stats, &cfg.prior)
            .and_then(|p| gibbs_chain_with_rng(&p, &chain, &mut rng));
        match draws {
            Ok(d) => {
                let mean = d.iter().sum::<f64>() / d.len() as f64;
                out.estimates[slot(EstimatorTag::Mcmc)] = Some(Ok(mean));
                out.cr = Some(
                    hpd_interval(&d, cfg.gamma).map(|h| (h.length(), h.contains(true_p))),
                );
            }
            Err(e) => {
                out.estimates[slot(EstimatorTag::Mcmc)] = Some(Err(e.clone()));
                out.cr = Some(Err(e));
            }
        }
    }
    out
}

fn summarize(tag: EstimatorTag, values: &[f64], failures: usize, true_p: f64) -> EstimatorStats {
    let n = values.len() as f64;
    let errs: Vec<f64> = values.iter().map(|v| v - true_p).collect();
    let mean = values.iter().sum::<f64>() / n;
    let bias = errs.iter().sum::<f64>() / n;
    let mse = errs.iter().map(|e| e * e).sum::<f64>() / n;
    let (bias_se, mse_se) = if values.len() > 1 {
        let vb = errs.iter().map(|e| (e - bias).powi(2)).sum::<f64>() / (n - 1.0);
        let vm = errs.iter().map(|e| (e * e - mse).powi(2)).sum::<f64>() / (n - 1.0);
        ((vb / n).sqrt(), (vm / n).sqrt())
    } else {
        (f64::NAN, f64::NAN)
    };
    EstimatorStats {
        tag,
        mean,
        bias,
        mse,
        bias_se,
        mse_se,
        count: values.len(),
        failures,
    }
}

fn interval_stats(items: &[&Option<Result<(f64, bool)>>]) -> Option<IntervalStats> {
    let mut len = 0.0;
    let mut hit = 0usize;
    let mut count = 0usize;
    let mut failures = 0usize;
    let mut any = false;
    for it in items {
        match it {
            Some(Ok((l, c))) => {
                any = true;
                len += l;
                hit += *c as usize;
                count += 1;
            }
            Some(Err(_)) => {
                any = true;
                failures += 1;
            }
            None => {}
        }
    }
    any.then(|| IntervalStats {
        avg_length: if count > 0 { len / count as f64 } else { f64::NAN },
        coverage: if count > 0 { hit as f64 / count as f64 } else { f64::NAN },
        count,
        failures,
    })
}

/// Runs every replication of a cell (in parallel) and aggregates in
/// replication order, so the result depends only on the configuration.
pub fn run_cell(cfg: &SimCellConfig) -> Result<SimCellResult> {
    cfg.validate()?;
    let true_p = reliability_p(&cfg.theta);
    let reps: Vec<Replication> = (0..cfg.replications)
        .into_par_iter()
        .map(|r| run_replication(cfg, true_p, r))
        .collect();
    let data_failures = reps.iter().filter(|r| r.data_failed).count();
    let mut estimators = Vec::new();
    let mut out_of_range = 0;
    for tag in EstimatorTag::ALL {
        if !cfg.wants(tag) {
            continue;
        }
        let mut vals = Vec::with_capacity(reps.len());
        let mut failures = data_failures;
        for r in &reps {
            match &r.estimates[slot(tag)] {
                Some(Ok(v)) if v.is_finite() => vals.push(*v),
                Some(_) => failures += 1,
                None => {}
            }
        }
        if tag == EstimatorTag::Umvue {
            out_of_range = vals.iter().filter(|v| !(0.0..=1.0).contains(*v)).count();
        }
        if vals.is_empty() {
            return Err(Error::no_convergence(
                format!("every replication of estimator '{}' failed", tag.name()),
                cfg.replications,
            ));
        }
        estimators.push(summarize(tag, &vals, failures, true_p));
    }
    let ac = interval_stats(&reps.iter().map(|r| &r.ac).collect::<Vec<_>>());
    let cr = interval_stats(&reps.iter().map(|r| &r.cr).collect::<Vec<_>>());
    Ok(SimCellResult {
        config: cfg.clone(),
        true_p,
        estimators,
        ac,
        cr,
        out_of_range_count: out_of_range,
        data_failures,
    })
}

/// Runs cells in input order on a pool of `workers` threads. Seeding is per
/// replication, so the worker count never changes any number.
pub fn run_grid(configs: &[SimCellConfig], workers: usize) -> Result<Vec<SimCellResult>> {
    if configs.is_empty() {
        return Err(Error::Input("empty simulation grid".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Input(format!("cannot start worker pool: {e}")))?;
    pool.install(|| configs.iter().map(run_cell).collect())
}

/// Column order of [`write_csv`].
pub fn csv_header() -> Vec<String> {
    let mut h: Vec<String> = [
        "theta1", "theta2", "theta3", "n1", "n2", "n3", "replications", "seed", "family", "sigma",
        "true_p",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for t in EstimatorTag::ALL {
        for f in ["mean", "mse", "bias", "failures"] {
            h.push(format!("{}_{f}", t.name()));
        }
    }
    for i in ["ac", "cr"] {
        for f in ["avg_length", "coverage"] {
            h.push(format!("{i}_{f}"));
        }
    }
    h.push("umvue_out_of_range".into());
    h
}

/// One row per cell; estimators that were not requested are left blank.
pub fn write_csv<W: Write>(results: &[SimCellResult], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Input(format!("cannot write CSV: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header()).map_err(io)?;
    for r in results {
        let c = &r.config;
        let th = c.theta.as_array();
        let mut row = vec![
            th[0].to_string(),
            th[1].to_string(),
            th[2].to_string(),
            c.sizes[0].to_string(),
            c.sizes[1].to_string(),
            c.sizes[2].to_string(),
            c.replications.to_string(),
            c.seed.to_string(),
            format!("{:?}", c.family.kind).to_lowercase(),
            c.family.sigma.to_string(),
            r.true_p.to_string(),
        ];
        for t in EstimatorTag::ALL {
            match r.get(t) {
                Some(e) => row.extend([
                    e.mean.to_string(),
                    e.mse.to_string(),
                    e.bias.to_string(),
                    e.failures.to_string(),
                ]),
                None => row.extend(std::iter::repeat_n(String::new(), 4)),
            }
        }
        for i in [&r.ac, &r.cr] {
            match i {
                Some(s) => row.extend([s.avg_length.to_string(), s.coverage.to_string()]),
                None => row.extend([String::new(), String::new()]),
            }
        }
        row.push(r.out_of_range_count.to_string());
        w.write_record(&row).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Input(format!("cannot write CSV: {e}")))?;
    Ok(())
}

/// JSON mirror of the CSV carrying the full configuration of every cell.
pub fn to_json(results: &[SimCellResult]) -> Result<String> {
    serde_json::to_string_pretty(results).map_err(|e| Error::Input(e.to_string()))
}

/// The reference parameter triples of the simulation study, each with a
/// distinct `P` between 0.50 and 0.91.
pub fn study_thetas() -> Vec<ParamTriple> {
    [
        [0.9, 0.09, 0.00005],
        [0.3, 0.09, 0.0005],
        [0.2, 0.09, 0.00005],
        [0.09, 0.09, 0.00005],
    ]
    .into_iter()
    .map(|t| ParamTriple::from_array(t).expect("valid"))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(reps: usize) -> SimCellConfig {
        let mut c = SimCellConfig::study(ParamTriple::new(0.9, 0.09, 0.00005).unwrap(), 10);
        c.replications = reps;
        c.chain = ChainConfig {
            iterations: 600,
            burn_in: 100,
            thin: 5,
            seed: 0,
        };
        c
    }

    #[test]
    fn single_replication_definitions() {
        let r = run_cell(&small(1)).unwrap();
        for e in &r.estimators {
            assert!((e.bias - (e.mean - r.true_p)).abs() < 1e-15);
            assert!((e.mse - e.bias * e.bias).abs() < 1e-15);
        }
    }

    #[test]
    fn deterministic_and_worker_independent() {
        let cfgs = vec![small(20), small(15)];
        let a = run_grid(&cfgs, 1).unwrap();
        let b = run_grid(&cfgs, 4).unwrap();
        assert_eq!(a, b);
        let mut ca = Vec::new();
        let mut cb = Vec::new();
        write_csv(&a, &mut ca).unwrap();
        write_csv(&b, &mut cb).unwrap();
        assert_eq!(ca, cb);
    }

    #[test]
    fn preconditions() {
        let mut c = small(5);
        c.estimators.clear();
        assert!(run_cell(&c).is_err());
        assert!(run_grid(&[], 2).is_err());
        let mut c = small(0);
        c.estimators = vec![EstimatorTag::Mle];
        assert!(run_cell(&c).is_err());
    }
}
