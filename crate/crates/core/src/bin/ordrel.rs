//! Command-line front end. All computation lives in the library; this file
//! only parses flags, dispatches, and renders.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ordrel::app::{self, sig, EstimateOptions, EstimateReport, FitReport, RunManifest};
use ordrel::bayes::{ChainConfig, PriorSpec};
use ordrel::model::{reliability_p, reliability_pn, FamilyKind, ParamTriple, SampleSet, TransformFamily};
use ordrel::simlab::{self, EstimatorTag, SimCellConfig, SimCellResult};
use ordrel::specfun::{self, EvalPolicy};
use ordrel::{Error, Result};

#[derive(Parser)]
#[command(name = "ordrel", version, about = "Estimate Pr(X<Y<Z) for proportional-hazard families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one special function (debugging aid).
    EvalFn(EvalFnArgs),
    /// All point and interval estimates of P for three samples.
    Estimate(EstimateArgs),
    /// Monte Carlo study of the estimators.
    Simulate(SimulateArgs),
    /// Common-shape Weibull fit with K-S checks.
    Fit(FitArgs),
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write to this file (plus `<file>.manifest.json`) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Significant digits for printed floats.
    #[arg(long, default_value_t = 6)]
    digits: usize,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Function {
    /// args: λ;k
    Pochhammer,
    /// args: a;b;c;x
    #[value(name = "2f1")]
    Gauss2f1,
    /// args: a1,a2,a3;b1,b2;x
    #[value(name = "3f2")]
    Hyper3f2,
    /// args: a1,..;b1,..;x
    Pfq,
    /// args: a;b1,b2;c;x,y
    F1,
    /// args: a;b1,..,bn;c;x1,..,xn
    Fd,
    /// args: θ1,θ2,θ3
    P,
    /// args: θ1,..,θn
    Pn,
}

#[derive(Args, Serialize)]
struct EvalFnArgs {
    #[arg(value_enum)]
    function: Function,
    /// Parameter groups separated by ';', values within a group by ','.
    #[arg(long, allow_hyphen_values = true)]
    args: String,
    #[arg(long, default_value_t = 1e-12)]
    rel_tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_terms: usize,
    #[arg(long, default_value_t = 1e-12)]
    quad_abs_tol: f64,
    #[command(flatten)]
    #[serde(skip)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct FamilyArgs {
    #[arg(long, value_parser = parse_family)]
    family: Option<FamilyKind>,
    /// Known shape (Kumaraswamy σ or Weibull c); fitted from the data when omitted.
    #[arg(long)]
    sigma: Option<f64>,
}

#[derive(Args, Serialize)]
struct PriorArgs {
    /// Gamma prior rates a1,a2,a3.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    prior_a: Option<Vec<f64>>,
    /// Gamma prior shapes b1,b2,b3.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    prior_b: Option<Vec<f64>>,
    /// Non-informative prior (all hyperparameters zero).
    #[arg(long, conflicts_with_all = ["prior_a", "prior_b"])]
    jeffreys: bool,
}

#[derive(Args, Serialize)]
struct ChainArgs {
    #[arg(long, default_value_t = 5000)]
    chain_iters: usize,
    #[arg(long, default_value_t = 1000)]
    burn_in: usize,
    #[arg(long, default_value_t = 5)]
    thin: usize,
}

#[derive(Args, Serialize)]
struct EstimateArgs {
    /// CSV with header x,y,z; defaults to the bundled fatigue data.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
    #[command(flatten)]
    prior: PriorArgs,
    #[command(flatten)]
    chain: ChainArgs,
    #[arg(long, default_value_t = 0.05)]
    gamma: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct SimulateArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.9,0.09,0.00005")]
    theta: Vec<f64>,
    /// Equal sample sizes; repeat or comma-separate for several cells.
    #[arg(long, value_delimiter = ',', default_value = "10")]
    n: Vec<usize>,
    /// Unequal sizes n1,n2,n3 (overrides --n).
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Run every study parameter triple instead of --theta.
    #[arg(long)]
    study: bool,
    #[arg(long, default_value_t = 1000)]
    reps: usize,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, value_delimiter = ',', value_parser = parse_estimator)]
    estimators: Option<Vec<EstimatorTag>>,
    #[command(flatten)]
    family: FamilyArgs,
    #[command(flatten)]
    prior: PriorArgs,
    #[command(flatten)]
    chain: ChainArgs,
    #[arg(long, default_value_t = 0.05)]
    gamma: f64,
    #[arg(long, default_value_t = 20_240_101)]
    seed: u64,
    #[command(flatten)]
    #[serde(skip)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct FitArgs {
    /// CSV with header x,y,z; defaults to the bundled fatigue data.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Pin the common shape instead of fitting it.
    #[arg(long)]
    shape: Option<f64>,
    #[command(flatten)]
    #[serde(skip)]
    output: OutputArgs,
}

fn parse_family(s: &str) -> std::result::Result<FamilyKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_estimator(s: &str) -> std::result::Result<EstimatorTag, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn input_err(msg: impl std::fmt::Display) -> Error {
    Error::Input(msg.to_string())
}

fn triple(v: &[f64], what: &str) -> Result<[f64; 3]> {
    v.try_into()
        .map_err(|_| input_err(format!("{what} needs exactly three values, got {}", v.len())))
}

impl PriorArgs {
    fn resolve(&self, default: PriorSpec) -> Result<PriorSpec> {
        if self.jeffreys {
            return Ok(PriorSpec::jeffreys());
        }
        match (&self.prior_a, &self.prior_b) {
            (None, None) => Ok(default),
            (Some(a), Some(b)) => PriorSpec::new(triple(a, "--prior-a")?, triple(b, "--prior-b")?),
            _ => Err(input_err("--prior-a and --prior-b must be given together")),
        }
    }
}

impl ChainArgs {
    fn config(&self, seed: u64) -> Result<ChainConfig> {
        let c = ChainConfig {
            iterations: self.chain_iters,
            burn_in: self.burn_in,
            thin: self.thin,
            seed,
        };
        c.validate()?;
        Ok(c)
    }
}

fn load_samples(input: &Option<PathBuf>) -> Result<SampleSet> {
    match input {
        Some(p) => SampleSet::from_csv_path(p),
        None => Ok(app::datasets::fatigue()),
    }
}

/// Rendered output plus what goes into the manifest.
struct Rendered {
    body: String,
    config: serde_json::Value,
    seed: Option<u64>,
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(input_err)
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).unwrap_or(serde_json::Value::Null)
}

fn rows_to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(input_err)?;
    for r in rows {
        w.write_record(r).map_err(input_err)?;
    }
    String::from_utf8(w.into_inner().map_err(input_err)?).map_err(input_err)
}

fn rows_to_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&width)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

fn eval_fn(a: &EvalFnArgs) -> Result<Rendered> {
    let policy = EvalPolicy {
        rel_tol: a.rel_tol,
        max_terms: a.max_terms,
        quad_abs_tol: a.quad_abs_tol,
    };
    let groups: Vec<Vec<f64>> = a
        .args
        .split(';')
        .map(|g| {
            g.split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<f64>().map_err(|e| input_err(format!("'{s}': {e}"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    let shape: &[usize] = match a.function {
        Function::Pochhammer => &[1, 1],
        Function::Gauss2f1 => &[1, 1, 1, 1],
        Function::Hyper3f2 => &[3, 2, 1],
        Function::Pfq => &[0, 0, 1],
        Function::F1 => &[1, 2, 1, 2],
        Function::Fd => &[1, 0, 1, 0],
        Function::P => &[3],
        Function::Pn => &[0],
    };
    if groups.len() != shape.len()
        || groups.iter().zip(shape).any(|(g, &k)| k != 0 && g.len() != k)
    {
        return Err(input_err(format!(
            "expected {} ';'-separated groups of sizes {shape:?} (0 = any)",
            shape.len()
        )));
    }
    let s = |i: usize| groups[i][0];
    let value = match a.function {
        Function::Pochhammer => {
            let k = s(1);
            if k < 0.0 || k.fract() != 0.0 {
                return Err(input_err("k must be a non-negative integer"));
            }
            specfun::pochhammer(s(0), k as usize)
        }
        Function::Gauss2f1 => specfun::gauss_2f1(s(0), s(1), s(2), s(3), &policy)?,
        Function::Hyper3f2 => {
            let (p, q) = (&groups[0], &groups[1]);
            specfun::hyper_3f2([p[0], p[1], p[2]], [q[0], q[1]], s(2), &policy)?
        }
        Function::Pfq => specfun::generalized_pfq(&groups[0], &groups[1], s(2), &policy)?,
        Function::F1 => {
            let (b, x) = (&groups[1], &groups[3]);
            specfun::appell_f1(s(0), b[0], b[1], s(2), x[0], x[1], &policy)?
        }
        Function::Fd => {
            if groups[1].len() != groups[3].len() {
                return Err(input_err("fd needs as many b values as x values"));
            }
            specfun::lauricella_fd(s(0), &groups[1], s(2), &groups[3], &policy)?
        }
        Function::P => reliability_p(&ParamTriple::from_array(triple(&groups[0], "θ")?)?),
        Function::Pn => reliability_pn(&groups[0])?,
    };
    let body = match a.output.format {
        Format::Json => to_json(&serde_json::json!({ "function": a.function, "args": groups, "value": value }))? + "\n",
        Format::Csv => rows_to_csv(&["value"], &[vec![sig(value, a.output.digits)]])?,
        Format::Table => sig(value, a.output.digits) + "\n",
    };
    Ok(Rendered {
        body,
        config: to_value(&(a, policy)),
        seed: None,
    })
}

fn estimate_rows(r: &EstimateReport, d: usize) -> Vec<Vec<String>> {
    let f = |x: f64| sig(x, d);
    let mut rows = vec![
        vec!["umvue".into(), f(r.umvue)],
        vec!["mle".into(), f(r.mle)],
        vec!["bayes".into(), f(r.bayes)],
        vec!["jeffreys_bayes".into(), f(r.jeffreys_bayes)],
        vec!["lindley".into(), f(r.lindley)],
        vec!["mcmc".into(), f(r.mcmc.mean)],
        vec!["mcmc_std_err".into(), f(r.mcmc.mc_std_err)],
        vec!["ac_lower".into(), f(r.asymptotic_ci.lower)],
        vec!["ac_upper".into(), f(r.asymptotic_ci.upper)],
        vec!["hpd_lower".into(), f(r.hpd.lower)],
        vec!["hpd_upper".into(), f(r.hpd.upper)],
    ];
    if r.family.kind != FamilyKind::Exponential {
        rows.insert(0, vec!["shape".into(), f(r.family.sigma)]);
    }
    rows
}

fn run_estimate(a: &EstimateArgs) -> Result<Rendered> {
    let samples = load_samples(&a.input)?;
    let kind = a.family.family.unwrap_or(FamilyKind::Weibull);
    let family = app::resolve_family(kind, a.family.sigma, &samples)?;
    let opts = EstimateOptions {
        prior: a.prior.resolve(PriorSpec::jeffreys())?,
        gamma: a.gamma,
        chain: a.chain.config(a.seed)?,
        policy: EvalPolicy::default(),
    };
    let report = app::estimate(&samples, &family, &opts)?;
    let rows = estimate_rows(&report, a.output.digits);
    let body = match a.output.format {
        Format::Json => to_json(&report)? + "\n",
        Format::Csv => rows_to_csv(&["quantity", "value"], &rows)?,
        Format::Table => rows_to_table(&["quantity", "value"], &rows),
    };
    Ok(Rendered {
        body,
        config: to_value(&(a, &family, &opts)),
        seed: Some(a.seed),
    })
}

fn simulate_configs(a: &SimulateArgs) -> Result<Vec<SimCellConfig>> {
    let thetas = if a.study {
        simlab::study_thetas()
    } else {
        vec![ParamTriple::from_array(triple(&a.theta, "--theta")?)?]
    };
    let sizes: Vec<[usize; 3]> = match &a.sizes {
        Some(s) => vec![triple(&s.iter().map(|&n| n as f64).collect::<Vec<_>>(), "--sizes")?
            .map(|n| n as usize)],
        None => a.n.iter().map(|&n| [n; 3]).collect(),
    };
    let kind = a.family.family.unwrap_or(FamilyKind::Exponential);
    let family = match (kind, a.family.sigma) {
        (FamilyKind::Exponential, _) => TransformFamily::exponential(),
        (k, Some(s)) => TransformFamily::new(k, s)?,
        (_, None) => return Err(input_err("--sigma is required to simulate this family")),
    };
    let prior = a.prior.resolve(PriorSpec::study_default())?;
    let chain = a.chain.config(a.seed)?;
    let mut out = Vec::new();
    for &theta in &thetas {
        for &n in &sizes {
            let mut c = SimCellConfig::study(theta, n[0]);
            c.sizes = n;
            c.replications = a.reps;
            c.prior = prior;
            c.chain = chain;
            c.gamma = a.gamma;
            c.seed = a.seed;
            c.family = family;
            if let Some(e) = &a.estimators {
                c.estimators = e.clone();
            }
            c.validate()?;
            out.push(c);
        }
    }
    Ok(out)
}

fn simulate_table(results: &[SimCellResult], d: usize) -> String {
    let f = |x: f64| sig(x, d);
    let mut out = String::new();
    for r in results {
        let c = &r.config;
        out += &format!(
            "theta = {:?}  n = {:?}  P = {}  replications = {}\n",
            c.theta.as_array(),
            c.sizes,
            f(r.true_p),
            c.replications
        );
        let rows: Vec<Vec<String>> = r
            .estimators
            .iter()
            .map(|e| {
                vec![
                    e.tag.name().to_string(),
                    f(e.mean),
                    f(e.mse),
                    f(e.bias),
                    e.failures.to_string(),
                ]
            })
            .collect();
        out += &rows_to_table(&["estimator", "mean", "mse", "bias", "failures"], &rows);
        for (name, iv) in [("AC", r.ac), ("HPD", r.cr)] {
            if let Some(iv) = iv {
                out += &format!(
                    "{name} interval: average length {}, coverage {}\n",
                    f(iv.avg_length),
                    f(iv.coverage)
                );
            }
        }
        if r.out_of_range_count > 0 {
            out += &format!("UMVUE outside [0,1] in {} replications\n", r.out_of_range_count);
        }
        out += "\n";
    }
    out
}

fn run_simulate(a: &SimulateArgs) -> Result<Rendered> {
    let configs = simulate_configs(a)?;
    let results = simlab::run_grid(&configs, a.workers)?;
    let body = match a.output.format {
        Format::Json => simlab::to_json(&results)? + "\n",
        Format::Csv => {
            let mut buf = Vec::new();
            simlab::write_csv(&results, &mut buf)?;
            String::from_utf8(buf).map_err(input_err)?
        }
        Format::Table => simulate_table(&results, a.output.digits),
    };
    Ok(Rendered {
        body,
        config: to_value(&configs),
        seed: Some(a.seed),
    })
}

fn fit_rows(r: &FitReport, d: usize) -> Vec<Vec<String>> {
    let f = |x: f64| sig(x, d);
    r.datasets
        .iter()
        .map(|ds| {
            vec![
                ds.name.clone(),
                f(r.common_shape),
                f(ds.fit.scale),
                f(ds.fit.log_likelihood),
                f(ds.ks.statistic),
                f(ds.ks.p_value),
            ]
        })
        .collect()
}

fn run_fit(a: &FitArgs) -> Result<Rendered> {
    let samples = load_samples(&a.input)?;
    let names: [&str; 3] = if a.input.is_some() {
        ["x", "y", "z"]
    } else {
        app::datasets::DATASET_NAMES
    };
    let sets: Vec<(&str, &[f64])> = names
        .into_iter()
        .zip([&samples.x[..], &samples.y[..], &samples.z[..]])
        .collect();
    let report = app::weibull_common_shape_fit(&sets, a.shape)?;
    let header = ["dataset", "shape", "scale", "log_likelihood", "ks_t", "ks_p"];
    let rows = fit_rows(&report, a.output.digits);
    let body = match a.output.format {
        Format::Json => to_json(&report)? + "\n",
        Format::Csv => rows_to_csv(&header, &rows)?,
        Format::Table => {
            rows_to_table(&header, &rows)
                + &format!(
                    "pooled log-likelihood {}\n",
                    sig(report.pooled_log_likelihood, a.output.digits)
                )
        }
    };
    Ok(Rendered {
        body,
        config: to_value(a),
        seed: None,
    })
}

fn emit(name: &str, output: &OutputArgs, run: impl FnOnce() -> Result<Rendered>) -> Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let started = RunManifest::start(name, args, &(), None);
    let r = run()?;
    match &output.out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(r.body.as_bytes()).map_err(input_err)?;
        }
        Some(path) => {
            std::fs::write(path, &r.body)
                .map_err(|e| input_err(format!("cannot write {}: {e}", path.display())))?;
            let manifest = RunManifest {
                started_unix: started.started_unix,
                ..RunManifest::start(name, started.args, &r.config, r.seed)
            }
            .finish();
            let mpath = manifest_path(path);
            std::fs::write(&mpath, to_json(&manifest)? + "\n")
                .map_err(|e| input_err(format!("cannot write {}: {e}", mpath.display())))?;
        }
    }
    Ok(())
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::EvalFn(a) => emit("eval-fn", &a.output, || eval_fn(a)),
        Command::Estimate(a) => emit("estimate", &a.output, || run_estimate(a)),
        Command::Simulate(a) => emit("simulate", &a.output, || run_simulate(a)),
        Command::Fit(a) => emit("fit", &a.output, || run_fit(a)),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ordrel: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
