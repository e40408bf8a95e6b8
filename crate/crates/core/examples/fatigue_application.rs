//! The fatigue-life application: a common-shape Weibull fit to three
//! welding methods, K-S checks, then every estimate of P(AW < BG < TIG).
//!
//! cargo run --release --example fatigue_application [-- <shape>]

use ordrel::app::{self, datasets, EstimateOptions};
use ordrel::model::TransformFamily;

fn main() -> ordrel::Result<()> {
    let shape: Option<f64> = std::env::args().nth(1).and_then(|s| s.parse().ok());
    let data = datasets::fatigue();
    let sets: Vec<(&str, &[f64])> = datasets::DATASET_NAMES
        .into_iter()
        .zip([&data.x[..], &data.y[..], &data.z[..]])
        .collect();

    let fit = app::weibull_common_shape_fit(&sets, shape)?;
    println!("common shape {:.4}", fit.common_shape);
    for d in &fit.datasets {
        println!(
            "  {:<4} scale {:>9.4}  logL {:>9.4}  K-S t {:.4} (p {:.4})",
            d.name, d.fit.scale, d.fit.log_likelihood, d.ks.statistic, d.ks.p_value
        );
    }

    let family = TransformFamily::weibull(fit.common_shape)?;
    let r = app::estimate(&data, &family, &EstimateOptions::default())?;
    println!("UMVUE {:.4}  MLE {:.4}  Bayes {:.4}  Lindley {:.4}  MCMC {:.4}",
        r.umvue, r.mle, r.bayes, r.lindley, r.mcmc.mean);
    println!("95% AC  ({:.4}, {:.4})", r.asymptotic_ci.lower, r.asymptotic_ci.upper);
    println!("95% HPD ({:.4}, {:.4})", r.hpd.lower, r.hpd.upper);
    Ok(())
}
