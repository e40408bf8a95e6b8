//! One cell of the Monte Carlo study: all six estimators and both intervals.
//!
//! cargo run --release --example simulation_study -- 10 1000

use ordrel::model::ParamTriple;
use ordrel::simlab::{run_cell, SimCellConfig};

fn main() -> ordrel::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let reps: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);

    let theta = ParamTriple::new(0.9, 0.09, 0.00005)?;
    let mut cfg = SimCellConfig::study(theta, n);
    cfg.replications = reps;
    let t0 = std::time::Instant::now();
    let r = run_cell(&cfg)?;

    println!("P = {:.4}, n = {n}, {reps} replications ({:.1?})", r.true_p, t0.elapsed());
    println!("{:<16}{:>10}{:>10}{:>10}", "estimator", "mean", "MSE", "bias");
    for e in &r.estimators {
        println!("{:<16}{:>10.4}{:>10.5}{:>10.4}", e.tag.name(), e.mean, e.mse, e.bias);
    }
    for (name, iv) in [("AC", r.ac), ("HPD", r.cr)] {
        if let Some(iv) = iv {
            println!("{name:<4} avg length {:.4}  coverage {:.3}", iv.avg_length, iv.coverage);
        }
    }
    Ok(())
}
