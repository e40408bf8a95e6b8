//! Reproducibility and bookkeeping of the Monte Carlo harness.

use ordrel::bayes::ChainConfig;
use ordrel::simlab::{csv_header, run_cell, run_grid, study_thetas, to_json, write_csv, EstimatorTag, SimCellConfig};

fn cell(reps: usize) -> SimCellConfig {
    let mut c = SimCellConfig::study(study_thetas()[1], 10);
    c.replications = reps;
    c.chain = ChainConfig { iterations: 600, burn_in: 100, thin: 5, seed: 0 };
    c
}

#[test]
fn worker_count_does_not_change_results() {
    let cfgs = vec![cell(40), cell(40)];
    let one = run_grid(&cfgs, 1).unwrap();
    let four = run_grid(&cfgs, 4).unwrap();
    assert_eq!(one, four);
    assert_eq!(one[0], run_cell(&cfgs[0]).unwrap());
}

#[test]
fn seed_changes_results() {
    let a = run_cell(&cell(30)).unwrap();
    let mut c = cell(30);
    c.seed += 1;
    let b = run_cell(&c).unwrap();
    assert_ne!(a.get(EstimatorTag::Mle).unwrap().mean, b.get(EstimatorTag::Mle).unwrap().mean);
}

#[test]
fn requested_estimators_only() {
    let mut c = cell(20);
    c.estimators = vec![EstimatorTag::Umvue, EstimatorTag::Lindley];
    let r = run_cell(&c).unwrap();
    assert!(r.get(EstimatorTag::Mcmc).is_none());
    assert!(r.ac.is_none() && r.cr.is_none());
    let u = r.get(EstimatorTag::Umvue).unwrap();
    assert_eq!(u.count + u.failures, 20);
    assert!((u.mse - (u.bias * u.bias)).abs() <= u.mse);

    let mut buf = Vec::new();
    write_csv(std::slice::from_ref(&r), &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap().split(',').count(), csv_header().len());
    assert_eq!(lines.next().unwrap().split(',').count(), csv_header().len());
    let back: Vec<ordrel::simlab::SimCellResult> = serde_json::from_str(&to_json(std::slice::from_ref(&r)).unwrap()).unwrap();
    assert_eq!(back[0].config, r.config);
}

#[test]
fn invalid_configs_rejected() {
    for f in [
        (|c: &mut SimCellConfig| c.replications = 0) as fn(&mut SimCellConfig),
        |c| c.sizes = [1, 5, 5],
        |c| c.estimators.clear(),
        |c| c.gamma = 0.0,
        |c| c.chain.thin = 0,
    ] {
        let mut c = cell(5);
        f(&mut c);
        assert!(run_cell(&c).is_err());
    }
}
