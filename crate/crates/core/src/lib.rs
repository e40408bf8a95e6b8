//! Estimation of the ordering probability `P = Pr(X < Y < Z)` for three
//! independent lifetimes from a proportional-hazard transform family:
//! maximum likelihood, the UMVUE and closed-form Bayes estimators built on
//! Appell/Lauricella hypergeometric functions, Lindley and MCMC
//! approximations, interval estimates, and a Monte Carlo harness.

// Negated float comparisons are used on purpose: they reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod app;
pub mod bayes;
pub mod classical;
pub mod error;
pub mod model;
mod roots;
pub mod simlab;
pub mod specfun;
pub mod umvue;

pub use error::{Error, Result};
