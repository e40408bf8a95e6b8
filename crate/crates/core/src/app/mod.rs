//! The data-analysis pipeline behind the command-line tool: Weibull fitting
//! with goodness-of-fit checks, bundled datasets, end-to-end estimation and
//! run manifests.

pub mod datasets;
mod estimate;
mod format;
mod ks;
mod manifest;
mod weibull;

pub use estimate::{estimate, resolve_family, EstimateOptions, EstimateReport};
pub use format::{sig, sig6};
pub use ks::{kolmogorov_p_value, ks_test, KsResult};
pub use manifest::RunManifest;
pub use weibull::{
    ks_weibull, weibull_common_shape_fit, weibull_fit, weibull_log_likelihood, DatasetFit, FitReport,
    WeibullFit,
};
