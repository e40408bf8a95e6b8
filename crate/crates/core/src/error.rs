use thiserror::Error;

/// Errors raised by the estimators and the special-function evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Arguments outside the domain where the requested quantity is defined
    /// (or where no evaluation strategy applies).
    #[error("domain error: {0}")]
    Domain(String),

    /// A series, quadrature or root finder hit its iteration cap before
    /// reaching the requested tolerance.
    #[error("no convergence after {iterations} iterations: {context}")]
    NonConvergence { context: String, iterations: usize },

    /// Malformed input data (files, flags, ragged samples).
    #[error("input error: {0}")]
    Input(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn no_convergence(context: impl Into<String>, iterations: usize) -> Self {
        Error::NonConvergence {
            context: context.into(),
            iterations,
        }
    }

    /// True for errors caused by bad input rather than numerical trouble.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Input(_) | Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
