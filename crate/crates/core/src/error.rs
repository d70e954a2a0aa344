use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("pole at {0}")]
    Pole(Complex64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge within {terms} terms")]
    SeriesNonConvergence { terms: usize },
    #[error("argument {x} is beyond the supported range (max {max}): series cancellation")]
    Cancellation { x: f64, max: f64 },
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("integration exceeded {steps} steps before t = {t}")]
    StepBudget { steps: usize, t: f64 },
    #[error("quadrature did not converge with {nodes} nodes (last change {change:e})")]
    QuadratureNonConvergence { nodes: usize, change: f64 },
    #[error("contour constant failed validation (max error {max_error:e})")]
    CalibrationFailed { max_error: f64 },
    #[error("catalog error: {0}")]
    Catalog(String),
}

/// Coarse classification used for exit codes and reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Convergence,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Pole(_) | Error::Domain(_) | Error::Cancellation { .. } | Error::Catalog(_) => {
                ErrorKind::Domain
            }
            Error::SeriesNonConvergence { .. }
            | Error::StepUnderflow { .. }
            | Error::StepBudget { .. }
            | Error::QuadratureNonConvergence { .. }
            | Error::CalibrationFailed { .. } => ErrorKind::Convergence,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
