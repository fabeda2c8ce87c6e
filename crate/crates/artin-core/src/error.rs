//! Error type shared by all numerical kernels.

use num_complex::Complex64;
use thiserror::Error;

/// Errors surfaced by the numerical routines.
///
/// Every public operation either returns a finite value or one of these;
/// NaN/Inf never escape silently.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Evaluation requested exactly at a pole of the function.
    #[error("pole at s = {0}")]
    Pole(Complex64),

    /// Argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested tolerance could not be reached within the
    /// configured evaluation budget.
    #[error("accuracy not reached: {0}")]
    Accuracy(String),

    /// An iterative method hit its iteration cap without converging.
    #[error("no convergence: {0}")]
    Convergence(String),

    /// A scan or refinement exceeded its configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Momentum requested exactly at the branch point E = 1/4.
    #[error("branch point at E = 1/4")]
    BranchPoint,

    /// A computation produced a non-finite value.
    #[error("non-finite result in {0}")]
    NonFinite(&'static str),

    /// Invalid solver or series configuration.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Guard helper: reject non-finite outputs at public boundaries.
pub(crate) fn ensure_finite(z: Complex64, what: &'static str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

pub(crate) fn ensure_finite_real(x: f64, what: &'static str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(what))
    }
}
