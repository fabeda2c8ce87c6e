//! Self-contained complex special-function kernel: log Γ, digamma,
//! ζ and ζ', the Riemann–Siegel/Hardy pair, and K_{ip} by quadrature.
//!
//! Everything here is a pure function of its arguments and safe to call
//! concurrently.

mod bessel;
mod gamma;
mod zeta;

pub use bessel::{bessel_k_imag_order, QuadratureSpec};
pub use gamma::{digamma, gamma, log_gamma};
pub use zeta::{hardy_z, riemann_siegel_theta, zeta, zeta_prime, SeriesSpec};
