//! Scattering data of the quantized Artin billiard — the free motion on
//! the modular surface SL(2,Z)\H.
//!
//! The crate computes, in plain double precision:
//!
//! - the special-function kernel behind everything else: complex log Γ,
//!   digamma, ζ and ζ' by Euler–Maclaurin, the Hardy Z function, and
//!   K_{ip} by direct quadrature ([`specfun`]);
//! - the first critical-line zeros of ζ by sign-change scanning of Z
//!   ([`zeros`]);
//! - the unitary reflection amplitude S(p), its unwrapped phase shift,
//!   and the resonance spectrum those zeros induce ([`scattering`]);
//! - the Maass wave function with its divisor-sum Fourier coefficients,
//!   fundamental-domain geometry, and the modular-invariance and
//!   Schrödinger-residual oracles ([`maass`]);
//! - a deterministic invariant suite over all of the above ([`verify`]).
//!
//! All functions are pure; nothing here keeps mutable global state beyond
//! a memo of already-located zeta zeros.
//!
//! ```
//! use artin_core::{scattering, zeros};
//!
//! // the lowest resonance sits at E = u_1^2/4 + 3/16 with the pole
//! // u_1/4 below the real axis
//! let zs = zeros::first_n_zeros(1).unwrap();
//! let res = scattering::exact_resonances(&zs).unwrap();
//! assert!((res[0].energy - 50.1351).abs() < 1e-3);
//! assert!((res[0].width - 3.53368).abs() < 1e-4);
//!
//! // the reflection amplitude is a pure phase
//! let s = scattering::s_matrix(5.0).unwrap();
//! assert!((s.norm() - 1.0).abs() < 1e-12);
//! ```

// negated float comparisons are deliberate: `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod maass;
pub mod scattering;
pub mod specfun;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64;
