//! Complex log-gamma and digamma via the Stirling series with an
//! upward recurrence shift out of the small-|s| region.
//!
//! `log_gamma` returns the branch that is real on the positive axis and
//! analytic on the plane cut along the non-positive reals, so
//! `exp(log_gamma(s)) == gamma(s)` everywhere it is defined.

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};

/// Stirling coefficients B_{2k} / (2k (2k-1)), k = 1..9.
const STIRLING: [f64; 9] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
];

/// B_{2k} / (2k), k = 1..7, for the digamma asymptotic series.
const DIGAMMA_ASYMP: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

/// Re(s) beyond which the Stirling series is applied directly.
const SHIFT_EDGE: f64 = 10.0;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_7;

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

fn check_argument(s: Complex64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::NonFinite("gamma argument"));
    }
    if is_nonpositive_integer(s) {
        return Err(Error::Pole(s));
    }
    Ok(())
}

/// Principal-branch log Γ(s).
///
/// Shifts with log Γ(s) = log Γ(s+1) − log s until Re(s) ≥ 10, then sums
/// the Stirling series. Errors at the poles s = 0, −1, −2, …
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    check_argument(s)?;
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < SHIFT_EDGE {
        shift += z.ln();
        z += 1.0;
    }
    let w = z.inv();
    let w2 = w * w;
    let mut series = Complex64::new(0.0, 0.0);
    let mut t = w;
    for c in STIRLING {
        series += c * t;
        t *= w2;
    }
    let val = (z - 0.5) * z.ln() - z + HALF_LN_2PI + series - shift;
    ensure_finite(val, "log_gamma")
}

/// Digamma ψ(s) = d/ds log Γ(s), same shift-then-asymptotic scheme.
pub fn digamma(s: Complex64) -> Result<Complex64> {
    check_argument(s)?;
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < SHIFT_EDGE {
        shift += z.inv();
        z += 1.0;
    }
    let w = z.inv();
    let w2 = w * w;
    let mut series = Complex64::new(0.0, 0.0);
    let mut t = w2;
    for c in DIGAMMA_ASYMP {
        series += c * t;
        t *= w2;
    }
    let val = z.ln() - 0.5 * w - series - shift;
    ensure_finite(val, "digamma")
}

/// Γ(s) itself, through `exp(log_gamma)`.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    Ok(log_gamma(s)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn gamma_of_one_is_one() {
        let v = log_gamma(Complex64::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn gamma_of_half_is_sqrt_pi() {
        let v = log_gamma(Complex64::new(0.5, 0.0)).unwrap();
        // ln sqrt(pi), mpmath 40 digits
        assert_abs_diff_eq!(v.re, 0.572_364_942_924_700_1, epsilon = 1e-13);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn log_gamma_on_the_scattering_line() {
        // reference computed with mpmath at 40 digits
        let v = log_gamma(Complex64::new(0.5, 7.06735)).unwrap();
        assert_abs_diff_eq!(v.re, -10.182_428_886_969_24, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 6.758_653_645_502_42, epsilon = 1e-12);
    }

    #[test]
    fn poles_are_rejected() {
        for k in 0..4 {
            let s = Complex64::new(-(k as f64), 0.0);
            assert!(matches!(log_gamma(s), Err(Error::Pole(_))));
            assert!(matches!(digamma(s), Err(Error::Pole(_))));
        }
        assert!(log_gamma(Complex64::new(0.5, 0.0)).is_ok());
    }

    #[test]
    fn digamma_classical_values() {
        let v = digamma(Complex64::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, -EULER_GAMMA, epsilon = 1e-13);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
        // recurrence psi(2) = psi(1) + 1
        let v2 = digamma(Complex64::new(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v2.re, 1.0 - EULER_GAMMA, epsilon = 1e-13);
    }

    #[test]
    fn digamma_matches_finite_difference_of_log_gamma() {
        let s = Complex64::new(0.5, 10.0);
        let h = 1e-5;
        let fd = (log_gamma(s + Complex64::new(h, 0.0)).unwrap()
            - log_gamma(s - Complex64::new(h, 0.0)).unwrap())
            / (2.0 * h);
        let psi = digamma(s).unwrap();
        assert!((psi - fd).norm() < 1e-8);
    }

    #[test]
    fn recurrence_and_reflection() {
        let pts = [
            Complex64::new(0.3, 0.4),
            Complex64::new(0.25, -7.0),
            Complex64::new(1.5, 60.0),
            Complex64::new(-1.3, 0.7),
        ];
        for s in pts {
            let g = gamma(s).unwrap();
            let g1 = gamma(s + 1.0).unwrap();
            assert!((g1 - s * g).norm() / g1.norm() < 1e-10, "recurrence at {s}");
            let refl = gamma(s).unwrap() * gamma(Complex64::new(1.0, 0.0) - s).unwrap()
                * (std::f64::consts::PI * s).sin()
                / std::f64::consts::PI;
            assert!(
                (refl - 1.0).norm() < 1e-9,
                "reflection at {s}: {refl}"
            );
        }
    }

    #[test]
    fn conjugation_symmetry() {
        let s = Complex64::new(0.7, 23.0);
        let a = log_gamma(s).unwrap();
        let b = log_gamma(s.conj()).unwrap();
        assert!((a.conj() - b).norm() < 1e-12);
    }
}
