//! Riemann zeta, its derivative, and the Hardy Z function.
//!
//! ζ(s) is summed by Euler–Maclaurin:
//!
//! ```text
//! ζ(s) = Σ_{n=1}^{N} n^{-s} + N^{1-s}/(s-1) - N^{-s}/2
//!        + Σ_{k=1}^{M} B_{2k}/(2k)! · (s)(s+1)…(s+2k-2) · N^{-s-2k+1}
//! ```
//!
//! with N scaled to the height of s. ζ'(s) is the same sum differentiated
//! term by term. This reaches full double precision at the heights used
//! here (|Im s| up to ~150); no Riemann–Siegel main-sum machinery needed.

use num_complex::Complex64;

use super::gamma::log_gamma;
use crate::error::{ensure_finite, ensure_finite_real, Error, Result};

/// Bernoulli numbers B_2, B_4, …, B_30.
const BERNOULLI: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43_867.0 / 798.0,
    -174_611.0 / 330.0,
    854_513.0 / 138.0,
    -236_364_091.0 / 2730.0,
    8_553_103.0 / 6.0,
    -23_749_461_029.0 / 870.0,
    8_615_841_276_005.0 / 14_322.0,
];

/// Height-dependent factor for the number of direct terms.
const TERMS_PER_HEIGHT: f64 = 1.3;

/// Controls the Euler–Maclaurin evaluation of ζ.
///
/// `direct_terms` is a floor; the effective N grows with |Im s| as
/// max(direct_terms, ⌈1.3 |Im s|⌉). `correction_terms` is the number of
/// Bernoulli corrections (each uses B_{2k}; beyond B_30 the asymptotic
/// tail diverges before it converges, hence the cap at 15).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSpec {
    pub direct_terms: usize,
    pub correction_terms: usize,
}

impl SeriesSpec {
    pub fn new(direct_terms: usize, correction_terms: usize) -> Result<Self> {
        if direct_terms < 10 {
            return Err(Error::InvalidSpec(format!(
                "direct_terms must be >= 10, got {direct_terms}"
            )));
        }
        if !(1..=15).contains(&correction_terms) {
            return Err(Error::InvalidSpec(format!(
                "correction_terms must be in 1..=15, got {correction_terms}"
            )));
        }
        Ok(Self { direct_terms, correction_terms })
    }

    /// Tighter spec used by verification passes.
    pub fn strict() -> Self {
        Self { direct_terms: 64, correction_terms: 10 }
    }

    fn validate(&self) -> Result<()> {
        Self::new(self.direct_terms, self.correction_terms).map(|_| ())
    }

    fn effective_n(&self, s: Complex64) -> usize {
        let by_height = (TERMS_PER_HEIGHT * s.im.abs()).ceil() as usize;
        self.direct_terms.max(by_height)
    }
}

impl Default for SeriesSpec {
    fn default() -> Self {
        Self { direct_terms: 20, correction_terms: 8 }
    }
}

fn check_argument(s: Complex64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::NonFinite("zeta argument"));
    }
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Pole(s));
    }
    Ok(())
}

/// ζ(s) for s ≠ 1.
pub fn zeta(s: Complex64, spec: &SeriesSpec) -> Result<Complex64> {
    check_argument(s)?;
    spec.validate()?;
    let n = spec.effective_n(s);
    let nf = n as f64;

    let mut total = Complex64::new(1.0, 0.0); // n = 1 term
    for k in 2..=n {
        total += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * nf.ln()).exp(); // N^{-s}
    total += n_pow * nf / (s - 1.0);
    total -= 0.5 * n_pow;

    // Bernoulli corrections T_k = B_{2k}/(2k)! * N^{-s-2k+1} * prod_{j=0}^{2k-2}(s+j)
    let mut factorial = 1.0;
    let mut power = n_pow / nf; // N^{-s-1}
    let mut poch = s; // running product (s)(s+1)…
    let inv_n2 = 1.0 / (nf * nf);
    let mut last_term = Complex64::new(0.0, 0.0);
    for k in 1..=spec.correction_terms {
        factorial *= ((2 * k - 1) * (2 * k)) as f64;
        last_term = (BERNOULLI[k - 1] / factorial) * power * poch;
        total += last_term;
        power *= inv_n2;
        poch *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
    }
    // The omitted-term magnitude bounds the asymptotic remainder.
    if last_term.norm() > 1e-9 * total.norm().max(1.0) {
        return Err(Error::Accuracy(format!(
            "Euler-Maclaurin tail {:.2e} too large at s = {s}",
            last_term.norm()
        )));
    }
    ensure_finite(total, "zeta")
}

/// ζ'(s): the Euler–Maclaurin sum differentiated term by term.
pub fn zeta_prime(s: Complex64, spec: &SeriesSpec) -> Result<Complex64> {
    check_argument(s)?;
    spec.validate()?;
    let n = spec.effective_n(s);
    let nf = n as f64;
    let ln_n = nf.ln();

    let mut total = Complex64::new(0.0, 0.0);
    for k in 2..=n {
        let ln_k = (k as f64).ln();
        total -= ln_k * (-s * ln_k).exp();
    }
    let n_pow = (-s * ln_n).exp();
    let sm1 = s - 1.0;
    total += n_pow * nf * (-ln_n / sm1 - (sm1 * sm1).inv());
    total += 0.5 * ln_n * n_pow;

    let mut factorial = 1.0;
    let mut power = n_pow / nf;
    let mut poch = s;
    let mut poch_d = Complex64::new(1.0, 0.0);
    let inv_n2 = 1.0 / (nf * nf);
    let mut last_term = Complex64::new(0.0, 0.0);
    for k in 1..=spec.correction_terms {
        factorial *= ((2 * k - 1) * (2 * k)) as f64;
        last_term = (BERNOULLI[k - 1] / factorial) * power * (poch_d - ln_n * poch);
        total += last_term;
        power *= inv_n2;
        let a = s + (2 * k - 1) as f64;
        let b = s + (2 * k) as f64;
        poch_d = poch_d * a * b + poch * (a + b);
        poch *= a * b;
    }
    if last_term.norm() > 1e-9 * total.norm().max(1.0) {
        return Err(Error::Accuracy(format!(
            "Euler-Maclaurin tail {:.2e} too large at s = {s}",
            last_term.norm()
        )));
    }
    ensure_finite(total, "zeta_prime")
}

/// Riemann–Siegel ϑ(t) = Im log Γ(1/4 + it/2) − (t/2) ln π, computed
/// exactly from the complex log-gamma rather than its asymptotic series.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    let lg = log_gamma(Complex64::new(0.25, 0.5 * t))?;
    ensure_finite_real(lg.im - 0.5 * t * std::f64::consts::PI.ln(), "riemann_siegel_theta")
}

/// Hardy's function Z(t) = e^{iϑ(t)} ζ(1/2 + it), real for real t ≥ 0.
///
/// Zeros of Z on t > 0 are the ordinates of the critical-line zeros of ζ.
pub fn hardy_z(t: f64, spec: &SeriesSpec) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::NonFinite("hardy_z argument"));
    }
    if t < 0.0 {
        return Err(Error::Domain(format!("hardy_z requires t >= 0, got {t}")));
    }
    let theta = riemann_siegel_theta(t)?;
    let z = Complex64::from_polar(1.0, theta) * zeta(Complex64::new(0.5, t), spec)?;
    // the imaginary part is pure roundoff
    ensure_finite_real(z.re, "hardy_z")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const PI_SQUARED_OVER_6: f64 = 1.644_934_066_848_226_4;
    /// ζ(1/2), mpmath 40 digits.
    const ZETA_HALF: f64 = -1.460_354_508_809_586_8;

    #[test]
    fn zeta_classical_values() {
        let spec = SeriesSpec::default();
        let v = zeta(Complex64::new(2.0, 0.0), &spec).unwrap();
        assert_abs_diff_eq!(v.re, PI_SQUARED_OVER_6, epsilon = 1e-13);
        let v0 = zeta(Complex64::new(0.0, 0.0), &spec).unwrap();
        assert_abs_diff_eq!(v0.re, -0.5, epsilon = 1e-13);
        assert_abs_diff_eq!(v0.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn zeta_vanishes_at_the_first_zero_ordinate() {
        // Table-precision ordinate; |zeta| is bounded by the rounding of u_1.
        let v = zeta(Complex64::new(0.5, 14.1347), &SeriesSpec::default()).unwrap();
        assert!(v.norm() <= 1e-4, "|zeta| = {}", v.norm());
    }

    #[test]
    fn pole_is_rejected() {
        assert!(matches!(
            zeta(Complex64::new(1.0, 0.0), &SeriesSpec::default()),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn spec_validation() {
        assert!(SeriesSpec::new(9, 8).is_err());
        assert!(SeriesSpec::new(20, 0).is_err());
        assert!(SeriesSpec::new(20, 16).is_err());
        assert!(SeriesSpec::new(10, 15).is_ok());
        // invalid struct literals are rejected at the call site too
        let bad = SeriesSpec { direct_terms: 4, correction_terms: 8 };
        assert!(matches!(
            zeta(Complex64::new(2.0, 0.0), &bad),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn starved_correction_budget_is_an_accuracy_error() {
        // a single Bernoulli correction cannot carry the tail at height 100
        let weak = SeriesSpec { direct_terms: 20, correction_terms: 1 };
        assert!(matches!(
            zeta(Complex64::new(0.5, 100.0), &weak),
            Err(Error::Accuracy(_))
        ));
    }

    #[test]
    fn zeta_prime_classical_value() {
        // zeta'(0) = -ln(2 pi)/2
        let v = zeta_prime(Complex64::new(0.0, 0.0), &SeriesSpec::default()).unwrap();
        assert_abs_diff_eq!(v.re, -0.918_938_533_204_672_7, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn zeta_prime_matches_finite_differences() {
        let spec = SeriesSpec::default();
        let h = 1e-6;
        for s in [Complex64::new(2.0, 0.0), Complex64::new(0.5, 21.0220)] {
            let fd = (zeta(s + Complex64::new(h, 0.0), &spec).unwrap()
                - zeta(s - Complex64::new(h, 0.0), &spec).unwrap())
                / (2.0 * h);
            let d = zeta_prime(s, &spec).unwrap();
            let tol = if s.im == 0.0 { 1e-8 } else { 1e-7 };
            assert!((d - fd).norm() < tol, "at {s}: {}", (d - fd).norm());
        }
    }

    #[test]
    fn functional_equation_on_a_strip_grid() {
        // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
        let spec = SeriesSpec::default();
        let one = Complex64::new(1.0, 0.0);
        for &re in &[0.2, 0.4, 0.6, 0.8] {
            for &im in &[0.7, 3.0, 11.0, 26.0] {
                let s = Complex64::new(re, im);
                let lhs = zeta(s, &spec).unwrap();
                let rhs = (s * std::f64::consts::LN_2).exp()
                    * ((s - 1.0) * std::f64::consts::PI.ln()).exp()
                    * (std::f64::consts::FRAC_PI_2 * s).sin()
                    * super::super::gamma::gamma(one - s).unwrap()
                    * zeta(one - s, &spec).unwrap();
                assert!(
                    (lhs - rhs).norm() / lhs.norm() < 1e-8,
                    "functional equation at {s}: {}",
                    (lhs - rhs).norm() / lhs.norm()
                );
            }
        }
    }

    #[test]
    fn hardy_z_at_zero_is_zeta_half() {
        let z = hardy_z(0.0, &SeriesSpec::default()).unwrap();
        assert_abs_diff_eq!(z, ZETA_HALF, epsilon = 1e-12);
    }

    #[test]
    fn hardy_z_small_at_first_zero_and_changes_sign() {
        let spec = SeriesSpec::default();
        assert!(hardy_z(14.1347, &spec).unwrap().abs() <= 1e-3);
        // exactly one zero between 14.1347 and 21.0220
        let a = hardy_z(14.1, &spec).unwrap();
        let b = hardy_z(18.0, &spec).unwrap();
        assert!(a.signum() == -b.signum());
    }

    #[test]
    fn negative_t_is_a_domain_error() {
        assert!(matches!(
            hardy_z(-1.0, &SeriesSpec::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn conjugation_symmetry() {
        let spec = SeriesSpec::default();
        let s = Complex64::new(0.4, 17.3);
        let a = zeta(s, &spec).unwrap();
        let b = zeta(s.conj(), &spec).unwrap();
        assert!((a.conj() - b).norm() < 1e-12);
    }
}
