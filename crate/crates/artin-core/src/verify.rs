//! Self-checks over every module's invariants, runnable from the CLI.
//!
//! Each check is deterministic (fixed RNG seeds) and returns a pass/fail
//! outcome with the worst observed residual, so a failing stack points at
//! the defective kernel.

use num_complex::Complex64;

use crate::maass::{
    self, HalfPlanePoint, TruncationSpec, WaveContext,
};
use crate::scattering::{
    approx_resonances, exact_resonances, momentum_from_energy, phase_scan, s_matrix, theta, Sheet,
};
use crate::specfun::{
    bessel_k_imag_order, gamma, log_gamma, zeta, zeta_prime, QuadratureSpec, SeriesSpec,
};
use crate::zeros::{first_n_zeros, refine_zero, zero_count_estimate};

/// Result of one named invariant check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn measure(name: &'static str, worst: f64, bound: f64) -> Self {
        CheckOutcome {
            name,
            passed: worst <= bound,
            detail: format!("worst {worst:.3e}, bound {bound:.1e}"),
        }
    }

    fn error(name: &'static str, err: impl std::fmt::Display) -> Self {
        CheckOutcome { name, passed: false, detail: format!("error: {err}") }
    }
}

/// Small deterministic linear-congruential stream for test points.
struct Lcg(u64);

impl Lcg {
    fn new(seed: u64) -> Self {
        Lcg(seed)
    }
    fn next_f64(&mut self) -> f64 {
        // Numerical Recipes LCG constants
        self.0 = self.0.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
    fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

macro_rules! try_check {
    ($name:expr, $expr:expr) => {
        match $expr {
            Ok(v) => v,
            Err(e) => return CheckOutcome::error($name, e),
        }
    };
}

fn conjugation_symmetry() -> CheckOutcome {
    const NAME: &str = "specfun.conjugation";
    let spec = SeriesSpec::default();
    let mut rng = Lcg::new(42);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let s = Complex64::new(rng.in_range(-0.5, 2.5), rng.in_range(-60.0, 60.0));
        let z = try_check!(NAME, zeta(s, &spec));
        let zc = try_check!(NAME, zeta(s.conj(), &spec));
        worst = worst.max((z.conj() - zc).norm());
        let g = try_check!(NAME, log_gamma(s + 1.5)); // keep clear of the cut
        let gc = try_check!(NAME, log_gamma(s.conj() + 1.5));
        worst = worst.max((g.conj() - gc).norm());
    }
    CheckOutcome::measure(NAME, worst, 1e-10)
}

fn gamma_recurrence() -> CheckOutcome {
    const NAME: &str = "specfun.gamma_recurrence";
    let mut rng = Lcg::new(7);
    let mut worst = 0.0_f64;
    for _ in 0..50 {
        let s = Complex64::new(rng.in_range(0.1, 3.0), rng.in_range(-30.0, 30.0));
        let g = try_check!(NAME, gamma(s));
        let g1 = try_check!(NAME, gamma(s + 1.0));
        worst = worst.max((g1 - s * g).norm() / g1.norm());
    }
    CheckOutcome::measure(NAME, worst, 1e-10)
}

fn gamma_reflection() -> CheckOutcome {
    const NAME: &str = "specfun.gamma_reflection";
    let mut rng = Lcg::new(8);
    let mut worst = 0.0_f64;
    for _ in 0..50 {
        // away from the integer poles
        let s = Complex64::new(rng.in_range(0.1, 0.9), rng.in_range(0.2, 20.0));
        let lhs = try_check!(NAME, gamma(s)) * try_check!(NAME, gamma(Complex64::new(1.0, 0.0) - s))
            * (std::f64::consts::PI * s).sin()
            / std::f64::consts::PI;
        worst = worst.max((lhs - 1.0).norm());
    }
    CheckOutcome::measure(NAME, worst, 1e-9)
}

fn zeta_functional_equation() -> CheckOutcome {
    const NAME: &str = "specfun.zeta_functional_equation";
    let spec = SeriesSpec::default();
    let one = Complex64::new(1.0, 0.0);
    let mut worst = 0.0_f64;
    for &re in &[0.2, 0.35, 0.5, 0.65, 0.8] {
        for &im in &[0.6, 2.0, 8.0, 20.0, 45.0] {
            let s = Complex64::new(re, im);
            let lhs = try_check!(NAME, zeta(s, &spec));
            let rhs = (s * std::f64::consts::LN_2).exp()
                * ((s - 1.0) * std::f64::consts::PI.ln()).exp()
                * (std::f64::consts::FRAC_PI_2 * s).sin()
                * try_check!(NAME, gamma(one - s))
                * try_check!(NAME, zeta(one - s, &spec));
            worst = worst.max((lhs - rhs).norm() / lhs.norm());
        }
    }
    CheckOutcome::measure(NAME, worst, 1e-8)
}

fn zeta_prime_finite_difference() -> CheckOutcome {
    const NAME: &str = "specfun.zeta_prime_fd";
    let spec = SeriesSpec::default();
    let h = 1e-6;
    let mut worst = 0.0_f64;
    for s in [
        Complex64::new(2.0, 0.0),
        Complex64::new(0.5, 9.0),
        Complex64::new(1.5, 33.0),
        Complex64::new(0.3, -5.0),
    ] {
        let fd = (try_check!(NAME, zeta(s + Complex64::new(h, 0.0), &spec))
            - try_check!(NAME, zeta(s - Complex64::new(h, 0.0), &spec)))
            / (2.0 * h);
        let d = try_check!(NAME, zeta_prime(s, &spec));
        worst = worst.max((d - fd).norm() / d.norm());
    }
    CheckOutcome::measure(NAME, worst, 1e-7)
}

fn bessel_monotone_and_even() -> CheckOutcome {
    const NAME: &str = "specfun.bessel_monotone_even";
    let quad = QuadratureSpec::default();
    for &p in &[0.0, 5.0, 14.0] {
        let mut prev = f64::INFINITY;
        // start past the turning point; K_ip oscillates for y < p
        let mut y = 1.0_f64.max(p);
        while y <= 20.0 {
            let v = try_check!(NAME, bessel_k_imag_order(p, y, &quad)).abs();
            if v >= prev {
                return CheckOutcome {
                    name: NAME,
                    passed: false,
                    detail: format!("|K_i{p}| not decreasing at y = {y}"),
                };
            }
            let neg = try_check!(NAME, bessel_k_imag_order(-p, y, &quad));
            if neg.to_bits() != try_check!(NAME, bessel_k_imag_order(p, y, &quad)).to_bits() {
                return CheckOutcome {
                    name: NAME,
                    passed: false,
                    detail: format!("evenness broken at p = {p}, y = {y}"),
                };
            }
            prev = v;
            y += 1.0;
        }
    }
    CheckOutcome { name: NAME, passed: true, detail: "monotone on [1,20], even in p".into() }
}

fn zeros_count_consistency() -> CheckOutcome {
    const NAME: &str = "zeros.count_consistency";
    let zeros = try_check!(NAME, first_n_zeros(13));
    let mut worst = 0.0_f64;
    for t in [30.0, 50.0, 60.0] {
        let actual = zeros.iter().filter(|z| z.u < t).count() as f64;
        let estimate = zero_count_estimate(t).floor();
        worst = worst.max((actual - estimate).abs());
    }
    CheckOutcome::measure(NAME, worst, 1.0)
}

fn zeros_deterministic() -> CheckOutcome {
    const NAME: &str = "zeros.determinism";
    let a = try_check!(NAME, refine_zero((14.0, 14.25), 1e-8));
    let b = try_check!(NAME, refine_zero((14.0, 14.25), 1e-8));
    if a.u.to_bits() == b.u.to_bits() && a.residual.to_bits() == b.residual.to_bits() {
        CheckOutcome { name: NAME, passed: true, detail: "bit-identical refinement".into() }
    } else {
        CheckOutcome { name: NAME, passed: false, detail: format!("{} vs {}", a.u, b.u) }
    }
}

fn zeros_residual_under_strict_spec() -> CheckOutcome {
    const NAME: &str = "zeros.strict_residual";
    let strict = SeriesSpec::strict();
    let zeros = try_check!(NAME, first_n_zeros(10));
    let mut worst = 0.0_f64;
    for z in &zeros {
        worst = worst.max(try_check!(NAME, zeta(Complex64::new(0.5, z.u), &strict)).norm());
    }
    CheckOutcome::measure(NAME, worst, 1e-6)
}

fn unitarity() -> CheckOutcome {
    const NAME: &str = "scattering.unitarity";
    let mut rng = Lcg::new(1234);
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let p = rng.in_range(0.1, 60.0);
        let s = try_check!(NAME, s_matrix(p));
        worst = worst.max((s.norm() - 1.0).abs());
        worst = worst.max(((s * s.conj()).re - 1.0).abs().max((s * s.conj()).im.abs()));
    }
    CheckOutcome::measure(NAME, worst, 1e-9)
}

fn pole_placement() -> CheckOutcome {
    const NAME: &str = "scattering.pole_placement";
    let zeros = try_check!(NAME, first_n_zeros(10));
    let resonances = try_check!(NAME, exact_resonances(&zeros));
    let mut worst = 0.0_f64;
    for r in &resonances {
        let p = try_check!(NAME, momentum_from_energy(r.pole_energy(), Sheet::Second));
        let t = try_check!(NAME, theta(Complex64::new(0.5, 0.0) - Complex64::i() * p));
        worst = worst.max(t.norm());
    }
    CheckOutcome::measure(NAME, worst, 1e-4)
}

fn approx_vs_exact() -> CheckOutcome {
    const NAME: &str = "scattering.approx_vs_exact";
    let zeros = try_check!(NAME, first_n_zeros(10));
    let exact = try_check!(NAME, exact_resonances(&zeros));
    let approx = try_check!(NAME, approx_resonances(&zeros));
    let mut worst_e = 0.0_f64;
    let mut worst_w = 0.0_f64;
    for (e, a) in exact.iter().zip(&approx) {
        worst_e = worst_e.max((a.energy - e.energy).abs() / e.energy);
        worst_w = worst_w.max((a.width - e.width).abs() / e.width);
    }
    let passed = worst_e <= 0.03 && worst_w <= 0.35;
    CheckOutcome {
        name: NAME,
        passed,
        detail: format!("energy dev {worst_e:.4}, width dev {worst_w:.4}"),
    }
}

fn phase_derivative_peaks() -> CheckOutcome {
    const NAME: &str = "scattering.phase_derivative_peaks";
    let zeros = try_check!(NAME, first_n_zeros(10));
    let approx = try_check!(NAME, approx_resonances(&zeros));
    for r in &approx {
        let lo = r.energy - 2.5 * r.width;
        let hi = r.energy + 2.5 * r.width;
        let scan = try_check!(NAME, phase_scan(lo, hi, 400));
        let mut best = (0.0, f64::MIN);
        for w in scan.windows(2) {
            let slope = (w[1].delta - w[0].delta) / (w[1].energy - w[0].energy);
            let mid = 0.5 * (w[1].energy + w[0].energy);
            if slope > best.1 {
                best = (mid, slope);
            }
        }
        if (best.0 - r.energy).abs() > r.width {
            return CheckOutcome {
                name: NAME,
                passed: false,
                detail: format!(
                    "resonance {}: steepest phase at {:.3}, expected within {:.3} of {:.3}",
                    r.index, best.0, r.width, r.energy
                ),
            };
        }
        if let Some(d) = r.phase_offset {
            if !d.is_finite() {
                return CheckOutcome {
                    name: NAME,
                    passed: false,
                    detail: format!("non-finite phase offset at {}", r.index),
                };
            }
        }
    }
    CheckOutcome { name: NAME, passed: true, detail: "dδ/dE peaks inside every window".into() }
}

fn tau_reality_and_multiplicativity() -> CheckOutcome {
    const NAME: &str = "maass.tau_identities";
    let mut rng = Lcg::new(99);
    let mut worst = 0.0_f64;
    for _ in 0..40 {
        let n = 1 + (rng.next_f64() * 9999.0) as u64;
        let p = rng.in_range(0.0, 30.0);
        let mut z = Complex64::new(0.0, 0.0);
        for a in 1..=n {
            if n.is_multiple_of(a) {
                let b = n / a;
                z += Complex64::from_polar(1.0, p * ((a as f64).ln() - (b as f64).ln()));
            }
        }
        worst = worst.max(z.im.abs());
        worst = worst.max((z.re - try_check!(NAME, maass::tau(p, n))).abs());
    }
    // Hecke multiplicativity on coprime pairs
    for (m, n) in [(3u64, 8u64), (5, 12), (7, 100), (25, 36), (11, 13)] {
        let p = rng.in_range(0.0, 30.0);
        let lhs = try_check!(NAME, maass::tau(p, m)) * try_check!(NAME, maass::tau(p, n));
        let rhs = try_check!(NAME, maass::tau(p, m * n));
        worst = worst.max((lhs - rhs).abs());
    }
    CheckOutcome::measure(NAME, worst, 1e-10)
}

fn wave_tail() -> CheckOutcome {
    const NAME: &str = "maass.wavefunction_tail";
    let trunc = TruncationSpec::default();
    let mut worst = 0.0_f64;
    for &p in &[5.0, 7.067_362_570_867_347] {
        let ctx = try_check!(NAME, WaveContext::new(p, trunc));
        for &(x, yt) in &[(0.2, -0.1), (0.4, 0.8)] {
            let base = try_check!(NAME, ctx.evaluate(HalfPlanePoint::new(x, yt)));
            let wide = TruncationSpec { l_min: (2 * base.modes_used).min(64), ..trunc };
            let more = try_check!(
                NAME,
                try_check!(NAME, WaveContext::new(p, wide)).evaluate(HalfPlanePoint::new(x, yt))
            );
            worst = worst.max((more.psi - base.psi).norm());
        }
    }
    CheckOutcome::measure(NAME, worst, trunc.tail_tol)
}

fn modular_invariance_grid() -> CheckOutcome {
    const NAME: &str = "maass.modular_invariance";
    let trunc = TruncationSpec::default();
    let zeros = try_check!(NAME, first_n_zeros(2));
    let momenta = [zeros[0].u / 2.0, zeros[1].u / 2.0, 5.0];
    let xs = [-0.35, -0.15, 0.05, 0.2, 0.4];
    let yts = [-0.1, 0.15, 0.6, 1.2, 1.9];
    let mut worst = 0.0_f64;
    for &p in &momenta {
        for &x in &xs {
            for &yt in &yts {
                let r = try_check!(
                    NAME,
                    maass::modular_invariance_residual(p, HalfPlanePoint::new(x, yt), &trunc)
                );
                worst = worst.max(r);
            }
        }
    }
    CheckOutcome::measure(NAME, worst, 1e-6)
}

fn pde_second_order() -> CheckOutcome {
    const NAME: &str = "maass.pde_convergence";
    let trunc = TruncationSpec { tail_tol: 1e-12, ..TruncationSpec::default() };
    let p = 7.06735;
    let point = HalfPlanePoint::new(0.1, 0.182_321_556_793_955); // y = 1.2
    let r4 = try_check!(NAME, maass::pde_residual(p, point, 4e-3, &trunc));
    let r2 = try_check!(NAME, maass::pde_residual(p, point, 2e-3, &trunc));
    let r1 = try_check!(NAME, maass::pde_residual(p, point, 1e-3, &trunc));
    let ratios = [r4 / r2, r2 / r1];
    let ok = ratios.iter().all(|r| (3.5..=4.5).contains(r));
    CheckOutcome {
        name: NAME,
        passed: ok,
        detail: format!("halving ratios {:.2}, {:.2}", ratios[0], ratios[1]),
    }
}

fn geometry() -> CheckOutcome {
    const NAME: &str = "maass.geometry";
    let limit = try_check!(NAME, maass::area_below(800.0));
    if limit != std::f64::consts::FRAC_PI_3 {
        return CheckOutcome { name: NAME, passed: false, detail: "area limit is not pi/3".into() };
    }
    let h = 1e-6;
    let d = (try_check!(NAME, maass::area_below(1.0 + h)) - try_check!(NAME, maass::area_below(1.0 - h)))
        / (2.0 * h);
    let worst = (d - maass::horizontal_length(1.0)).abs();
    CheckOutcome::measure(NAME, worst, 1e-8)
}

/// Run every invariant suite.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        conjugation_symmetry(),
        gamma_recurrence(),
        gamma_reflection(),
        zeta_functional_equation(),
        zeta_prime_finite_difference(),
        bessel_monotone_and_even(),
        zeros_count_consistency(),
        zeros_deterministic(),
        zeros_residual_under_strict_spec(),
        unitarity(),
        pole_placement(),
        approx_vs_exact(),
        phase_derivative_peaks(),
        tau_reality_and_multiplicativity(),
        wave_tail(),
        modular_invariance_grid(),
        pde_second_order(),
        geometry(),
    ]
}
