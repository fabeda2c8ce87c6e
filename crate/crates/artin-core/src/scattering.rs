//! The scattering side of the billiard: θ(s) = π^{-s} ζ(2s) Γ(s), the
//! unitary reflection amplitude S(p) = θ(1/2+ip)/θ(1/2-ip) = e^{2iδ},
//! the unwrapped phase shift, and the resonance spectrum.
//!
//! Resonances are the second-sheet poles of S. With u_n the ordinates of
//! the critical-line zeta zeros, the poles sit at momenta p_n = u_n/2 - i/4,
//! i.e. at complex energies
//!
//! ```text
//! E_pole = E_n - i W_n,   E_n = u_n^2/4 + 3/16,   W_n = u_n/4 .
//! ```
//!
//! `Resonance::width` stores W_n, the distance of the pole below the real
//! axis (half the full Breit–Wigner width), which is the convention the
//! reference tabulation uses for both the exact and the locally-expanded
//! resonance parameters.

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::specfun::{digamma, log_gamma, zeta, zeta_prime, SeriesSpec};
use crate::zeros::ZetaZero;

/// Below this |ζ(2s)| the log-derivative form of θ' switches to the
/// product rule to avoid 0/0 near zeta zeros.
const LOG_DERIV_FLOOR: f64 = 1e-6;

/// Hard cap on adaptive phase-scan growth, as a multiple of the
/// requested base samples.
const SCAN_BUDGET_FACTOR: usize = 16;

/// Anti-aliasing cap on the momentum spacing of the scan grid. dδ/dp
/// stays below ~2.5 for the resonances reachable here, so a phase slip
/// of π between neighbours closer than this is impossible; endpoint
/// phase comparison alone could miss a full 2π turn on a coarse grid.
const MAX_MOMENTUM_SPACING: f64 = 0.2;

/// How a resonance was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResonanceMethod {
    /// Closed form from a zeta zero: E = u²/4 + 3/16, W = u/4.
    Exact,
    /// First-order expansion of S around the bump energy E_n.
    Approx,
}

/// A second-sheet pole of the S-matrix at `energy - i width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub index: usize,
    /// Ordinate of the source zeta zero.
    pub u: f64,
    pub energy: f64,
    /// Distance of the pole below the real energy axis (tabulated width).
    pub width: f64,
    pub method: ResonanceMethod,
    /// Background phase offset δ'_n of the local expansion (radians);
    /// present for `Approx` only.
    pub phase_offset: Option<f64>,
}

impl Resonance {
    /// Pole position in the complex energy plane.
    pub fn pole_energy(&self) -> Complex64 {
        Complex64::new(self.energy, -self.width)
    }
}

/// One sample of the scattering phase. `energy` is reconstructed from
/// `momentum` so that E = p² + 1/4 holds exactly as stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSample {
    pub energy: f64,
    pub momentum: f64,
    pub s_value: Complex64,
    /// Unwrapped phase shift δ = arg(S)/2, continuous across the scan.
    pub delta: f64,
}

/// Branch choice for p = √(E - 1/4) with the cut along real E ≥ 1/4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sheet {
    /// Im p ≥ 0; real positive momenta on the upper lip of the cut.
    Physical,
    /// The opposite branch; resonance poles live here.
    Second,
}

/// θ(s) = π^{-s} ζ(2s) Γ(s).
pub fn theta(s: Complex64) -> Result<Complex64> {
    if 2.0 * s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole(s));
    }
    let spec = SeriesSpec::default();
    let z = zeta(2.0 * s, &spec)?;
    let lg = log_gamma(s)?; // rejects the gamma poles
    let pi_pow = (-s * std::f64::consts::PI.ln()).exp();
    ensure_finite(pi_pow * z * lg.exp(), "theta")
}

/// dθ/ds.
///
/// Uses θ·(-ln π + ψ(s) + 2 ζ'(2s)/ζ(2s)) away from zeros of ζ(2s) and the
/// expanded product rule when |ζ(2s)| is small enough for the log
/// derivative to lose digits.
pub fn theta_prime(s: Complex64) -> Result<Complex64> {
    if 2.0 * s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole(s));
    }
    let spec = SeriesSpec::default();
    let z = zeta(2.0 * s, &spec)?;
    let zp = zeta_prime(2.0 * s, &spec)?;
    let psi = digamma(s)?;
    let ln_pi = std::f64::consts::PI.ln();
    let value = if z.norm() >= LOG_DERIV_FLOOR {
        theta(s)? * (-ln_pi + psi + 2.0 * zp / z)
    } else {
        let g = log_gamma(s)?.exp();
        let pi_pow = (-s * ln_pi).exp();
        pi_pow * (-ln_pi * z * g + 2.0 * zp * g + z * g * psi)
    };
    ensure_finite(value, "theta_prime")
}

/// Reflection amplitude S(p) = θ(1/2+ip)/θ(1/2-ip) for real p > 0.
///
/// θ has real Dirichlet/Taylor data, so θ(1/2-ip) = conj θ(1/2+ip) and the
/// ratio is computed as z/conj(z): unit modulus up to one rounding.
pub fn s_matrix(p: f64) -> Result<Complex64> {
    if !(p > 0.0) {
        return Err(Error::Domain(format!("s_matrix requires p > 0, got {p}")));
    }
    let t = theta(Complex64::new(0.5, p))?;
    ensure_finite(t / t.conj(), "s_matrix")
}

/// p = √(E - 1/4) on the requested sheet.
///
/// Physical sheet: Im p ≥ 0, cut along real E ≥ 1/4, so scattering
/// energies just above the cut give real positive momenta and E < 1/4
/// gives p = i√|E - 1/4| (decaying waves). The second sheet is the
/// opposite branch: the pole energies E_n - i u_n/4 map to u_n/2 - i/4.
pub fn momentum_from_energy(energy: Complex64, sheet: Sheet) -> Result<Complex64> {
    let w = energy - 0.25;
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::BranchPoint);
    }
    let mut phase = w.arg();
    if phase < 0.0 {
        phase += 2.0 * std::f64::consts::PI;
    }
    let p = Complex64::from_polar(w.norm().sqrt(), 0.5 * phase);
    let p = match sheet {
        Sheet::Physical => p,
        Sheet::Second => -p,
    };
    ensure_finite(p, "momentum_from_energy")
}

/// One resonance per zero from the closed form E = u²/4 + 3/16, W = u/4.
pub fn exact_resonances(zeros: &[ZetaZero]) -> Result<Vec<Resonance>> {
    if zeros.is_empty() {
        return Err(Error::Domain("exact_resonances needs at least one zero".into()));
    }
    Ok(zeros
        .iter()
        .map(|z| Resonance {
            index: z.index,
            u: z.u,
            energy: z.u * z.u / 4.0 + 3.0 / 16.0,
            width: z.u / 4.0,
            method: ResonanceMethod::Exact,
            phase_offset: None,
        })
        .collect())
}

/// One Newton update E ← E − θ(s)/(dθ/dE) toward the pole condition
/// θ(1/2 − i√(E − 1/4)) = 0, with the root continued downward from the
/// real axis (principal square root).
fn pole_newton_update(energy: Complex64) -> Result<Complex64> {
    let p = (energy - 0.25).sqrt();
    let s = Complex64::new(0.5, 0.0) - Complex64::i() * p;
    let dtheta_de = theta_prime(s)? * (-Complex64::i() / (2.0 * p));
    ensure_finite(energy - theta(s)? / dtheta_de, "pole_newton_update")
}

/// Resonance parameters from the first-order expansion of S around the
/// bump energy E_n = u²/4 + 3/16:
///
/// ```text
/// E'_n - i W'_n = E_n - θ(s_n) / (dθ/dE)(s_n),   s_n = 1/2 - i√(E_n - 1/4),
/// e^{2iδ'_n}    = (dθ/dE)(conj s_n) / (dθ/dE)(s_n),
/// ```
///
/// where dθ/dE = θ'(s) · ds/dE with ds/dE = ∓i/(2p) on s = 1/2 ∓ ip.
/// The expansion is taken at the bump energies literally, not iterated
/// to self-consistency; see [`approx_resonances_refined`] for one extra
/// Newton step.
pub fn approx_resonances(zeros: &[ZetaZero]) -> Result<Vec<Resonance>> {
    approx_resonances_impl(zeros, false)
}

/// Like [`approx_resonances`], but with one further Newton step: the
/// expansion is re-taken at the complex pole estimate instead of the real
/// bump energy, landing markedly closer to the true pole at
/// u²/4 + 3/16 − i u/4. Off the default path; the tabulated recipe is
/// the single-step one.
pub fn approx_resonances_refined(zeros: &[ZetaZero]) -> Result<Vec<Resonance>> {
    approx_resonances_impl(zeros, true)
}

fn approx_resonances_impl(zeros: &[ZetaZero], refine: bool) -> Result<Vec<Resonance>> {
    if zeros.is_empty() {
        return Err(Error::Domain("approx_resonances needs at least one zero".into()));
    }
    let mut out = Vec::with_capacity(zeros.len());
    for z in zeros {
        let bump = z.u * z.u / 4.0 + 3.0 / 16.0;
        let mut estimate = pole_newton_update(Complex64::new(bump, 0.0))?;
        if refine {
            estimate = pole_newton_update(estimate)?;
        }
        let width = -estimate.im;
        if !(width > 0.0) {
            return Err(Error::Accuracy(format!(
                "non-positive approximate width {width} at zero {}",
                z.index
            )));
        }
        // background phase of the bump expansion
        let p = (bump - 0.25).sqrt();
        let half_i_over_p = Complex64::new(0.0, 0.5 / p);
        let dtheta_de_minus = theta_prime(Complex64::new(0.5, -p))? * (-half_i_over_p);
        let dtheta_de_plus = theta_prime(Complex64::new(0.5, p))? * half_i_over_p;
        let phase_offset = 0.5 * (dtheta_de_plus / dtheta_de_minus).arg();
        if !phase_offset.is_finite() {
            return Err(Error::NonFinite("approx_resonances phase offset"));
        }
        out.push(Resonance {
            index: z.index,
            u: z.u,
            energy: estimate.re,
            width,
            method: ResonanceMethod::Approx,
            phase_offset: Some(phase_offset),
        });
    }
    Ok(out)
}

/// Narrowness measures per resonance: W/E and W/(E_{next} - E).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthRatios {
    pub index: usize,
    pub ratio_to_energy: f64,
    /// Absent for the last resonance in the list.
    pub ratio_to_spacing: Option<f64>,
}

/// Ratios of each width to its energy and to the spacing to the next
/// resonance. Requires at least two exact-method resonances in
/// increasing energy order.
pub fn width_ratios(resonances: &[Resonance]) -> Result<Vec<WidthRatios>> {
    if resonances.len() < 2 {
        return Err(Error::Domain("width_ratios needs at least two resonances".into()));
    }
    for r in resonances {
        if r.method != ResonanceMethod::Exact {
            return Err(Error::Domain("width_ratios expects exact-method resonances".into()));
        }
    }
    for w in resonances.windows(2) {
        if !(w[0].energy < w[1].energy) {
            return Err(Error::Domain("resonances must be sorted by energy".into()));
        }
    }
    Ok(resonances
        .iter()
        .enumerate()
        .map(|(i, r)| WidthRatios {
            index: r.index,
            ratio_to_energy: r.width / r.energy,
            ratio_to_spacing: resonances
                .get(i + 1)
                .map(|next| r.width / (next.energy - r.energy)),
        })
        .collect())
}

fn wrap_to_pi(mut d: f64) -> f64 {
    while d > std::f64::consts::PI {
        d -= 2.0 * std::f64::consts::PI;
    }
    while d <= -std::f64::consts::PI {
        d += 2.0 * std::f64::consts::PI;
    }
    d
}

/// Scan S over [e_min, e_max] and return samples with a continuous,
/// unwrapped phase shift δ(E) = arg(S)/2 anchored at δ(e_min) ∈ (-π, π].
///
/// The grid starts uniform with `samples` points and bisects adaptively
/// wherever consecutive raw S phases differ by π/2 or more, so the final
/// unwrapped δ never jumps by π/2 between neighbours.
pub fn phase_scan(e_min: f64, e_max: f64, samples: usize) -> Result<Vec<PhaseSample>> {
    if !(e_min > 0.25 && e_min < e_max) {
        return Err(Error::Domain(format!(
            "need 1/4 < e_min < e_max, got [{e_min}, {e_max}]"
        )));
    }
    if samples < 2 {
        return Err(Error::Domain(format!("need samples >= 2, got {samples}")));
    }
    let budget = samples * SCAN_BUDGET_FACTOR;

    // (momentum, S); energy is recomputed from momentum on output
    let eval = |energy: f64| -> Result<(f64, Complex64)> {
        let p = (energy - 0.25).sqrt();
        Ok((p, s_matrix(p)?))
    };

    let mut grid: Vec<(f64, Complex64)> = Vec::with_capacity(samples);
    for i in 0..samples {
        let e = e_min + (e_max - e_min) * i as f64 / (samples - 1) as f64;
        grid.push(eval(e)?);
    }

    loop {
        let mut refined = Vec::with_capacity(grid.len());
        let mut inserted = false;
        for i in 0..grid.len() - 1 {
            refined.push(grid[i]);
            let d_phase = wrap_to_pi(grid[i + 1].1.arg() - grid[i].1.arg());
            let d_momentum = grid[i + 1].0 - grid[i].0;
            if d_phase.abs() >= std::f64::consts::FRAC_PI_2 || d_momentum > MAX_MOMENTUM_SPACING {
                let e_mid = 0.5 * (grid[i].0 * grid[i].0 + grid[i + 1].0 * grid[i + 1].0) + 0.25;
                refined.push(eval(e_mid)?);
                inserted = true;
            }
        }
        refined.push(*grid.last().expect("non-empty grid"));
        if refined.len() > budget {
            return Err(Error::Budget(format!(
                "phase scan refinement exceeded {budget} samples"
            )));
        }
        grid = refined;
        if !inserted {
            break;
        }
    }

    let mut out = Vec::with_capacity(grid.len());
    let mut delta = 0.5 * grid[0].1.arg();
    let mut prev_phase = grid[0].1.arg();
    for (i, &(p, s)) in grid.iter().enumerate() {
        if i > 0 {
            let phase = s.arg();
            delta += 0.5 * wrap_to_pi(phase - prev_phase);
            prev_phase = phase;
        }
        out.push(PhaseSample {
            energy: p * p + 0.25,
            momentum: p,
            s_value: s,
            delta,
        });
    }
    Ok(out)
}
