//! Critical-line zeros of ζ located by sign changes of Hardy's Z and
//! refined by bracketed bisection with secant acceleration.

use std::sync::Mutex;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::specfun::{hardy_z, SeriesSpec};

/// Height beyond which scanning gives up (ζ accuracy is not vouched for
/// above |Im s| ≈ 150; the 50th zero sits near 143.1).
const MAX_SCAN_HEIGHT: f64 = 150.0;

/// Default scan step. The closest pair among the zeros used here is
/// u_8 - u_7 ≈ 2.41, so 0.25 cannot straddle two zeros in one step.
const SCAN_STEP: f64 = 0.25;

/// Default ordinate tolerance for refinement.
const REFINE_TOL: f64 = 1e-8;

const REFINE_MAX_ITER: usize = 200;

/// A located zero ζ(1/2 + iu) = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaZero {
    /// 1-based index in increasing ordinate order (0 until assigned).
    pub index: usize,
    /// Ordinate u > 0.
    pub u: f64,
    /// |Z(u)| at the returned ordinate.
    pub residual: f64,
    /// Width of the final bracketing interval.
    pub bracket_width: f64,
}

/// Riemann–von Mangoldt estimate for the number of zeros with 0 < u < t.
pub fn zero_count_estimate(t: f64) -> f64 {
    let x = t / (2.0 * std::f64::consts::PI);
    x * x.ln() - x + 0.875
}

/// Scan [t_min, t_max] in steps and return the disjoint, ordered intervals
/// across which Z changes sign. An empty result is not an error.
pub fn scan_brackets(t_min: f64, t_max: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    if !(t_min >= 0.0 && t_min < t_max) {
        return Err(Error::Domain(format!(
            "need 0 <= t_min < t_max, got [{t_min}, {t_max}]"
        )));
    }
    if !(step > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    let spec = SeriesSpec::default();
    let mut brackets = Vec::new();
    let mut t_lo = t_min;
    let mut z_lo = hardy_z(t_lo, &spec)?;
    while t_lo < t_max {
        let t_hi = (t_lo + step).min(t_max);
        let z_hi = hardy_z(t_hi, &spec)?;
        // a grid value exactly on a zero counts toward the left interval
        if (z_lo > 0.0) != (z_hi > 0.0) {
            brackets.push((t_lo, t_hi));
        }
        t_lo = t_hi;
        z_lo = z_hi;
    }
    Ok(brackets)
}

/// Refine a sign-change bracket down to `tol` in the ordinate.
///
/// Bisection guarantees progress; a secant step is taken whenever it lands
/// strictly inside the bracket. Two final secant polls pick the ordinate
/// with the smallest |Z|. The returned `index` is 0; `first_n_zeros`
/// assigns indices.
pub fn refine_zero(bracket: (f64, f64), tol: f64) -> Result<ZetaZero> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    let spec = SeriesSpec::default();
    let (mut a, mut b) = bracket;
    if !(a < b) {
        return Err(Error::Domain("empty bracket".into()));
    }
    let mut fa = hardy_z(a, &spec)?;
    let mut fb = hardy_z(b, &spec)?;
    if (fa > 0.0) == (fb > 0.0) {
        return Err(Error::Domain(format!(
            "no sign change across [{a}, {b}]"
        )));
    }
    let mut iterations = 0;
    while b - a > tol {
        iterations += 1;
        if iterations > REFINE_MAX_ITER {
            return Err(Error::Convergence(format!(
                "bracket still {:.3e} wide after {REFINE_MAX_ITER} iterations",
                b - a
            )));
        }
        let midpoint = 0.5 * (a + b);
        let secant = b - fb * (b - a) / (fb - fa);
        let margin = 0.01 * (b - a);
        let x = if iterations % 2 == 0 && secant > a + margin && secant < b - margin {
            secant
        } else {
            midpoint
        };
        let fx = hardy_z(x, &spec)?;
        if (fx > 0.0) == (fa > 0.0) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    let width = b - a;
    // polish: secant steps from the bracket endpoints, keep the best |Z|
    let (mut x0, mut f0, mut x1, mut f1) = (a, fa, b, fb);
    let (mut best_u, mut best_z) = if f0.abs() < f1.abs() { (x0, f0) } else { (x1, f1) };
    for _ in 0..3 {
        if f1 == f0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !x2.is_finite() || x2 < bracket.0 || x2 > bracket.1 {
            break;
        }
        let f2 = hardy_z(x2, &spec)?;
        if f2.abs() < best_z.abs() {
            best_u = x2;
            best_z = f2;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
    }
    Ok(ZetaZero {
        index: 0,
        u: best_u,
        residual: best_z.abs(),
        bracket_width: width,
    })
}

fn zero_cache() -> &'static Mutex<Vec<ZetaZero>> {
    static CACHE: OnceLock<Mutex<Vec<ZetaZero>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

fn compute_zeros_up_to(n: usize) -> Result<Vec<ZetaZero>> {
    let mut zeros: Vec<ZetaZero> = Vec::with_capacity(n);
    let mut t = 0.0;
    while zeros.len() < n {
        if t >= MAX_SCAN_HEIGHT {
            return Err(Error::Budget(format!(
                "only {} zeros found below the scan ceiling {MAX_SCAN_HEIGHT}",
                zeros.len()
            )));
        }
        let t_hi = (t + 40.0).min(MAX_SCAN_HEIGHT);
        for bracket in scan_brackets(t, t_hi, SCAN_STEP)? {
            let mut zero = refine_zero(bracket, REFINE_TOL)?;
            zero.index = zeros.len() + 1;
            zeros.push(zero);
            if zeros.len() == n {
                break;
            }
        }
        t = t_hi;
        // guard against skipped sign changes: the count so far must track
        // the Riemann-von Mangoldt estimate at the scanned height
        let height = if zeros.len() == n { zeros[n - 1].u } else { t };
        let found_below = zeros.iter().filter(|z| z.u < height).count() as f64;
        let expected = zero_count_estimate(height).floor();
        if (found_below - expected).abs() > 1.0 {
            return Err(Error::Accuracy(format!(
                "zero count {found_below} below {height} disagrees with estimate {expected}"
            )));
        }
    }
    Ok(zeros)
}

/// The first `n` critical-line zeros, 1-indexed, in increasing order.
///
/// Results are memoized for the life of the process; repeated calls are
/// bit-identical by construction.
pub fn first_n_zeros(n: usize) -> Result<Vec<ZetaZero>> {
    if n == 0 || n > 50 {
        return Err(Error::Domain(format!("need 1 <= n <= 50, got {n}")));
    }
    {
        let cache = zero_cache().lock().expect("zero cache poisoned");
        if cache.len() >= n {
            return Ok(cache[..n].to_vec());
        }
    }
    let zeros = compute_zeros_up_to(n)?;
    let mut cache = zero_cache().lock().expect("zero cache poisoned");
    if zeros.len() > cache.len() {
        *cache = zeros.clone();
    }
    Ok(zeros)
}
