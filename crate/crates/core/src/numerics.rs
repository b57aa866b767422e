//! Shared numerical building blocks: guarded special-function kernels,
//! composite quadrature, root bracketing, unimodal maximization, linear
//! least squares, and asymptotic tail integrals for oscillatory decays.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Half-width of the Taylor guard band around removable singularities.
///
/// Inside the band a 4th-order expansion is used; at the band edge the
/// expansion error is ~1e-28, far below the 1e-9 continuity requirement.
pub const SINGULARITY_GUARD: f64 = 1e-4;

/// Relative spacing tolerance when checking that a grid is uniform.
pub const GRID_UNIFORMITY_REL: f64 = 1e-9;

/// `sin(x)/x` with the removable singularity at `x = 0` filled in by its
/// Taylor expansion `1 - x^2/6 + x^4/120` inside the guard band.
pub fn sinc_ratio(x: f64) -> f64 {
    if x.abs() < SINGULARITY_GUARD {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `cos(u) / (pi^2 - 4 u^2)` with the removable singularities at
/// `u = ±pi/2` filled in by a guarded expansion.
///
/// Writing `u = pi/2 + t`, the ratio equals `sin(t) / (4 t (pi + t))`, so the
/// finite limit at `t = 0` is `1/(4 pi)`. The function is even in `u`.
pub fn confined_cos_kernel(u: f64) -> f64 {
    let ua = u.abs();
    let t = ua - std::f64::consts::FRAC_PI_2;
    if t.abs() < SINGULARITY_GUARD {
        let t2 = t * t;
        (1.0 - t2 / 6.0 + t2 * t2 / 120.0) / (4.0 * (std::f64::consts::PI + t))
    } else {
        ua.cos() / (std::f64::consts::PI * std::f64::consts::PI - 4.0 * ua * ua)
    }
}

/// Uniform grid of `n >= 2` points covering `[min, max]`.
///
/// Uses the midpoint-exact formula `min + span * (i / (n-1))`, so symmetric
/// grids with an odd point count contain `(min+max)/2` exactly (in
/// particular, `0.0` for symmetric ranges).
pub fn linspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least two points");
    let span = max - min;
    (0..n)
        .map(|i| min + span * (i as f64 / (n - 1) as f64))
        .collect()
}

/// Checks that `grid` is finite, strictly increasing, and uniformly spaced
/// to within [`GRID_UNIFORMITY_REL`]; returns the mean spacing.
pub fn validate_uniform_grid(grid: &[f64]) -> Result<f64> {
    if grid.len() < 2 {
        return Err(Error::Contract(format!(
            "grid needs at least 2 points, got {}",
            grid.len()
        )));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::Contract("grid contains a non-finite value".into()));
    }
    let n = grid.len();
    let h = (grid[n - 1] - grid[0]) / (n - 1) as f64;
    if h <= 0.0 {
        return Err(Error::Contract("grid must be strictly increasing".into()));
    }
    let tol = GRID_UNIFORMITY_REL * h.abs();
    for w in grid.windows(2) {
        let step = w[1] - w[0];
        if step <= 0.0 {
            return Err(Error::Contract("grid must be strictly increasing".into()));
        }
        if (step - h).abs() > tol {
            return Err(Error::Contract(format!(
                "grid spacing is not uniform: step {step} deviates from mean {h}"
            )));
        }
    }
    Ok(h)
}

/// Quadrature weights for uniformly spaced samples with spacing `h`.
///
/// Composite Simpson weights for an odd sample count; for an even count the
/// final three intervals use the Simpson 3/8 rule so the order stays 4.
/// Two samples fall back to the trapezoid rule.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    assert!(n >= 2, "quadrature needs at least two samples");
    let mut w = vec![0.0; n];
    if n == 2 {
        w[0] = h / 2.0;
        w[1] = h / 2.0;
        return w;
    }
    let simpson_upto = if n % 2 == 1 { n } else { n - 3 };
    if simpson_upto >= 3 {
        // Composite Simpson over samples 0 .. simpson_upto-1.
        w[0] += h / 3.0;
        w[simpson_upto - 1] += h / 3.0;
        for (i, wi) in w.iter_mut().enumerate().take(simpson_upto - 1).skip(1) {
            *wi += if i % 2 == 1 { 4.0 * h / 3.0 } else { 2.0 * h / 3.0 };
        }
    }
    if n % 2 == 0 {
        // Simpson 3/8 over the last four samples (three intervals).
        let base = n - 4;
        let c = 3.0 * h / 8.0;
        w[base] += c;
        w[base + 1] += 3.0 * c;
        w[base + 2] += 3.0 * c;
        w[base + 3] += c;
    }
    w
}

/// Integral of uniformly spaced real samples with spacing `h`.
pub fn integrate_samples(values: &[f64], h: f64) -> f64 {
    let w = simpson_weights(values.len(), h);
    values.iter().zip(w.iter()).map(|(v, wi)| v * wi).sum()
}

/// Integral of uniformly spaced complex samples with spacing `h`.
pub fn integrate_samples_complex(values: &[Complex64], h: f64) -> Complex64 {
    let w = simpson_weights(values.len(), h);
    values
        .iter()
        .zip(w.iter())
        .fold(Complex64::new(0.0, 0.0), |acc, (v, wi)| acc + v * *wi)
}

/// Composite Simpson integral of `f` over `[a, b]` with `panels` panels
/// (`panels` is rounded up to an even count).
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let panels = if panels % 2 == 0 { panels.max(2) } else { panels + 1 };
    let h = (b - a) / panels as f64;
    let mut sum = f(a) + f(b);
    for i in 1..panels {
        let x = a + h * i as f64;
        sum += if i % 2 == 1 { 4.0 * f(x) } else { 2.0 * f(x) };
    }
    sum * h / 3.0
}

/// Root of `f` inside `[lo, hi]` located by bisection; the bracket must
/// satisfy `f(lo) * f(hi) <= 0`. Converges to a relative width of `rel_tol`.
pub fn bisect_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, rel_tol: f64) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (flo < 0.0) == (fm < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maximum of a unimodal function on `[lo, hi]` by golden-section search.
/// Returns `(argmax, max)`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if (hi - lo).abs() <= 1e-12 * (lo.abs() + hi.abs()).max(1e-30) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let xm = 0.5 * (lo + hi);
    (xm, f(xm))
}

/// Least-squares fit `y ≈ slope * x + intercept`; `rms_residual` is the
/// root-mean-square residual of the fit.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    assert!(x.len() == y.len() && x.len() >= 2, "fit needs matched samples");
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y.iter()) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss = 0.0;
    for (&xi, &yi) in x.iter().zip(y.iter()) {
        let r = yi - (slope * xi + intercept);
        ss += r * r;
    }
    (slope, intercept, (ss / n).sqrt())
}

/// Asymptotic tail integral `J_n(u) = ∫_u^∞ cos(2t) t^{-n} dt` for `u` well
/// into the oscillatory tail (`u >= 2` or so).
///
/// Evaluated by repeated integration by parts:
/// `J_n = -sin(2u)/(2 u^n) + n cos(2u)/(4 u^{n+1}) - (n(n+1)/4) J_{n+2}`.
/// The recursion is truncated once the rigorous remainder bound
/// `|coeff| * m(m+1)/4 / ((m+1) u^{m+1})` drops below 1e-20, or before the
/// asymptotic series starts to diverge (`m + 2 >= 2u`).
pub fn cos_oscillation_tail(n: u32, u: f64) -> f64 {
    assert!(u > 2.0, "oscillatory tail expansion needs u > 2, got {u}");
    let s = (2.0 * u).sin();
    let c = (2.0 * u).cos();
    let mut coeff = 1.0_f64;
    let mut m = n as f64;
    let mut value = 0.0;
    loop {
        value += coeff * (-s / (2.0 * u.powf(m)) + m * c / (4.0 * u.powf(m + 1.0)));
        let next = coeff * (m * (m + 1.0) / 4.0);
        let bound = next.abs() / ((m + 1.0) * u.powf(m + 1.0));
        if bound < 1e-20 || (m + 2.0) >= 2.0 * u {
            return value;
        }
        coeff = -next;
        m += 2.0;
    }
}

/// Monotone tail integral `∫_u^∞ t^{-n} dt = u^{1-n}/(n-1)` for `n >= 2`.
pub fn power_tail(n: u32, u: f64) -> f64 {
    assert!(n >= 2, "power tail needs n >= 2");
    u.powi(1 - n as i32) / (n as f64 - 1.0)
}
