//! Momentum-space amplitudes and diffraction patterns.
//!
//! The transverse state `psi(y)` behind the opening determines the far-field
//! pattern through its momentum representation
//!
//! ```text
//! phi(p) = (2 pi hbar)^(-1/2) * ∫ psi(y) exp(-i p y / hbar) dy ,
//! ```
//!
//! so the recorded intensity is `|phi(p)|^2`. Closed forms are provided for
//! the boxcar state and the hard-wall ground state; any state can also be
//! transformed by direct quadrature onto a uniform momentum grid.
//!
//! Closed forms, with `u = a p / (2 hbar)`:
//!
//! * boxcar: `phi(p) = sqrt(a / (2 pi hbar)) * sin(u)/u`
//! * hard-wall ground state:
//!   `phi(p) = 2 sqrt(pi a / hbar) * cos(u) / (pi^2 - 4 u^2)`,
//!   whose apparent poles at `u = ±pi/2` are removable (finite limits).
//!
//! Both are unit-normalized: `∫ |phi|^2 dp = 1`.

use num_complex::Complex64;

use crate::aperture::ApertureState;
use crate::error::{Error, Result};
use crate::geometry::SlitGeometry;
use crate::numerics::{self, confined_cos_kernel, sinc_ratio};

/// Intensity threshold (relative to the central maximum) under which a local
/// minimum of a closed-form amplitude counts as a true zero of the pattern.
pub const TRUE_ZERO_REL_INTENSITY: f64 = 1e-12;

/// The corresponding threshold for grid-tabulated amplitudes, which carry
/// interpolation bias of order `h^2` near zeros and cannot certify the
/// closed-form threshold.
pub const NUMERIC_ZERO_REL_INTENSITY: f64 = 1e-9;

/// Relative bisection tolerance used when locating pattern zeros.
pub const ZERO_LOCATION_REL_TOL: f64 = 1e-10;

/// Closed-form momentum amplitude of the boxcar state (real-valued).
pub fn boxcar_momentum_amplitude(geometry: &SlitGeometry, p: f64) -> f64 {
    let a = geometry.width_a();
    let hbar = geometry.hbar();
    let u = a * p / (2.0 * hbar);
    (a / (2.0 * std::f64::consts::PI * hbar)).sqrt() * sinc_ratio(u)
}

/// Closed-form momentum amplitude of the hard-wall ground state
/// (real-valued). The removable singularities at `p = ±pi hbar / a` are
/// evaluated by a guarded expansion with a finite limit.
pub fn hard_wall_ground_momentum_amplitude(geometry: &SlitGeometry, p: f64) -> f64 {
    let a = geometry.width_a();
    let hbar = geometry.hbar();
    let u = a * p / (2.0 * hbar);
    2.0 * (std::f64::consts::PI * a / hbar).sqrt() * confined_cos_kernel(u)
}

/// Functional form behind a [`MomentumAmplitude`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmplitudeForm {
    /// Closed form for the boxcar state.
    AnalyticBoxcar,
    /// Closed form for the hard-wall ground state.
    AnalyticHardWallGround,
    /// Values tabulated on a uniform momentum grid.
    Numeric,
}

#[derive(Debug, Clone)]
enum Repr {
    AnalyticBoxcar,
    AnalyticHardWallGround,
    Numeric { p: Vec<f64>, phi: Vec<Complex64> },
}

/// A momentum-space amplitude `phi(p)`, either in closed form or tabulated
/// on a uniform grid.
#[derive(Debug, Clone)]
pub struct MomentumAmplitude {
    geometry: SlitGeometry,
    repr: Repr,
}

impl MomentumAmplitude {
    /// Closed-form amplitude of the boxcar state.
    pub fn analytic_boxcar(geometry: SlitGeometry) -> Self {
        Self {
            geometry,
            repr: Repr::AnalyticBoxcar,
        }
    }

    /// Closed-form amplitude of the hard-wall ground state.
    pub fn analytic_hard_wall_ground(geometry: SlitGeometry) -> Self {
        Self {
            geometry,
            repr: Repr::AnalyticHardWallGround,
        }
    }

    /// Amplitude tabulated on a uniform momentum grid. Used by the numeric
    /// transform and by multi-slit composition.
    pub fn from_grid(geometry: SlitGeometry, p: Vec<f64>, phi: Vec<Complex64>) -> Result<Self> {
        numerics::validate_uniform_grid(&p)?;
        if p.len() != phi.len() {
            return Err(Error::Contract(format!(
                "grid has {} points but {} amplitudes",
                p.len(),
                phi.len()
            )));
        }
        if phi.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Contract(
                "tabulated amplitude contains a non-finite value".into(),
            ));
        }
        Ok(Self {
            geometry,
            repr: Repr::Numeric { p, phi },
        })
    }

    pub fn geometry(&self) -> &SlitGeometry {
        &self.geometry
    }

    pub fn form(&self) -> AmplitudeForm {
        match self.repr {
            Repr::AnalyticBoxcar => AmplitudeForm::AnalyticBoxcar,
            Repr::AnalyticHardWallGround => AmplitudeForm::AnalyticHardWallGround,
            Repr::Numeric { .. } => AmplitudeForm::Numeric,
        }
    }

    /// The tabulation grid and values for numeric amplitudes.
    pub fn grid(&self) -> Option<(&[f64], &[Complex64])> {
        match &self.repr {
            Repr::Numeric { p, phi } => Some((p, phi)),
            _ => None,
        }
    }

    /// Amplitude at momentum `p`. Closed forms evaluate anywhere; tabulated
    /// amplitudes interpolate linearly and refuse momenta outside the grid.
    pub fn eval(&self, p: f64) -> Result<Complex64> {
        if !p.is_finite() {
            return Err(Error::Domain(format!("momentum must be finite, got {p}")));
        }
        match &self.repr {
            Repr::AnalyticBoxcar => Ok(Complex64::new(
                boxcar_momentum_amplitude(&self.geometry, p),
                0.0,
            )),
            Repr::AnalyticHardWallGround => Ok(Complex64::new(
                hard_wall_ground_momentum_amplitude(&self.geometry, p),
                0.0,
            )),
            Repr::Numeric { p: grid, phi } => {
                let lo = grid[0];
                let hi = grid[grid.len() - 1];
                if p < lo || p > hi {
                    return Err(Error::Domain(format!(
                        "momentum {p} outside tabulated range [{lo}, {hi}]"
                    )));
                }
                let h = (hi - lo) / (grid.len() - 1) as f64;
                let t = (p - lo) / h;
                let i = (t.floor() as usize).min(grid.len() - 2);
                let frac = t - i as f64;
                Ok(phi[i] * (1.0 - frac) + phi[i + 1] * frac)
            }
        }
    }

    /// Pattern intensity `|phi(p)|^2`.
    pub fn intensity(&self, p: f64) -> Result<f64> {
        Ok(self.eval(p)?.norm_sqr())
    }

    /// Momentum reach of this representation: closed forms evaluate
    /// anywhere, tabulated amplitudes up to their grid edge.
    fn scan_limit(&self) -> f64 {
        match &self.repr {
            Repr::Numeric { p, .. } => p[p.len() - 1],
            _ => 40.0 * std::f64::consts::PI * self.geometry.hbar() / self.geometry.width_a(),
        }
    }

    /// Total probability `∫ |phi|^2 dp` for closed-form amplitudes, combining
    /// dense quadrature over a wide central band with the asymptotic tail.
    /// `None` for tabulated amplitudes (use [`Self::grid_probability`]).
    pub fn total_probability(&self) -> Option<f64> {
        let scale = self.geometry.hbar() / self.geometry.width_a();
        let cutoff = 600.0 * std::f64::consts::PI * scale;
        let band = match self.repr {
            Repr::AnalyticBoxcar | Repr::AnalyticHardWallGround => numerics::simpson(
                |p| self.eval(p).expect("closed form is total").norm_sqr(),
                -cutoff,
                cutoff,
                1 << 21,
            ),
            Repr::Numeric { .. } => return None,
        };
        let tail = self
            .norm_tail_beyond(cutoff)
            .expect("closed forms have tails");
        Some(band + tail)
    }

    /// Probability carried by the tabulated band, `∫ |phi|^2 dp` over the
    /// grid by composite quadrature. `None` for closed-form amplitudes.
    pub fn grid_probability(&self) -> Option<f64> {
        match &self.repr {
            Repr::Numeric { p, phi } => {
                let h = (p[p.len() - 1] - p[0]) / (p.len() - 1) as f64;
                let dens: Vec<f64> = phi.iter().map(|z| z.norm_sqr()).collect();
                Some(numerics::integrate_samples(&dens, h))
            }
            _ => None,
        }
    }

    /// Probability beyond `±cutoff` from the asymptotic tail expansion of
    /// the closed forms. `None` for tabulated amplitudes.
    pub fn norm_tail_beyond(&self, cutoff: f64) -> Option<f64> {
        match self.repr {
            Repr::AnalyticBoxcar => Some(boxcar_norm_tail(&self.geometry, cutoff)),
            Repr::AnalyticHardWallGround => {
                Some(hard_wall_ground_norm_tail(&self.geometry, cutoff))
            }
            Repr::Numeric { .. } => None,
        }
    }
}

/// Probability outside `[-cutoff, cutoff]` for the boxcar amplitude.
///
/// With `U = a*cutoff/(2 hbar)`:
/// `(1/pi) * (1/U - ∫_U^∞ cos(2u) u^{-2} du)`.
/// Requires the cutoff to sit well inside the oscillatory tail
/// (`U > 2`).
pub fn boxcar_norm_tail(geometry: &SlitGeometry, cutoff: f64) -> f64 {
    let u = geometry.width_a() * cutoff / (2.0 * geometry.hbar());
    (numerics::power_tail(2, u) - numerics::cos_oscillation_tail(2, u)) / std::f64::consts::PI
}

/// Probability outside `[-cutoff, cutoff]` for the hard-wall ground-state
/// amplitude.
///
/// Expanding `(pi^2 - 4u^2)^{-2}` in powers of `(pi/2u)^2` gives
/// `(pi/2) * Σ_k (k+1) beta^{2k} [∫_U^∞ u^{-(2k+4)} du + ∫_U^∞ cos(2u) u^{-(2k+4)} du]`
/// with `beta = pi/2`; every term has a closed form or an asymptotic
/// expansion with a rigorous truncation bound.
pub fn hard_wall_ground_norm_tail(geometry: &SlitGeometry, cutoff: f64) -> f64 {
    let u = geometry.width_a() * cutoff / (2.0 * geometry.hbar());
    let beta = std::f64::consts::FRAC_PI_2;
    let mut sum = 0.0;
    let mut beta_pow = 1.0; // beta^(2k)
    for k in 0u32..60 {
        let n = 2 * k + 4;
        let term = (k + 1) as f64
            * beta_pow
            * (numerics::power_tail(n, u) + numerics::cos_oscillation_tail(n, u));
        sum += term;
        if term.abs() < 1e-22 * sum.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        beta_pow *= beta * beta;
    }
    std::f64::consts::FRAC_PI_2 * sum
}

/// Partial second moment `∫_{-P}^{P} p^2 |phi(p)|^2 dp` of the boxcar
/// amplitude, in closed form:
/// `(2 hbar / (pi a)) * (P - (hbar/a) sin(a P / hbar))`.
///
/// Grows without bound as `P → ∞` with mean slope `2 hbar / (pi a)`.
pub fn boxcar_partial_second_moment(geometry: &SlitGeometry, cutoff: f64) -> f64 {
    let a = geometry.width_a();
    let hbar = geometry.hbar();
    2.0 * hbar / (std::f64::consts::PI * a)
        * (cutoff - hbar / a * (a * cutoff / hbar).sin())
}

/// Second-moment tail `∫_{|p|>P} p^2 |phi(p)|^2 dp` of the hard-wall
/// ground-state amplitude, by the same expansion as the norm tail:
/// `(2 pi hbar^2 / a^2) * Σ_m (m+1) beta^{2m} [∫ u^{-(2m+2)} + ∫ cos(2u) u^{-(2m+2)}]`.
///
/// Valid for `cutoff > 4 hbar / a` (the oscillatory tail integrals require
/// `u = a P / (2 hbar) > 2`); panics below that. Callers that cannot
/// guarantee the floor should go through a tabulated amplitude instead.
pub fn hard_wall_ground_second_moment_tail(geometry: &SlitGeometry, cutoff: f64) -> f64 {
    let a = geometry.width_a();
    let hbar = geometry.hbar();
    let u = a * cutoff / (2.0 * hbar);
    let beta = std::f64::consts::FRAC_PI_2;
    let mut sum = 0.0;
    let mut beta_pow = 1.0;
    for m in 0u32..60 {
        let n = 2 * m + 2;
        let term = (m + 1) as f64
            * beta_pow
            * (numerics::power_tail(n, u) + numerics::cos_oscillation_tail(n, u));
        sum += term;
        if term.abs() < 1e-22 * sum.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        beta_pow *= beta * beta;
    }
    2.0 * std::f64::consts::PI * hbar * hbar / (a * a) * sum
}

/// Partial second moment `∫_{-P}^{P} p^2 |phi(p)|^2 dp` of the hard-wall
/// ground-state amplitude: full moment `(pi hbar / a)^2` minus the
/// asymptotic tail. Converges as `P → ∞`.
///
/// Shares the validity floor of [`hard_wall_ground_second_moment_tail`]:
/// `cutoff > 4 hbar / a`.
pub fn hard_wall_ground_partial_second_moment(geometry: &SlitGeometry, cutoff: f64) -> f64 {
    let k = std::f64::consts::PI * geometry.hbar() / geometry.width_a();
    k * k - hard_wall_ground_second_moment_tail(geometry, cutoff)
}

/// Momentum amplitude of `state` by direct quadrature of the transform
/// integral onto the uniform grid `p_grid`.
///
/// The state is sampled across its opening (closed forms densely, sampled
/// states at their native resolution) and the oscillatory integral is
/// evaluated with composite quadrature weights. The phase factors advance by
/// recurrence along the momentum grid, with periodic exact refresh so phase
/// drift stays near machine precision; results are deterministic.
pub fn numeric_momentum_amplitude(
    state: &ApertureState,
    p_grid: &[f64],
) -> Result<MomentumAmplitude> {
    numerics::validate_uniform_grid(p_grid)?;
    let g = *state.geometry();
    let a = g.width_a();
    let hbar = g.hbar();
    let half = a / 2.0;
    let n_y = state.position_sample_count();
    let h = a / (n_y - 1) as f64;
    let weights = numerics::simpson_weights(n_y, h);
    let norm = 1.0 / (2.0 * std::f64::consts::PI * hbar).sqrt();

    // Weighted position samples c_j = w_j psi(y_j) / sqrt(2 pi hbar).
    let mut coeffs = Vec::with_capacity(n_y);
    let mut ys = Vec::with_capacity(n_y);
    for (j, w) in weights.iter().enumerate() {
        let y = (-half + h * j as f64).clamp(-half, half);
        ys.push(y);
        coeffs.push(state.evaluate(y)? * (w * norm));
    }

    let dp = (p_grid[p_grid.len() - 1] - p_grid[0]) / (p_grid.len() - 1) as f64;
    let mut out = vec![Complex64::new(0.0, 0.0); p_grid.len()];
    const REFRESH_EVERY: usize = 256;
    for (j, c) in coeffs.iter().enumerate() {
        if c.norm_sqr() == 0.0 {
            continue;
        }
        let y = ys[j];
        let step = Complex64::from_polar(1.0, -dp * y / hbar);
        let mut phase = Complex64::from_polar(1.0, -p_grid[0] * y / hbar);
        for (k, o) in out.iter_mut().enumerate() {
            if k % REFRESH_EVERY == 0 && k > 0 {
                phase = Complex64::from_polar(1.0, -(p_grid[0] + dp * k as f64) * y / hbar);
            }
            *o += c * phase;
            phase *= step;
        }
    }
    MomentumAmplitude::from_grid(g, p_grid.to_vec(), out)
}

/// A located pattern extremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub p: f64,
    pub intensity: f64,
    pub kind: ExtremumKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Minimum,
    Maximum,
}

/// Intensity profile over a momentum grid, with located extrema.
#[derive(Debug, Clone)]
pub struct PatternProfile {
    pub p: Vec<f64>,
    pub intensity: Vec<f64>,
    pub extrema: Vec<Extremum>,
}

/// Intensity samples of `amplitude` over `p_grid`, with interior extrema
/// located and (for closed forms) refined by golden-section search.
pub fn intensity_profile(
    amplitude: &MomentumAmplitude,
    p_grid: &[f64],
) -> Result<PatternProfile> {
    numerics::validate_uniform_grid(p_grid)?;
    let mut intensity = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        intensity.push(amplitude.intensity(p)?);
    }
    let mut extrema = Vec::new();
    let refine = amplitude.form() != AmplitudeForm::Numeric;
    for i in 1..p_grid.len() - 1 {
        let (a, b, c) = (intensity[i - 1], intensity[i], intensity[i + 1]);
        let kind = if b < a && b < c {
            ExtremumKind::Minimum
        } else if b > a && b > c {
            ExtremumKind::Maximum
        } else {
            continue;
        };
        let (p, v) = if refine {
            match kind {
                ExtremumKind::Maximum => numerics::golden_section_max(
                    |p| amplitude.intensity(p).unwrap_or(0.0),
                    p_grid[i - 1],
                    p_grid[i + 1],
                ),
                ExtremumKind::Minimum => {
                    let (p, neg) = numerics::golden_section_max(
                        |p| -amplitude.intensity(p).unwrap_or(0.0),
                        p_grid[i - 1],
                        p_grid[i + 1],
                    );
                    (p, -neg)
                }
            }
        } else {
            (p_grid[i], b)
        };
        extrema.push(Extremum {
            p,
            intensity: v,
            kind,
        });
    }
    Ok(PatternProfile {
        p: p_grid.to_vec(),
        intensity,
        extrema,
    })
}

/// Reference central intensity used when deciding whether a pattern minimum
/// is a true zero: the intensity at `p = 0`, or the largest value seen while
/// scanning if the pattern happens to vanish at the center.
fn central_reference(amplitude: &MomentumAmplitude, scan_max: f64) -> f64 {
    let central = amplitude.intensity(0.0).unwrap_or(0.0);
    central.max(scan_max).max(f64::MIN_POSITIVE)
}

/// Sign-change roots of `Re phi(p)` for `p > 0`, in increasing order, found
/// by scanning with step `pi hbar / (200 a)` and bisecting each bracket.
///
/// Removable flat points where the amplitude touches zero without crossing
/// produce no sign change and are skipped automatically, so for the
/// hard-wall ground state the first root returned is the first *true* zero
/// of the pattern, not the filled-in point at `p = pi hbar / a`.
fn positive_sign_change_roots(
    amplitude: &MomentumAmplitude,
    max_roots: usize,
) -> Result<(Vec<f64>, f64)> {
    let g = amplitude.geometry();
    let scale = g.hbar() / g.width_a();
    let step = std::f64::consts::PI * scale / 200.0;
    let limit = amplitude.scan_limit();
    let re = |p: f64| -> Result<f64> { Ok(amplitude.eval(p)?.re) };
    let mut roots = Vec::new();
    let mut scan_max = 0.0_f64;
    let mut p_prev = step * 1e-3;
    let mut f_prev = re(p_prev)?;
    let mut p = step;
    while p <= limit && roots.len() < max_roots {
        let f = re(p)?;
        scan_max = scan_max.max(f * f);
        if f == 0.0 {
            roots.push(p);
        } else if (f_prev < 0.0) != (f < 0.0) {
            let root = numerics::bisect_root(
                |x| amplitude.eval(x).map(|z| z.re).unwrap_or(f64::NAN),
                p_prev,
                p,
                ZERO_LOCATION_REL_TOL,
            );
            roots.push(root);
        }
        p_prev = p;
        f_prev = f;
        p += step;
    }
    Ok((roots, scan_max))
}

/// Momentum of the first true zero of the pattern on the positive axis.
///
/// A candidate root of `Re phi` only counts when the local intensity is
/// below [`TRUE_ZERO_REL_INTENSITY`] relative to the central maximum
/// ([`NUMERIC_ZERO_REL_INTENSITY`] for grid-tabulated amplitudes).
/// For the boxcar state this is `2 pi hbar / a`; for the hard-wall ground
/// state it is `3 pi hbar / a` — the point `pi hbar / a` is a removable
/// feature with finite intensity, not a zero.
pub fn first_pattern_minimum(amplitude: &MomentumAmplitude) -> Result<f64> {
    let (roots, scan_max) = positive_sign_change_roots(amplitude, 1)?;
    let reference = central_reference(amplitude, scan_max);
    let rel_threshold = if amplitude.form() == AmplitudeForm::Numeric {
        NUMERIC_ZERO_REL_INTENSITY
    } else {
        TRUE_ZERO_REL_INTENSITY
    };
    match roots.first() {
        Some(&root) if amplitude.intensity(root)? <= rel_threshold * reference => {
            Ok(root)
        }
        Some(&root) => Err(Error::Domain(format!(
            "sign change at p = {root} is not a true pattern zero"
        ))),
        None => Err(Error::Domain(
            "no pattern zero found within the scanned momentum range".into(),
        )),
    }
}

/// Ratio of the strongest secondary maximum to the central maximum.
///
/// Locates the first two true zeros on the positive axis and maximizes the
/// intensity between them; by symmetry this is the strongest side lobe.
pub fn side_lobe_ratio(amplitude: &MomentumAmplitude) -> Result<f64> {
    let (roots, scan_max) = positive_sign_change_roots(amplitude, 2)?;
    if roots.len() < 2 {
        return Err(Error::Domain(
            "fewer than two pattern zeros in the scanned momentum range".into(),
        ));
    }
    let reference = central_reference(amplitude, scan_max);
    let (_, peak) = numerics::golden_section_max(
        |p| amplitude.intensity(p).unwrap_or(0.0),
        roots[0],
        roots[1],
    );
    Ok(peak / reference)
}
