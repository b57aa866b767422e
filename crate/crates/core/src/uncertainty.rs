//! Position/momentum spreads and divergence diagnostics.
//!
//! The second momentum moment `⟨p^2⟩` of a diffracted state need not exist:
//! for the boxcar state the partial moments `∫_{-P}^{P} p^2 |phi|^2 dp` grow
//! linearly in the cutoff `P` (mean slope `2 hbar / (pi a)`), so `Δp` is
//! infinite, while for the hard-wall ground state they converge to
//! `(pi hbar / a)^2`. The [`cutoff_scan`] diagnostic evaluates the partial
//! moments on a geometric ladder of cutoffs and classifies the behavior;
//! spreads and uncertainty products are then reported only when they exist.

use crate::aperture::{ApertureForm, ApertureState};
use crate::error::{Error, Result};
use crate::geometry::SlitGeometry;
use crate::numerics;
use crate::transform::{
    boxcar_partial_second_moment, hard_wall_ground_partial_second_moment,
    numeric_momentum_amplitude, AmplitudeForm, MomentumAmplitude,
};

/// Relative change between the last two partial moments below which the
/// ladder counts as converged.
pub const CONVERGENT_REL_TAIL: f64 = 1e-6;

/// Maximum relative RMS residual of the straight-line fit for a ladder to
/// count as linearly divergent.
pub const LINEAR_FIT_REL_RMS: f64 = 1e-3;

/// Cutoff ladder for partial-moment scans.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    cutoffs: Vec<f64>,
}

impl ScanConfig {
    /// Geometric default ladder `P_k = 2^k * pi hbar / a` for `k = 3..=20`.
    ///
    /// The top of the ladder is high enough that a convergent state's
    /// remaining tail falls below [`CONVERGENT_REL_TAIL`], while the closed
    /// partial-moment forms keep the scan exact at every rung.
    pub fn default_for(geometry: &SlitGeometry) -> Self {
        let scale = std::f64::consts::PI * geometry.hbar() / geometry.width_a();
        let cutoffs = (3..=20).map(|k| (1u64 << k) as f64 * scale).collect();
        Self { cutoffs }
    }

    /// Shorter ladder `P_k = 2^k * pi hbar / a`, `k = 3..=10`, for amplitudes
    /// tabulated on finite grids, where the top rung must stay within the
    /// range the grid can resolve.
    pub fn grid_ladder_for(geometry: &SlitGeometry) -> Self {
        let scale = std::f64::consts::PI * geometry.hbar() / geometry.width_a();
        let cutoffs = (3..=10).map(|k| (1u64 << k) as f64 * scale).collect();
        Self { cutoffs }
    }

    /// Resolution-aware ladder for a state tabulated on `sample_count`
    /// position samples.
    ///
    /// The transform quadrature over the samples is trustworthy only while
    /// the oscillation advances at most about half a radian per sample step
    /// (`|p| <= hbar (n-1) / (2 a)`); beyond that the integrand aliases and
    /// the partial moments turn into noise. The ladder keeps the geometric
    /// factor-of-two shape, caps the top rung at the largest power-of-two
    /// multiple of `pi hbar / a` the sampling resolves (never beyond the
    /// `2^10` rung of the fixed grid ladder, never below `2^3` so the
    /// classifier always has at least four rungs), and never descends below
    /// `pi hbar / a` itself. Keeping every rung at an even or unit multiple
    /// of `pi hbar / a` pins it to a crest of both closed-form oscillations,
    /// where the `sin` remainder of the partial moments vanishes and the
    /// ladder fits are cleanest.
    pub fn sampled_ladder_for(geometry: &SlitGeometry, sample_count: usize) -> Self {
        let scale = std::f64::consts::PI * geometry.hbar() / geometry.width_a();
        let steps = sample_count.saturating_sub(1).max(1) as f64;
        let k_top = (steps / (2.0 * std::f64::consts::PI))
            .log2()
            .floor()
            .clamp(3.0, 10.0) as i32;
        let k_lo = (k_top - 7).max(0);
        let cutoffs = (k_lo..=k_top).map(|k| 2.0f64.powi(k) * scale).collect();
        Self { cutoffs }
    }

    /// Custom ladder; needs at least 8 finite, strictly increasing, positive
    /// cutoffs so both the tail test and the straight-line fit are
    /// meaningful.
    pub fn new(cutoffs: Vec<f64>) -> Result<Self> {
        if cutoffs.len() < 8 {
            return Err(Error::Contract(format!(
                "cutoff ladder needs at least 8 rungs, got {}",
                cutoffs.len()
            )));
        }
        if cutoffs.iter().any(|c| !c.is_finite() || *c <= 0.0) {
            return Err(Error::Contract(
                "cutoff ladder must be finite and positive".into(),
            ));
        }
        if cutoffs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Contract(
                "cutoff ladder must be strictly increasing".into(),
            ));
        }
        Ok(Self { cutoffs })
    }

    pub fn cutoffs(&self) -> &[f64] {
        &self.cutoffs
    }
}

/// Straight-line fit through the scan points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub rms_residual: f64,
}

/// Classification of a partial-moment ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanVerdict {
    /// The ladder has settled: the last rung changes the value by less than
    /// [`CONVERGENT_REL_TAIL`] relatively.
    Convergent,
    /// The partial moments grow linearly in the cutoff to within
    /// [`LINEAR_FIT_REL_RMS`].
    LinearDivergent,
    /// Neither settled nor cleanly linear.
    Other,
}

/// Maximum relative residual of the saturating fit `V∞ - c/P` through the
/// top rungs for a slowly settling ladder to count as convergent.
pub const SATURATING_FIT_REL_RMS: f64 = 1e-4;

/// Partial second moments over a cutoff ladder, with fit and verdict.
#[derive(Debug, Clone)]
pub struct CutoffScan {
    pub cutoffs: Vec<f64>,
    pub partial_moments: Vec<f64>,
    pub fit: LinearFit,
    pub verdict: ScanVerdict,
    /// The value the partial moments settle to when the verdict is
    /// `Convergent`: the top rung when the ladder has settled outright, or
    /// the extrapolated limit of the saturating fit.
    pub settled_value: Option<f64>,
}

/// Partial second moment `∫_{-P}^{P} p^2 |phi|^2 dp` of an amplitude.
///
/// Closed-form amplitudes use their exact partial-moment expressions; grid
/// amplitudes integrate their samples restricted to `[-P, P]` (the cutoff is
/// snapped to the nearest grid points, and must lie inside the grid).
pub fn partial_second_moment(amplitude: &MomentumAmplitude, cutoff: f64) -> Result<f64> {
    if !cutoff.is_finite() || cutoff <= 0.0 {
        return Err(Error::Domain(format!(
            "cutoff must be finite and positive, got {cutoff}"
        )));
    }
    match amplitude.form() {
        AmplitudeForm::AnalyticBoxcar => {
            Ok(boxcar_partial_second_moment(amplitude.geometry(), cutoff))
        }
        AmplitudeForm::AnalyticHardWallGround => {
            // The closed evaluation subtracts an oscillatory tail series
            // that converges only for cutoffs above 4 hbar / a. Smaller
            // cutoffs need a tabulated amplitude and direct quadrature.
            let g = amplitude.geometry();
            let floor = 4.0 * g.hbar() / g.width_a();
            if cutoff <= floor {
                return Err(Error::Domain(format!(
                    "cutoff {cutoff} is at or below {floor}, where the closed \
                     tail series for the confined state diverges; tabulate the \
                     amplitude and integrate it instead"
                )));
            }
            Ok(hard_wall_ground_partial_second_moment(g, cutoff))
        }
        AmplitudeForm::Numeric => {
            let (p, phi) = amplitude.grid().expect("numeric amplitude has a grid");
            let hi = p[p.len() - 1];
            if cutoff > hi * (1.0 + 1e-12) {
                return Err(Error::Contract(format!(
                    "cutoff {cutoff} exceeds tabulated momentum range {hi}"
                )));
            }
            let h = (hi - p[0]) / (p.len() - 1) as f64;
            let inside: Vec<f64> = p
                .iter()
                .zip(phi.iter())
                .filter(|(pk, _)| pk.abs() <= cutoff * (1.0 + 1e-12))
                .map(|(pk, zk)| pk * pk * zk.norm_sqr())
                .collect();
            if inside.len() < 8 {
                return Err(Error::Contract(format!(
                    "cutoff {cutoff} captures only {} grid points",
                    inside.len()
                )));
            }
            Ok(numerics::integrate_samples(&inside, h))
        }
    }
}

/// Evaluates the partial second moments over `config`'s ladder and
/// classifies the growth.
///
/// Classification, in order:
///
/// 1. *Settled*: the final rung moves the value by less than
///    [`CONVERGENT_REL_TAIL`] relatively → `Convergent`, settled at the top
///    rung.
/// 2. *Linear growth*: a straight-line fit through all rungs is tight
///    ([`LINEAR_FIT_REL_RMS`] relative RMS), has positive slope, and
///    accounts for the observed growth → `LinearDivergent`.
/// 3. *Saturating approach*: the top four rungs fit `V∞ - c/P` with `c > 0`
///    to within [`SATURATING_FIT_REL_RMS`] relative RMS → `Convergent`,
///    settled at the extrapolated `V∞`. This covers amplitudes whose
///    `1/P`-tail is still visible at the top of a short ladder (typical for
///    grid-tabulated transforms, which cannot reach arbitrarily high
///    cutoffs).
/// 4. Anything else → `Other`.
pub fn cutoff_scan(amplitude: &MomentumAmplitude, config: &ScanConfig) -> Result<CutoffScan> {
    let cutoffs = config.cutoffs().to_vec();
    let mut parts = Vec::with_capacity(cutoffs.len());
    for &cutoff in &cutoffs {
        parts.push(partial_second_moment(amplitude, cutoff)?);
    }
    // Partial moments of |phi|^2 are non-decreasing in the cutoff up to
    // rounding; anything else signals a broken amplitude.
    for w in parts.windows(2) {
        if w[1] < w[0] - 1e-9 * w[0].abs().max(f64::MIN_POSITIVE) {
            return Err(Error::Contract(format!(
                "partial moments decreased along the ladder ({} -> {})",
                w[0], w[1]
            )));
        }
    }
    let (slope, intercept, rms) = numerics::linear_fit(&cutoffs, &parts);
    let fit = LinearFit {
        slope,
        intercept,
        rms_residual: rms,
    };
    let n = parts.len();
    let last = parts[n - 1];
    let scale = last.abs().max(f64::MIN_POSITIVE);
    let rel_tail = (last - parts[n - 2]).abs() / scale;
    let growth = last - parts[0];
    let fitted_growth = slope * (cutoffs[n - 1] - cutoffs[0]);

    let (verdict, settled_value) = if rel_tail < CONVERGENT_REL_TAIL {
        (ScanVerdict::Convergent, Some(last))
    } else if rms / scale < LINEAR_FIT_REL_RMS
        && slope > 0.0
        && growth > 1e-3 * scale
        && fitted_growth > 0.5 * growth
    {
        (ScanVerdict::LinearDivergent, None)
    } else if let Some(limit) = saturating_limit(&cutoffs[n - 4..], &parts[n - 4..]) {
        (ScanVerdict::Convergent, Some(limit))
    } else {
        (ScanVerdict::Other, None)
    };
    Ok(CutoffScan {
        cutoffs,
        partial_moments: parts,
        fit,
        verdict,
        settled_value,
    })
}

/// Fits `V(P) = V∞ - c / P` through the given rungs (linear regression in
/// `1/P`); returns the extrapolated `V∞` when the fit is tight and the
/// approach is genuinely from below (`c > 0`).
fn saturating_limit(cutoffs: &[f64], parts: &[f64]) -> Option<f64> {
    let x: Vec<f64> = cutoffs.iter().map(|p| 1.0 / p).collect();
    let (slope, intercept, rms) = numerics::linear_fit(&x, parts);
    let limit = intercept;
    let scale = limit.abs().max(f64::MIN_POSITIVE);
    // slope = -c, so a saturating approach from below has negative slope.
    if slope < 0.0 && rms / scale < SATURATING_FIT_REL_RMS {
        Some(limit)
    } else {
        None
    }
}

/// Mean and variance of the transverse position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionMoments {
    pub mean: f64,
    pub variance: f64,
}

impl PositionMoments {
    /// Standard deviation `Δy`.
    pub fn spread(&self) -> f64 {
        self.variance.max(0.0).sqrt()
    }
}

/// Position moments of an aperture state.
///
/// Closed forms: boxcar `⟨y^2⟩ = a^2/12`; hard-wall state `n`
/// `⟨y^2⟩ = a^2 (1/12 - 1/(2 n^2 pi^2))`, both with zero mean. Sampled
/// states integrate their density numerically.
pub fn position_moments(state: &ApertureState) -> Result<PositionMoments> {
    let a = state.geometry().width_a();
    match state.form() {
        ApertureForm::Boxcar => Ok(PositionMoments {
            mean: 0.0,
            variance: a * a / 12.0,
        }),
        ApertureForm::HardWall { n } => {
            let npi = *n as f64 * std::f64::consts::PI;
            Ok(PositionMoments {
                mean: 0.0,
                variance: a * a * (1.0 / 12.0 - 1.0 / (2.0 * npi * npi)),
            })
        }
        ApertureForm::Sampled { values } => {
            let n = values.len();
            let h = a / (n - 1) as f64;
            let half = a / 2.0;
            let mut dens = Vec::with_capacity(n);
            let mut y_dens = Vec::with_capacity(n);
            let mut y2_dens = Vec::with_capacity(n);
            for (j, v) in values.iter().enumerate() {
                let y = -half + h * j as f64;
                let d = v.norm_sqr();
                dens.push(d);
                y_dens.push(y * d);
                y2_dens.push(y * y * d);
            }
            let norm = numerics::integrate_samples(&dens, h);
            let mean = numerics::integrate_samples(&y_dens, h) / norm;
            let second = numerics::integrate_samples(&y2_dens, h) / norm;
            Ok(PositionMoments {
                mean,
                variance: (second - mean * mean).max(0.0),
            })
        }
    }
}

/// The second momentum moment, as established by a cutoff scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SecondMoment {
    /// `⟨p^2⟩` exists; the value is attached.
    Finite(f64),
    /// Partial moments grow linearly with the cutoff at this slope; `⟨p^2⟩`
    /// (and hence `Δp`) is infinite.
    LinearDivergent { slope: f64 },
    /// The scan could not classify the growth.
    Indeterminate,
}

/// Momentum-side moments plus the scan that justifies them.
#[derive(Debug, Clone)]
pub struct MomentumMoments {
    pub mean: f64,
    pub second_moment: SecondMoment,
    /// `Δp`, present only when the second moment is finite.
    pub spread: Option<f64>,
    pub scan: CutoffScan,
}

/// First momentum moment `∫ p |phi|^2 dp` of a tabulated amplitude.
fn grid_mean_momentum(amplitude: &MomentumAmplitude) -> f64 {
    let (p, phi) = amplitude.grid().expect("tabulated amplitude");
    let h = (p[p.len() - 1] - p[0]) / (p.len() - 1) as f64;
    let vals: Vec<f64> = p
        .iter()
        .zip(phi.iter())
        .map(|(pk, zk)| pk * zk.norm_sqr())
        .collect();
    numerics::integrate_samples(&vals, h)
}

/// Momentum moments of an amplitude, with the divergence diagnostic.
///
/// The verdict comes from the cutoff scan. When it is `Convergent`, the
/// value is the exact full moment for the hard-wall closed form
/// (`(pi hbar / a)^2`) or the settled top rung for tabulated amplitudes.
pub fn momentum_moments(
    amplitude: &MomentumAmplitude,
    config: &ScanConfig,
) -> Result<MomentumMoments> {
    let scan = cutoff_scan(amplitude, config)?;
    let mean = match amplitude.form() {
        // Closed forms are real and even: the mean vanishes identically.
        AmplitudeForm::AnalyticBoxcar | AmplitudeForm::AnalyticHardWallGround => 0.0,
        AmplitudeForm::Numeric => grid_mean_momentum(amplitude),
    };
    let second = match scan.verdict {
        ScanVerdict::Convergent => {
            let value = match amplitude.form() {
                AmplitudeForm::AnalyticHardWallGround => {
                    let g = amplitude.geometry();
                    let k = std::f64::consts::PI * g.hbar() / g.width_a();
                    k * k
                }
                _ => scan
                    .settled_value
                    .expect("convergent scans carry a settled value"),
            };
            SecondMoment::Finite(value)
        }
        ScanVerdict::LinearDivergent => SecondMoment::LinearDivergent {
            slope: scan.fit.slope,
        },
        ScanVerdict::Other => SecondMoment::Indeterminate,
    };
    let spread = match second {
        SecondMoment::Finite(v) => Some((v - mean * mean).max(0.0).sqrt()),
        _ => None,
    };
    Ok(MomentumMoments {
        mean,
        second_moment: second,
        spread,
        scan,
    })
}

/// Combined position/momentum uncertainty report for a state.
#[derive(Debug, Clone)]
pub struct MomentStats {
    pub position: PositionMoments,
    pub momentum: MomentumMoments,
    /// `Δy · Δp`, present only when `Δp` exists.
    pub uncertainty_product: Option<f64>,
}

/// Builds the full uncertainty report for an aperture state.
///
/// Boxcar and hard-wall ground states use their closed-form amplitudes with
/// the default cutoff ladder. Hard-wall states with `n >= 2` keep closed
/// position moments and the exact `⟨p^2⟩ = (n pi hbar / a)^2`; their scan is
/// synthesized from that exact value. Sampled states are transformed
/// numerically onto a wide grid and scanned on the shorter grid ladder.
pub fn uncertainty_report(state: &ApertureState) -> Result<MomentStats> {
    let g = *state.geometry();
    let position = position_moments(state)?;
    let momentum = match state.form() {
        ApertureForm::Boxcar => {
            let amp = MomentumAmplitude::analytic_boxcar(g);
            momentum_moments(&amp, &ScanConfig::default_for(&g))?
        }
        ApertureForm::HardWall { n: 1 } => {
            let amp = MomentumAmplitude::analytic_hard_wall_ground(g);
            momentum_moments(&amp, &ScanConfig::default_for(&g))?
        }
        ApertureForm::HardWall { n } => {
            // Exact for every bound state: ⟨p^2⟩ = (n pi hbar / a)^2.
            let k = *n as f64 * std::f64::consts::PI * g.hbar() / g.width_a();
            let value = k * k;
            let config = ScanConfig::default_for(&g);
            let cutoffs = config.cutoffs().to_vec();
            let parts = vec![value; cutoffs.len()];
            let scan = CutoffScan {
                cutoffs,
                partial_moments: parts,
                fit: LinearFit {
                    slope: 0.0,
                    intercept: value,
                    rms_residual: 0.0,
                },
                verdict: ScanVerdict::Convergent,
                settled_value: Some(value),
            };
            MomentumMoments {
                mean: 0.0,
                second_moment: SecondMoment::Finite(value),
                spread: Some(value.sqrt()),
                scan,
            }
        }
        ApertureForm::Sampled { values } => {
            // Scan only as far as the sample spacing can resolve, and build
            // the momentum grid so every ladder rung lands exactly on a grid
            // node: the spacing is an exact binary fraction of pi hbar / a,
            // fine enough to resolve the pattern oscillations and to give
            // the lowest rung a proper quadrature window.
            let config = ScanConfig::sampled_ladder_for(&g, values.len());
            let top = *config
                .cutoffs()
                .last()
                .expect("ladder always has rungs");
            let scale = std::f64::consts::PI * g.hbar() / g.width_a();
            let k_top = (top / scale).log2().round() as i32;
            let spacing = scale * 2.0f64.powi(k_top.min(6) - 9);
            let half_steps = (1.05 * top / spacing).ceil() as usize;
            let reach = spacing * half_steps as f64;
            let grid = numerics::linspace(-reach, reach, 2 * half_steps + 1);
            let amp = numeric_momentum_amplitude(state, &grid)?;
            momentum_moments(&amp, &config)?
        }
    };
    let uncertainty_product = momentum.spread.map(|dp| position.spread() * dp);
    Ok(MomentStats {
        position,
        momentum,
        uncertainty_product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn unit_geometry() -> SlitGeometry {
        SlitGeometry::single(1.0, 10.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn ladder_validation_rejects_degenerate_input() {
        assert!(ScanConfig::new(vec![1.0, 2.0, 3.0]).is_err()); // too short
        assert!(ScanConfig::new(vec![1.0; 10]).is_err()); // not increasing
        assert!(ScanConfig::new(vec![-1.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]).is_err());
        assert!(ScanConfig::new((1..=8).map(f64::from).collect()).is_ok());
    }

    #[test]
    fn sampled_ladder_tracks_the_resolvable_momentum() {
        let g = unit_geometry();
        let scale = PI; // pi hbar / a at unit geometry

        // 1025 samples resolve up to 512 hbar/a: top rung 2^7 pi, 8 rungs.
        let c = ScanConfig::sampled_ladder_for(&g, 1025);
        let cutoffs = c.cutoffs();
        assert_eq!(cutoffs.len(), 8);
        assert_eq!(cutoffs[0], scale);
        assert_eq!(cutoffs[7], 128.0 * scale);

        // 513 samples: top rung 2^6 pi, and the ladder floors at pi hbar/a
        // rather than descending off the oscillation crests, so 7 rungs.
        let c = ScanConfig::sampled_ladder_for(&g, 513);
        let cutoffs = c.cutoffs();
        assert_eq!(cutoffs.len(), 7);
        assert_eq!(cutoffs[0], scale);
        assert_eq!(cutoffs[6], 64.0 * scale);

        // Very coarse sampling keeps the minimum four-rung ladder; huge
        // sampling never exceeds the fixed grid ladder's 2^10 top rung.
        let c = ScanConfig::sampled_ladder_for(&g, 8);
        assert_eq!(c.cutoffs(), &[scale, 2.0 * scale, 4.0 * scale, 8.0 * scale]);
        let c = ScanConfig::sampled_ladder_for(&g, 1_000_000);
        let cutoffs = c.cutoffs();
        assert_eq!(cutoffs.len(), 8);
        assert_eq!(cutoffs[0], 8.0 * scale);
        assert_eq!(cutoffs[7], 1024.0 * scale);

        // Every rung scales with the momentum unit hbar / a.
        let g2 = SlitGeometry::single(2.0, 10.0, 0.5, 1.0).unwrap();
        let c2 = ScanConfig::sampled_ladder_for(&g2, 1025);
        for (a, b) in c2.cutoffs().iter().zip(ScanConfig::sampled_ladder_for(&g, 1025).cutoffs()) {
            assert!((a - 0.25 * b).abs() < 1e-15 * b);
        }
    }

    #[test]
    fn boxcar_scan_is_linearly_divergent_with_expected_slope() {
        let g = unit_geometry();
        let amp = MomentumAmplitude::analytic_boxcar(g);
        let scan = cutoff_scan(&amp, &ScanConfig::default_for(&g)).unwrap();
        assert_eq!(scan.verdict, ScanVerdict::LinearDivergent);
        let want = 2.0 / PI;
        assert!(
            ((scan.fit.slope - want) / want).abs() < 5e-3,
            "slope {}",
            scan.fit.slope
        );
    }

    #[test]
    fn hard_wall_scan_converges_to_squared_ground_momentum() {
        let g = unit_geometry();
        let amp = MomentumAmplitude::analytic_hard_wall_ground(g);
        let m = momentum_moments(&amp, &ScanConfig::default_for(&g)).unwrap();
        assert_eq!(m.scan.verdict, ScanVerdict::Convergent);
        match m.second_moment {
            SecondMoment::Finite(v) => assert!((v - PI * PI).abs() < 1e-8),
            other => panic!("unexpected second moment {other:?}"),
        }
        assert!((m.spread.unwrap() - PI).abs() < 1e-9);
    }

    #[test]
    fn position_moments_match_closed_forms() {
        let g = SlitGeometry::single(2.0, 10.0, 1.0, 1.0).unwrap();
        let b = position_moments(&ApertureState::boxcar(g)).unwrap();
        assert!((b.variance - 4.0 / 12.0).abs() < 1e-15);
        let w = position_moments(&ApertureState::hard_wall(g, 1).unwrap()).unwrap();
        let want = 4.0 * (1.0 / 12.0 - 1.0 / (2.0 * PI * PI));
        assert!((w.variance - want).abs() < 1e-15);
        // Confinement with a node structure narrows the state relative to
        // the boxcar for n = 1 but approaches a^2/12 from below as n grows.
        let w5 = position_moments(&ApertureState::hard_wall(g, 5).unwrap()).unwrap();
        assert!(w.variance < w5.variance && w5.variance < b.variance);
    }

    #[test]
    fn sampled_position_moments_agree_with_closed_form() {
        let g = unit_geometry();
        // Sample the hard-wall ground state and compare against its closed
        // moments.
        let n = 4097;
        let vals: Vec<Complex64> = (0..n)
            .map(|j| {
                let y = -0.5 + j as f64 / (n - 1) as f64;
                Complex64::new(2.0_f64.sqrt() * (PI * (y + 0.5)).sin(), 0.0)
            })
            .collect();
        let s = ApertureState::sampled(g, &vals).unwrap();
        let m = position_moments(&s).unwrap();
        let want = 1.0 / 12.0 - 1.0 / (2.0 * PI * PI);
        assert!(m.mean.abs() < 1e-12);
        assert!((m.variance - want).abs() < 1e-10, "variance {}", m.variance);
    }

    #[test]
    fn uncertainty_report_for_ground_state() {
        let s = ApertureState::hard_wall(unit_geometry(), 1).unwrap();
        let stats = uncertainty_report(&s).unwrap();
        let dy = stats.position.spread();
        assert!((dy - 0.180_756_027_595_664).abs() < 1e-12);
        let product = stats.uncertainty_product.unwrap();
        assert!((product - 0.567_861_808_386_611_9).abs() < 1e-9);
    }

    #[test]
    fn uncertainty_report_for_boxcar_has_no_finite_spread() {
        let s = ApertureState::boxcar(unit_geometry());
        let stats = uncertainty_report(&s).unwrap();
        assert!(matches!(
            stats.momentum.second_moment,
            SecondMoment::LinearDivergent { .. }
        ));
        assert_eq!(stats.momentum.spread, None);
        assert_eq!(stats.uncertainty_product, None);
        // Position spread still exists: a/sqrt(12).
        assert!((stats.position.spread() - 1.0 / 12.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn excited_states_report_exact_momentum_spread() {
        let s = ApertureState::hard_wall(unit_geometry(), 3).unwrap();
        let stats = uncertainty_report(&s).unwrap();
        match stats.momentum.second_moment {
            SecondMoment::Finite(v) => assert!((v - 9.0 * PI * PI).abs() < 1e-10),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cutoff_below_grid_resolution_is_rejected() {
        let g = unit_geometry();
        let grid = numerics::linspace(-50.0, 50.0, 2001);
        let state = ApertureState::boxcar(g);
        let amp = numeric_momentum_amplitude(&state, &grid).unwrap();
        // Cutoff beyond the tabulated range.
        assert!(partial_second_moment(&amp, 60.0).is_err());
        // Cutoff so small that almost no grid points survive.
        assert!(partial_second_moment(&amp, 0.05).is_err());
    }

    #[test]
    fn constant_partial_moments_classify_convergent_not_linear() {
        // A ladder that has fully settled must not be mistaken for linear
        // growth with tiny slope.
        let g = unit_geometry();
        let amp = MomentumAmplitude::analytic_hard_wall_ground(g);
        // Push the ladder far out so every rung is numerically identical.
        let config =
            ScanConfig::new((12..=19).map(|k| (1u64 << k) as f64 * PI).collect()).unwrap();
        let scan = cutoff_scan(&amp, &config).unwrap();
        assert_eq!(scan.verdict, ScanVerdict::Convergent);
    }
}
