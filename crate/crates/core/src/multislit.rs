//! Coherent multi-slit composition.
//!
//! An array of `N` identical openings with center spacing `d` prepares the
//! superposition `psi_N(y) = (1/sqrt(N)) Σ_j psi(y - y_j)` of one base state
//! translated to each slit center `y_j = (j - (N-1)/2) d`. Because
//! translation in position multiplies the momentum amplitude by a phase, the
//! composed transform factorizes exactly:
//!
//! ```text
//! phi_N(p) = phi(p) * (1/sqrt(N)) Σ_j exp(-i p y_j / hbar)
//! ```
//!
//! — the single-slit envelope times the array interference factor. For
//! non-overlapping openings the translated copies are orthogonal, so
//! `psi_N` stays unit-normalized and the second momentum moment equals the
//! base state's (the interference factor has unit mean against the
//! envelope).

use num_complex::Complex64;

use crate::aperture::{ApertureForm, ApertureState};
use crate::error::{Error, Result};
use crate::geometry::SlitGeometry;
use crate::transform::{
    boxcar_momentum_amplitude, hard_wall_ground_momentum_amplitude, numeric_momentum_amplitude,
    MomentumAmplitude,
};

/// A coherent equal-weight superposition of one aperture state across every
/// slit of an array.
#[derive(Debug, Clone)]
pub struct MultiSlitState {
    base: ApertureState,
}

impl MultiSlitState {
    /// Wraps a base state whose geometry describes the array. A single-slit
    /// geometry is accepted and composes to the base state itself.
    pub fn new(base: ApertureState) -> Result<Self> {
        // Geometry construction already enforced spacing presence and
        // non-overlap; nothing further to validate here.
        Ok(Self { base })
    }

    pub fn base(&self) -> &ApertureState {
        &self.base
    }

    pub fn geometry(&self) -> &SlitGeometry {
        self.base.geometry()
    }

    /// Slit center positions `y_j = (j - (N-1)/2) d`, symmetric about 0.
    pub fn slit_centers(&self) -> Vec<f64> {
        let g = self.geometry();
        let n = g.slit_count();
        let d = g.spacing_d().unwrap_or(0.0);
        (0..n)
            .map(|j| (j as f64 - (n - 1) as f64 / 2.0) * d)
            .collect()
    }

    /// The composed wavefunction `psi_N(y)`.
    pub fn total_wavefunction(&self, y: f64) -> Result<Complex64> {
        let centers = self.slit_centers();
        let mut sum = Complex64::new(0.0, 0.0);
        for &c in &centers {
            sum += self.base.evaluate(y - c)?;
        }
        Ok(sum / (centers.len() as f64).sqrt())
    }

    /// Single-slit envelope amplitude at momentum `p` for closed-form bases.
    fn base_closed_amplitude(&self, p: f64) -> Option<f64> {
        let g = self.geometry();
        match self.base.form() {
            ApertureForm::Boxcar => Some(boxcar_momentum_amplitude(g, p)),
            ApertureForm::HardWall { n: 1 } => Some(hard_wall_ground_momentum_amplitude(g, p)),
            _ => None,
        }
    }

    /// Composed momentum amplitude tabulated on `p_grid`:
    /// `phi_N = phi_base * array factor`.
    ///
    /// Closed-form bases (boxcar, hard-wall ground state) use their exact
    /// envelope; any other base is transformed numerically once and then
    /// multiplied by the interference factor.
    pub fn compose_momentum_amplitude(&self, p_grid: &[f64]) -> Result<MomentumAmplitude> {
        let g = *self.geometry();
        let centers = self.slit_centers();
        let envelope: Vec<Complex64> = match self.base_closed_amplitude(0.0) {
            Some(_) => p_grid
                .iter()
                .map(|&p| {
                    Complex64::new(
                        self.base_closed_amplitude(p).expect("closed-form base"),
                        0.0,
                    )
                })
                .collect(),
            None => {
                let amp = numeric_momentum_amplitude(&self.base, p_grid)?;
                let (_, phi) = amp.grid().expect("numeric amplitude has a grid");
                phi.to_vec()
            }
        };
        let inv_sqrt_n = 1.0 / (centers.len() as f64).sqrt();
        let phi: Vec<Complex64> = p_grid
            .iter()
            .zip(envelope.iter())
            .map(|(&p, &env)| env * array_sum(&centers, p, g.hbar()) * inv_sqrt_n)
            .collect();
        MomentumAmplitude::from_grid(g, p_grid.to_vec(), phi)
    }

    /// Position moments of the composed state.
    ///
    /// With non-overlapping openings the translated copies are orthogonal,
    /// so the composed variance is the base variance plus the variance of
    /// the slit-center ladder (`d^2 (N^2 - 1)/12` for the symmetric array).
    pub fn position_moments(&self) -> Result<crate::uncertainty::PositionMoments> {
        let base = crate::uncertainty::position_moments(&self.base)?;
        let centers = self.slit_centers();
        let n = centers.len() as f64;
        let mean_c = centers.iter().sum::<f64>() / n;
        let mean_c2 = centers.iter().map(|c| c * c).sum::<f64>() / n;
        Ok(crate::uncertainty::PositionMoments {
            mean: base.mean + mean_c,
            variance: base.variance + (mean_c2 - mean_c * mean_c),
        })
    }

    /// Composed amplitude at a single momentum, for closed-form bases only.
    pub fn amplitude_at(&self, p: f64) -> Result<Complex64> {
        let env = self.base_closed_amplitude(p).ok_or_else(|| {
            Error::Contract(
                "pointwise composition needs a closed-form base state".into(),
            )
        })?;
        let centers = self.slit_centers();
        let factor = array_sum(&centers, p, self.geometry().hbar());
        Ok(factor * env / (centers.len() as f64).sqrt())
    }
}

/// The bare interference sum `Σ_j exp(-i p y_j / hbar)`.
fn array_sum(centers: &[f64], p: f64, hbar: f64) -> Complex64 {
    centers
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &y| {
            acc + Complex64::from_polar(1.0, -p * y / hbar)
        })
}

/// Normalized interference intensity `|Σ_j exp(-i p y_j / hbar)|^2 / N`.
///
/// Equals `N` exactly at the principal maxima `p = 2 pi m hbar / d` and
/// averages to 1, so multiplying the single-slit intensity by it preserves
/// total probability.
pub fn array_factor_intensity(geometry: &SlitGeometry, p: f64) -> Result<f64> {
    if !p.is_finite() {
        return Err(Error::Domain(format!("momentum must be finite, got {p}")));
    }
    let n = geometry.slit_count();
    let d = geometry.spacing_d().unwrap_or(0.0);
    let centers: Vec<f64> = (0..n)
        .map(|j| (j as f64 - (n - 1) as f64 / 2.0) * d)
        .collect();
    Ok(array_sum(&centers, p, geometry.hbar()).norm_sqr() / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics;
    use std::f64::consts::PI;

    fn double_slit(d: f64) -> SlitGeometry {
        SlitGeometry::array(1.0, 2, Some(d), 10.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn slit_centers_are_symmetric() {
        let s = MultiSlitState::new(ApertureState::boxcar(double_slit(3.0))).unwrap();
        assert_eq!(s.slit_centers(), vec![-1.5, 1.5]);
        let g3 = SlitGeometry::array(1.0, 3, Some(2.0), 10.0, 1.0, 1.0).unwrap();
        let s3 = MultiSlitState::new(ApertureState::boxcar(g3)).unwrap();
        assert_eq!(s3.slit_centers(), vec![-2.0, 0.0, 2.0]);
    }

    #[test]
    fn single_slit_composition_degenerates_to_base() {
        let g = SlitGeometry::single(1.0, 10.0, 1.0, 1.0).unwrap();
        let s = MultiSlitState::new(ApertureState::boxcar(g)).unwrap();
        for &p in &[0.0, 1.3, 5.0] {
            let composed = s.amplitude_at(p).unwrap();
            let base = boxcar_momentum_amplitude(&g, p);
            assert!((composed.re - base).abs() < 1e-15);
            assert!(composed.im.abs() < 1e-15);
        }
    }

    #[test]
    fn composed_wavefunction_is_unit_normalized() {
        let g = double_slit(3.0);
        let s = MultiSlitState::new(ApertureState::hard_wall(g, 1).unwrap()).unwrap();
        // Integrate |psi_N|^2 across the full array support.
        let (lo, hi) = (-2.5, 2.5);
        let n = 20_001;
        let h = (hi - lo) / (n - 1) as f64;
        let dens: Vec<f64> = (0..n)
            .map(|i| s.total_wavefunction(lo + h * i as f64).unwrap().norm_sqr())
            .collect();
        let norm = numerics::integrate_samples(&dens, h);
        assert!((norm - 1.0).abs() < 1e-8, "norm {norm}");
    }

    #[test]
    fn array_factor_peaks_at_principal_maxima() {
        let g = double_slit(3.0);
        for m in 0..3 {
            let p = 2.0 * PI * m as f64 / 3.0;
            let af = array_factor_intensity(&g, p).unwrap();
            assert!((af - 2.0).abs() < 1e-12, "m={m}: {af}");
        }
        let g3 = SlitGeometry::array(1.0, 3, Some(2.5), 10.0, 1.0, 1.0).unwrap();
        let p1 = 2.0 * PI / 2.5;
        assert!((array_factor_intensity(&g3, p1).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn double_slit_interference_zero() {
        // d = 3: the first interference zero sits at p = pi/3, where the two
        // paths are exactly out of phase.
        let g = double_slit(3.0);
        let s = MultiSlitState::new(ApertureState::boxcar(g)).unwrap();
        let z = s.amplitude_at(PI / 3.0).unwrap();
        assert!(z.norm_sqr() < 1e-28, "intensity {}", z.norm_sqr());
        // Central intensity: envelope (1/2pi) times array factor 2 = 1/pi.
        let c = s.amplitude_at(0.0).unwrap();
        assert!((c.norm_sqr() - 1.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn composition_matches_factorized_product() {
        let g = double_slit(3.0);
        let s = MultiSlitState::new(ApertureState::boxcar(g)).unwrap();
        let grid = numerics::linspace(-20.0, 20.0, 801);
        let amp = s.compose_momentum_amplitude(&grid).unwrap();
        let (p, phi) = amp.grid().unwrap();
        for (pk, zk) in p.iter().zip(phi.iter()) {
            let env = boxcar_momentum_amplitude(&g, *pk);
            let want = env * env * array_factor_intensity(&g, *pk).unwrap();
            assert!(
                (zk.norm_sqr() - want).abs() < 1e-13,
                "p={pk}: {} vs {want}",
                zk.norm_sqr()
            );
        }
    }

    #[test]
    fn composed_position_variance_adds_center_ladder() {
        let g = double_slit(3.0);
        let s = MultiSlitState::new(ApertureState::hard_wall(g, 1).unwrap()).unwrap();
        let m = s.position_moments().unwrap();
        // base variance + d^2 (N^2 - 1)/12 with d = 3, N = 2.
        let base_var = 1.0 / 12.0 - 1.0 / (2.0 * PI * PI);
        let want = base_var + 9.0 * 3.0 / 12.0;
        assert!((m.variance - want).abs() < 1e-14);
        assert!(m.mean.abs() < 1e-15);
        // Oracle: integrate y^2 |psi_N|^2 directly (the hard-wall base keeps
        // the density continuous, so the quadrature converges cleanly).
        let (lo, hi) = (-2.5, 2.5);
        let n = 40_001;
        let h = (hi - lo) / (n - 1) as f64;
        let vals: Vec<f64> = (0..n)
            .map(|i| {
                let y = lo + h * i as f64;
                y * y * s.total_wavefunction(y).unwrap().norm_sqr()
            })
            .collect();
        let brute = numerics::integrate_samples(&vals, h);
        assert!((brute - want).abs() < 1e-8, "brute {brute} want {want}");
    }

    #[test]
    fn pointwise_composition_requires_closed_base() {
        let g = double_slit(3.0);
        let vals = vec![num_complex::Complex64::new(1.0, 0.0); 64];
        let s = MultiSlitState::new(ApertureState::sampled(g, &vals).unwrap()).unwrap();
        assert!(s.amplitude_at(1.0).is_err());
        // Grid composition still works through the numeric transform.
        let grid = numerics::linspace(-10.0, 10.0, 201);
        assert!(s.compose_momentum_amplitude(&grid).is_ok());
    }
}
