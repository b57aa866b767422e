//! Transverse aperture states.
//!
//! The wavefunction immediately behind the barrier models how the opening
//! prepares the particle in the transverse direction `y`:
//!
//! * a *boxcar* state — constant amplitude `1/sqrt(a)` across the opening,
//!   the minimal "the slit only cuts out a strip" assumption;
//! * a *hard-wall eigenstate* — the bound state `sqrt(2/a) sin(n pi (y + a/2)/a)`
//!   of an infinitely deep well of width `a`, which vanishes at the slit edges;
//! * a *sampled* state — caller-provided amplitudes on a uniform grid across
//!   the opening, renormalized on construction.
//!
//! All states are unit-normalized over the opening and vanish outside it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::SlitGeometry;
use crate::numerics;

/// Functional form of an aperture state.
#[derive(Debug, Clone)]
pub enum ApertureForm {
    /// Constant amplitude `1/sqrt(a)` across the opening.
    Boxcar,
    /// Bound state `n >= 1` of a hard-wall well spanning the opening.
    HardWall { n: u32 },
    /// Amplitudes sampled uniformly on `[-a/2, a/2]` (endpoints included),
    /// renormalized to unit probability.
    Sampled { values: Vec<Complex64> },
}

/// A unit-normalized transverse state confined to the slit opening.
#[derive(Debug, Clone)]
pub struct ApertureState {
    geometry: SlitGeometry,
    form: ApertureForm,
}

impl ApertureState {
    /// Constant-amplitude state across the opening.
    pub fn boxcar(geometry: SlitGeometry) -> Self {
        Self {
            geometry,
            form: ApertureForm::Boxcar,
        }
    }

    /// Hard-wall bound state with index `n >= 1` (`n = 1` is the ground state).
    pub fn hard_wall(geometry: SlitGeometry, n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain(
                "hard-wall state index must be at least 1".into(),
            ));
        }
        Ok(Self {
            geometry,
            form: ApertureForm::HardWall { n },
        })
    }

    /// State built from `values` sampled uniformly across the opening,
    /// endpoints included. Requires at least 4 finite samples with nonzero
    /// norm; the stored amplitudes are rescaled to unit probability.
    pub fn sampled(geometry: SlitGeometry, values: &[Complex64]) -> Result<Self> {
        if values.len() < 4 {
            return Err(Error::Contract(format!(
                "sampled state needs at least 4 samples, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Contract(
                "sampled state contains a non-finite amplitude".into(),
            ));
        }
        let a = geometry.width_a();
        let h = a / (values.len() - 1) as f64;
        let dens: Vec<f64> = values.iter().map(|v| v.norm_sqr()).collect();
        let norm = numerics::integrate_samples(&dens, h);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Contract(
                "sampled state has zero or non-finite norm".into(),
            ));
        }
        let scale = 1.0 / norm.sqrt();
        let values = values.iter().map(|v| v * scale).collect();
        Ok(Self {
            geometry,
            form: ApertureForm::Sampled { values },
        })
    }

    pub fn geometry(&self) -> &SlitGeometry {
        &self.geometry
    }

    pub fn form(&self) -> &ApertureForm {
        &self.form
    }

    /// Number of uniform samples used to represent this state in position
    /// space (native count for sampled states, a dense default otherwise).
    pub(crate) fn position_sample_count(&self) -> usize {
        match &self.form {
            ApertureForm::Sampled { values } => values.len(),
            _ => 8193,
        }
    }

    /// Amplitude at transverse position `y`; zero outside the opening.
    ///
    /// Sampled states are evaluated by linear interpolation between grid
    /// points. Non-finite `y` is a domain error.
    pub fn evaluate(&self, y: f64) -> Result<Complex64> {
        if !y.is_finite() {
            return Err(Error::Domain(format!(
                "transverse position must be finite, got {y}"
            )));
        }
        let a = self.geometry.width_a();
        let half = a / 2.0;
        if y < -half || y > half {
            return Ok(Complex64::new(0.0, 0.0));
        }
        match &self.form {
            ApertureForm::Boxcar => Ok(Complex64::new(1.0 / a.sqrt(), 0.0)),
            ApertureForm::HardWall { n } => {
                let phase = *n as f64 * std::f64::consts::PI * (y + half) / a;
                Ok(Complex64::new((2.0 / a).sqrt() * phase.sin(), 0.0))
            }
            ApertureForm::Sampled { values } => {
                let h = a / (values.len() - 1) as f64;
                let t = (y + half) / h;
                let i = (t.floor() as usize).min(values.len() - 2);
                let frac = t - i as f64;
                Ok(values[i] * (1.0 - frac) + values[i + 1] * frac)
            }
        }
    }

    /// Probability density `|psi(y)|^2`.
    pub fn density(&self, y: f64) -> Result<f64> {
        Ok(self.evaluate(y)?.norm_sqr())
    }
}

/// Bound-state energy `E_n = n^2 pi^2 hbar^2 / (2 m a^2)` of the hard-wall
/// well spanning the opening; `n >= 1`.
pub fn bound_state_energy(geometry: &SlitGeometry, n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain(
            "bound-state index must be at least 1".into(),
        ));
    }
    let k = n as f64 * std::f64::consts::PI * geometry.hbar() / geometry.width_a();
    Ok(k * k / (2.0 * geometry.mass()))
}

/// Outcome of the longitudinal energy-balance check at the slit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transmission {
    /// Whether the incident energy covers the transverse confinement energy.
    pub allowed: bool,
    /// Kinetic energy `p^2 / (2 m)` of the incident beam.
    pub incident_energy: f64,
    /// Transverse ground-state energy demanded by confinement to the opening.
    pub transverse_energy: f64,
    /// Longitudinal momentum `sqrt(2 m (E - E_y))` behind the slit, present
    /// when transmission is allowed (zero exactly at threshold).
    pub longitudinal_momentum: Option<f64>,
}

/// Energy balance for a particle of momentum `p` entering the opening.
///
/// Confinement to a strip of width `a` costs at least the hard-wall
/// ground-state energy `E_y = (pi hbar / a)^2 / (2 m)`; transmission is
/// allowed when the incident kinetic energy `E = p^2/(2 m)` is at least
/// `E_y`, and the surviving longitudinal momentum is `sqrt(2 m (E - E_y))`.
pub fn transmission_allowed(geometry: &SlitGeometry, p: f64) -> Result<Transmission> {
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::Domain(format!(
            "incident momentum must be finite and positive, got {p}"
        )));
    }
    let m = geometry.mass();
    let incident = p * p / (2.0 * m);
    let transverse = bound_state_energy(geometry, 1)?;
    let allowed = incident >= transverse;
    let longitudinal = if allowed {
        Some((2.0 * m * (incident - transverse)).max(0.0).sqrt())
    } else {
        None
    };
    Ok(Transmission {
        allowed,
        incident_energy: incident,
        transverse_energy: transverse,
        longitudinal_momentum: longitudinal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_geometry() -> SlitGeometry {
        SlitGeometry::single(1.0, 10.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn boxcar_amplitude_is_uniform_and_compact() {
        let g = SlitGeometry::single(2.0, 10.0, 1.0, 1.0).unwrap();
        let s = ApertureState::boxcar(g);
        let inside = s.evaluate(0.3).unwrap();
        assert!((inside.re - 1.0 / 2.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(inside.im, 0.0);
        // Endpoints belong to the opening; just outside is zero.
        assert!(s.evaluate(1.0).unwrap().norm() > 0.0);
        assert_eq!(s.evaluate(1.0 + 1e-12).unwrap().norm(), 0.0);
        assert_eq!(s.evaluate(-7.0).unwrap().norm(), 0.0);
    }

    #[test]
    fn hard_wall_state_vanishes_at_edges_and_peaks_centrally() {
        let s = ApertureState::hard_wall(unit_geometry(), 1).unwrap();
        assert!(s.evaluate(-0.5).unwrap().norm() < 1e-15);
        assert!(s.evaluate(0.5).unwrap().norm() < 1e-16 * 10.0);
        let center = s.evaluate(0.0).unwrap().re;
        assert!((center - 2.0_f64.sqrt()).abs() < 1e-15); // sqrt(2/a) at the antinode
        // Ground state is even about the slit center.
        let l = s.evaluate(-0.2).unwrap().re;
        let r = s.evaluate(0.2).unwrap().re;
        assert!((l - r).abs() < 1e-15);
    }

    #[test]
    fn second_state_is_odd_about_center() {
        let s = ApertureState::hard_wall(unit_geometry(), 2).unwrap();
        assert!(s.evaluate(0.0).unwrap().norm() < 1e-15);
        let l = s.evaluate(-0.2).unwrap().re;
        let r = s.evaluate(0.2).unwrap().re;
        assert!((l + r).abs() < 1e-15);
    }

    #[test]
    fn states_are_unit_normalized() {
        let g = SlitGeometry::single(2.5, 10.0, 1.0, 1.0).unwrap();
        for s in [
            ApertureState::boxcar(g),
            ApertureState::hard_wall(g, 1).unwrap(),
            ApertureState::hard_wall(g, 3).unwrap(),
        ] {
            let n = 4001;
            let h = 2.5 / (n - 1) as f64;
            let dens: Vec<f64> = (0..n)
                .map(|i| s.density(-1.25 + h * i as f64).unwrap())
                .collect();
            let norm = numerics::integrate_samples(&dens, h);
            assert!((norm - 1.0).abs() < 1e-10, "norm {norm}");
        }
    }

    #[test]
    fn sampled_state_is_renormalized_on_construction() {
        let g = unit_geometry();
        // Deliberately non-normalized boxcar samples.
        let vals = vec![Complex64::new(3.0, 0.0); 101];
        let s = ApertureState::sampled(g, &vals).unwrap();
        let n = 101;
        let h = 1.0 / (n - 1) as f64;
        let dens: Vec<f64> = (0..n)
            .map(|i| s.density(-0.5 + h * i as f64).unwrap())
            .collect();
        assert!((numerics::integrate_samples(&dens, h) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampled_state_rejects_bad_input() {
        let g = unit_geometry();
        assert!(ApertureState::sampled(g, &[Complex64::new(1.0, 0.0); 3]).is_err());
        let mut vals = vec![Complex64::new(1.0, 0.0); 16];
        vals[7] = Complex64::new(f64::NAN, 0.0);
        assert!(ApertureState::sampled(g, &vals).is_err());
        assert!(ApertureState::sampled(g, &[Complex64::new(0.0, 0.0); 16]).is_err());
    }

    #[test]
    fn non_finite_position_is_a_domain_error() {
        let s = ApertureState::boxcar(unit_geometry());
        assert!(s.evaluate(f64::NAN).is_err());
        assert!(s.evaluate(f64::INFINITY).is_err());
    }

    #[test]
    fn hard_wall_index_zero_is_rejected() {
        assert!(ApertureState::hard_wall(unit_geometry(), 0).is_err());
        assert!(bound_state_energy(&unit_geometry(), 0).is_err());
    }

    #[test]
    fn bound_state_energies_match_closed_form() {
        let g = unit_geometry();
        let e1 = bound_state_energy(&g, 1).unwrap();
        assert!((e1 - PI * PI / 2.0).abs() < 1e-12);
        // Quadratic index scaling.
        let e2 = bound_state_energy(&g, 2).unwrap();
        assert!((e2 - 4.0 * e1).abs() < 1e-11);
        // Wider slit at fixed index costs less.
        let wide = SlitGeometry::single(2.0, 10.0, 1.0, 1.0).unwrap();
        let e1w = bound_state_energy(&wide, 1).unwrap();
        assert!((e1w - PI * PI / 8.0).abs() < 1e-12);
    }

    #[test]
    fn transmission_threshold_behaves_exactly() {
        let g = unit_geometry();
        // Below threshold: blocked.
        let below = transmission_allowed(&g, PI * (1.0 - 1e-12)).unwrap();
        assert!(!below.allowed);
        assert_eq!(below.longitudinal_momentum, None);
        // Exactly at threshold p = pi hbar / a: allowed with zero
        // longitudinal momentum.
        let at = transmission_allowed(&g, PI).unwrap();
        assert!(at.allowed);
        assert_eq!(at.longitudinal_momentum, Some(0.0));
        // Above threshold.
        let above = transmission_allowed(&g, 10.0).unwrap();
        assert!(above.allowed);
        let pz = above.longitudinal_momentum.unwrap();
        assert!((pz - (100.0 - PI * PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn transmission_rejects_bad_momentum() {
        let g = unit_geometry();
        assert!(transmission_allowed(&g, 0.0).is_err());
        assert!(transmission_allowed(&g, -3.0).is_err());
        assert!(transmission_allowed(&g, f64::NAN).is_err());
    }
}
