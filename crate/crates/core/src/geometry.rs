//! Slit geometry and beam parameters.
//!
//! A [`SlitGeometry`] bundles everything the rest of the library needs to
//! know about the experimental arrangement: slit width `a`, the number of
//! slits and their center-to-center spacing `d`, the incident momentum `p`,
//! and the unit system via `hbar` and the particle mass.

use crate::error::{Error, Result};

/// Geometry of a single slit or a uniform array of slits, together with the
/// incident beam momentum and the unit constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitGeometry {
    width_a: f64,
    slit_count: u32,
    spacing_d: Option<f64>,
    momentum_p: f64,
    hbar: f64,
    mass: f64,
}

fn require_positive(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::InvalidGeometry(format!(
            "{name} must be finite and positive, got {value}"
        )));
    }
    Ok(())
}

impl SlitGeometry {
    /// Single-slit arrangement.
    pub fn single(width_a: f64, momentum_p: f64, hbar: f64, mass: f64) -> Result<Self> {
        Self::array(width_a, 1, None, momentum_p, hbar, mass)
    }

    /// Array of `slit_count` identical slits with center spacing `spacing_d`.
    ///
    /// `spacing_d` must be present exactly when `slit_count >= 2`, and must
    /// satisfy `d >= a` so adjacent openings do not overlap.
    pub fn array(
        width_a: f64,
        slit_count: u32,
        spacing_d: Option<f64>,
        momentum_p: f64,
        hbar: f64,
        mass: f64,
    ) -> Result<Self> {
        require_positive("slit width", width_a)?;
        require_positive("incident momentum", momentum_p)?;
        require_positive("hbar", hbar)?;
        require_positive("mass", mass)?;
        if slit_count == 0 {
            return Err(Error::InvalidGeometry(
                "slit count must be at least 1".into(),
            ));
        }
        match spacing_d {
            None => {
                if slit_count >= 2 {
                    return Err(Error::InvalidGeometry(format!(
                        "spacing is required for {slit_count} slits"
                    )));
                }
            }
            Some(d) => {
                if slit_count < 2 {
                    return Err(Error::InvalidGeometry(
                        "spacing given but only one slit".into(),
                    ));
                }
                require_positive("slit spacing", d)?;
                if d < width_a {
                    return Err(Error::InvalidGeometry(format!(
                        "slit spacing {d} is smaller than slit width {width_a}; openings overlap"
                    )));
                }
            }
        }
        Ok(Self {
            width_a,
            slit_count,
            spacing_d,
            momentum_p,
            hbar,
            mass,
        })
    }

    pub fn width_a(&self) -> f64 {
        self.width_a
    }

    pub fn slit_count(&self) -> u32 {
        self.slit_count
    }

    pub fn spacing_d(&self) -> Option<f64> {
        self.spacing_d
    }

    pub fn momentum_p(&self) -> f64 {
        self.momentum_p
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Planck constant `h = 2*pi*hbar` in the configured units.
    pub fn planck_h(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.hbar
    }

    /// de Broglie wavelength `h / p` of the incident beam.
    pub fn wavelength(&self) -> f64 {
        self.planck_h() / self.momentum_p
    }

    /// Same arrangement with a different incident momentum.
    pub fn with_momentum(&self, momentum_p: f64) -> Result<Self> {
        require_positive("incident momentum", momentum_p)?;
        let mut g = *self;
        g.momentum_p = momentum_p;
        Ok(g)
    }
}
