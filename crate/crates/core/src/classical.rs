//! Classical wave-optics correspondence.
//!
//! Far-field (Fraunhofer) single-slit optics predicts the field amplitude
//! `sinc(pi a sin(theta) / lambda)` at diffraction angle `theta`, with the
//! first minimum at `sin(theta) = lambda / a`. Substituting the matter-wave
//! relation `lambda = h / p` turns the optical argument into
//! `a p sin(theta) / (2 hbar)` — exactly the argument of the quantum boxcar
//! amplitude with transverse momentum `p_y = p sin(theta)`. The
//! back-of-the-envelope uncertainty estimate built from the first minimum
//! (`δy = a`, `δp = p sin(theta_min) = h / a`) closes to `δy δp = h`
//! identically.

use crate::error::{Error, Result};
use crate::geometry::SlitGeometry;
use crate::numerics::sinc_ratio;

/// Largest angle (radians) treated as paraxial; beyond it the small-angle
/// identification `p_y ≈ p sin(theta)` should be taken with care.
pub const PARAXIAL_LIMIT: f64 = 0.2;

/// A classical far-field arrangement: wavelength, slit width, and
/// observation angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalSetup {
    wavelength: f64,
    width_a: f64,
    theta: f64,
}

impl ClassicalSetup {
    /// Validates wavelength and width positive and finite, and the angle
    /// finite with `|theta| <= pi/2`.
    pub fn new(wavelength: f64, width_a: f64, theta: f64) -> Result<Self> {
        for (name, v) in [("wavelength", wavelength), ("slit width", width_a)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Domain(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        if !theta.is_finite() || theta.abs() > std::f64::consts::FRAC_PI_2 {
            return Err(Error::Domain(format!(
                "angle must be finite with |theta| <= pi/2, got {theta}"
            )));
        }
        Ok(Self {
            wavelength,
            width_a,
            theta,
        })
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn width_a(&self) -> f64 {
        self.width_a
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Whether the observation angle is within the paraxial regime.
    pub fn is_paraxial(&self) -> bool {
        self.theta.abs() <= PARAXIAL_LIMIT
    }
}

/// Far-field amplitude `sinc(pi a sin(theta) / lambda)` of a uniformly
/// illuminated slit, normalized to 1 at the center of the pattern.
pub fn fraunhofer_amplitude(setup: &ClassicalSetup) -> f64 {
    let arg = std::f64::consts::PI * setup.width_a * setup.theta.sin() / setup.wavelength;
    sinc_ratio(arg)
}

/// The same far-field amplitude written in matter-wave variables: for a
/// beam of momentum `p`, substituting `lambda = h/p` gives the argument
/// `a p sin(theta) / (2 hbar)`.
pub fn matter_wave_amplitude(geometry: &SlitGeometry, theta: f64) -> Result<f64> {
    if !theta.is_finite() || theta.abs() > std::f64::consts::FRAC_PI_2 {
        return Err(Error::Domain(format!(
            "angle must be finite with |theta| <= pi/2, got {theta}"
        )));
    }
    let arg = geometry.width_a() * geometry.momentum_p() * theta.sin() / (2.0 * geometry.hbar());
    Ok(sinc_ratio(arg))
}

/// Angle of the first diffraction minimum, `asin(lambda / a)`.
///
/// Fails with [`Error::NoMinimum`] when `lambda > a`: the pattern then has
/// no zero at any real angle.
pub fn first_minimum_angle(wavelength: f64, width_a: f64) -> Result<f64> {
    for (name, v) in [("wavelength", wavelength), ("slit width", width_a)] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::Domain(format!(
                "{name} must be finite and positive, got {v}"
            )));
        }
    }
    if wavelength > width_a {
        return Err(Error::NoMinimum {
            wavelength,
            width: width_a,
        });
    }
    Ok((wavelength / width_a).asin())
}

/// The classical first-minimum uncertainty estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalEstimate {
    /// Position spread taken as the full slit width `a`.
    pub delta_y: f64,
    /// Momentum spread taken as the transverse momentum at the first
    /// minimum, `p lambda / a = h / a`.
    pub delta_p: f64,
    /// Their product, `h` identically.
    pub product: f64,
    /// Angle of the first minimum the estimate is built from.
    pub theta_min: f64,
}

/// Builds the half-width uncertainty estimate from the first diffraction
/// minimum of the beam described by `geometry`.
///
/// The estimate spreads the whole slit (`δy = a`) and assigns the momentum
/// kick of the first minimum (`δp = p sin(theta_min) = p lambda / a`), so
/// the product is exactly Planck's constant. These are coarse full-width
/// measures, not standard deviations; the quantum product built from true
/// spreads is an order of magnitude below `h`.
pub fn classical_uncertainty_estimate(geometry: &SlitGeometry) -> Result<ClassicalEstimate> {
    let a = geometry.width_a();
    let lambda = geometry.wavelength();
    let theta_min = first_minimum_angle(lambda, a)?;
    let delta_y = a;
    // p * sin(theta_min) = p * lambda / a, which is h / a exactly.
    let delta_p = geometry.planck_h() / a;
    Ok(ClassicalEstimate {
        delta_y,
        delta_p,
        product: geometry.planck_h(),
        theta_min,
    })
}
