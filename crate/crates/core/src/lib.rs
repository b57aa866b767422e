//! Quantum-mechanical treatment of slit diffraction.
//!
//! A particle passing a slit is prepared in a transverse state confined to
//! the opening; the far-field diffraction pattern is the momentum
//! distribution `|phi(p_y)|^2` of that state. This crate provides:
//!
//! * [`geometry`] — slit/array geometry and beam parameters;
//! * [`aperture`] — transverse states (boxcar, hard-wall bound states,
//!   sampled), bound-state energies, and the transmission energy balance;
//! * [`transform`] — closed-form and numeric momentum amplitudes, pattern
//!   profiles, zeros, side lobes, and probability/tail accounting;
//! * [`uncertainty`] — position/momentum moments, cutoff-ladder divergence
//!   diagnostics, and combined uncertainty reports;
//! * [`classical`] — the Fraunhofer correspondence and the first-minimum
//!   estimate `δy δp = h`;
//! * [`multislit`] — coherent composition of an aperture state across an
//!   array of openings;
//! * [`numerics`] — the quadrature, root-finding, fitting, and asymptotic
//!   tail machinery behind all of the above.
//!
//! The central physical contrast: a boxcar state yields the familiar
//! `sinc^2` pattern but an infinite momentum spread (`⟨p^2⟩` diverges
//! linearly in the integration cutoff), while the hard-wall ground state
//! yields a finite spread with `Δy Δp ≈ 0.568 hbar` — comfortably above the
//! `hbar/2` bound and an order of magnitude below the classical estimate
//! `h`.

pub mod aperture;
pub mod classical;
pub mod error;
pub mod geometry;
pub mod multislit;
pub mod numerics;
pub mod transform;
pub mod uncertainty;

pub use aperture::{
    bound_state_energy, transmission_allowed, ApertureForm, ApertureState, Transmission,
};
pub use classical::{
    classical_uncertainty_estimate, first_minimum_angle, fraunhofer_amplitude,
    matter_wave_amplitude, ClassicalEstimate, ClassicalSetup, PARAXIAL_LIMIT,
};
pub use error::{Error, Result};
pub use geometry::SlitGeometry;
pub use multislit::{array_factor_intensity, MultiSlitState};
pub use transform::{
    boxcar_momentum_amplitude, first_pattern_minimum, hard_wall_ground_momentum_amplitude,
    intensity_profile, numeric_momentum_amplitude, side_lobe_ratio, AmplitudeForm, Extremum,
    ExtremumKind, MomentumAmplitude, PatternProfile,
};
pub use uncertainty::{
    cutoff_scan, momentum_moments, position_moments, uncertainty_report, CutoffScan, LinearFit,
    MomentStats, MomentumMoments, PositionMoments, ScanConfig, ScanVerdict, SecondMoment,
};
