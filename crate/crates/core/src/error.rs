//! Error type shared by all library modules.

/// Errors produced by geometry validation, state construction, and the
/// numerical routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Physically inconsistent slit geometry (non-positive width, overlapping
    /// slits, missing spacing, ...).
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// An argument lies outside the mathematical domain of the operation
    /// (non-finite coordinate, non-positive momentum, out-of-range index, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural precondition on the inputs was violated (non-uniform grid,
    /// too few samples, degenerate cutoff ladder, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The far-field diffraction minimum condition has no solution because the
    /// wavelength exceeds the slit width.
    #[error("no diffraction minimum: wavelength {wavelength} exceeds slit width {width}")]
    NoMinimum { wavelength: f64, width: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
