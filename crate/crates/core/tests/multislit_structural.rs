//! Structural checks of the multi-slit composition: the array-factor
//! algebra must agree with direct position-space quadrature of the composed
//! wavefunction, and the expected interference structure must appear.

use num_complex::Complex64;
use slitlab_core::numerics::{integrate_samples_complex, linspace};
use slitlab_core::{
    array_factor_intensity, momentum_moments, ApertureState, MultiSlitState, ScanConfig,
    ScanVerdict, SecondMoment, SlitGeometry,
};
use std::f64::consts::PI;

/// Direct transform of the composed wavefunction by per-opening Simpson
/// quadrature — independent of the array-factor factorization used by the
/// library. Integrating opening by opening keeps the integrand smooth on
/// each panel even for discontinuous profiles.
fn quadrature_amplitude(state: &MultiSlitState, p: f64) -> Complex64 {
    let g = state.geometry();
    let a = g.width_a();
    let hbar = g.hbar();
    let n = 4001usize;
    let mut total = Complex64::new(0.0, 0.0);
    for c in state.slit_centers() {
        let ys = linspace(c - a / 2.0, c + a / 2.0, n);
        let h = a / (n - 1) as f64;
        let vals: Vec<Complex64> = ys
            .iter()
            .map(|&y| {
                state.total_wavefunction(y).unwrap() * Complex64::new(0.0, -p * y / hbar).exp()
            })
            .collect();
        total += integrate_samples_complex(&vals, h);
    }
    total / (2.0 * PI * hbar).sqrt()
}

fn array(width: f64, slits: u32, spacing: f64) -> SlitGeometry {
    SlitGeometry::array(width, slits, Some(spacing), 10.0, 1.0, 1.0).unwrap()
}

/// The composed momentum amplitude equals the direct quadrature of the
/// composed wavefunction, for flat, hard-wall, and tabulated bases.
#[test]
fn composed_amplitude_matches_direct_quadrature() {
    let grid = linspace(-40.0, 40.0, 201);

    let cases: Vec<(&str, MultiSlitState)> = vec![
        (
            "2 flat openings",
            MultiSlitState::new(ApertureState::boxcar(array(1.0, 2, 3.0))).unwrap(),
        ),
        (
            "3 hard-wall openings",
            MultiSlitState::new(ApertureState::hard_wall(array(1.0, 3, 3.0), 1).unwrap()).unwrap(),
        ),
        ("2 tabulated openings", {
            let g = array(1.0, 2, 3.0);
            let ys = linspace(-0.5, 0.5, 1025);
            let values: Vec<Complex64> = ys
                .iter()
                .map(|&y| Complex64::new(2.0_f64.sqrt() * (PI * (y + 0.5)).sin(), 0.0))
                .collect();
            MultiSlitState::new(ApertureState::sampled(g, &values).unwrap()).unwrap()
        }),
    ];

    for (label, state) in &cases {
        let amp = state.compose_momentum_amplitude(&grid).unwrap();
        let (ps, phi) = amp.grid().unwrap();
        let scale = phi.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        for (k, &p) in ps.iter().enumerate() {
            let want = quadrature_amplitude(state, p);
            let diff = (phi[k] - want).norm();
            assert!(
                diff <= 1e-6 * scale,
                "{label}: p={p}, composed {:?}, quadrature {want:?}, diff {diff:e}",
                phi[k]
            );
        }
    }
}

/// At the principal interference maxima `p = 2 pi m hbar / d` every opening
/// contributes in phase: the array factor reaches the opening count.
#[test]
fn principal_maxima_carry_full_array_weight() {
    for &slits in &[2u32, 3, 5] {
        let g = array(1.0, slits, 3.0);
        for m in 0..4 {
            let p = 2.0 * PI * m as f64 / 3.0;
            let af = array_factor_intensity(&g, p).unwrap();
            assert!(
                (af - slits as f64).abs() <= 1e-9,
                "N={slits}, m={m}: array factor {af}"
            );
        }
    }
}

/// For two openings the array factor vanishes at `p = pi hbar / d`, and the
/// composed intensity vanishes with it even where the envelope does not.
#[test]
fn two_opening_destructive_zero() {
    let g = array(1.0, 2, 3.0);
    let p_zero = PI / 3.0;

    let af = array_factor_intensity(&g, p_zero).unwrap();
    assert!(af <= 1e-28, "array factor at the null: {af:e}");

    let state = MultiSlitState::new(ApertureState::boxcar(g)).unwrap();
    let central = state.amplitude_at(0.0).unwrap().norm_sqr();
    let null = state.amplitude_at(p_zero).unwrap().norm_sqr();
    assert!(null <= 1e-28 * central, "composed intensity at the null: {null:e}");

    // Central intensity: envelope 1/(2 pi) times the in-phase weight N = 2.
    assert!(
        (central - 1.0 / PI).abs() <= 1e-12,
        "central intensity {central}"
    );
}

/// Composing across openings redistributes momentum into fringes but leaves
/// the momentum-convergence class and second moment of the base state
/// untouched (the openings do not overlap, so derivative terms do not mix).
#[test]
fn composition_preserves_momentum_convergence_class() {
    // Hard-wall base: still convergent with <p^2> = pi^2 (a = hbar = 1).
    let g = array(1.0, 3, 2.5);
    let state = MultiSlitState::new(ApertureState::hard_wall(g, 1).unwrap()).unwrap();
    let reach = 1040.0 * PI;
    let amp = state
        .compose_momentum_amplitude(&linspace(-reach, reach, 16_641))
        .unwrap();
    let moments = momentum_moments(&amp, &ScanConfig::grid_ladder_for(&g)).unwrap();
    match moments.second_moment {
        SecondMoment::Finite(value) => assert!(
            ((value - PI * PI) / (PI * PI)).abs() <= 1e-3,
            "composed second moment {value}"
        ),
        ref other => panic!("expected finite moment, got {other:?}"),
    }

    // Flat base: still linearly divergent with the single-opening slope.
    let g = array(1.0, 2, 3.0);
    let state = MultiSlitState::new(ApertureState::boxcar(g)).unwrap();
    let amp = state
        .compose_momentum_amplitude(&linspace(-reach, reach, 16_641))
        .unwrap();
    let moments = momentum_moments(&amp, &ScanConfig::grid_ladder_for(&g)).unwrap();
    assert_eq!(moments.scan.verdict, ScanVerdict::LinearDivergent);
    match moments.second_moment {
        SecondMoment::LinearDivergent { slope } => {
            let expected = 2.0 / PI;
            assert!(
                ((slope - expected) / expected).abs() <= 1e-2,
                "composed slope {slope}"
            );
        }
        ref other => panic!("expected linear divergence, got {other:?}"),
    }
}

/// Position variance of the composed state against direct piecewise
/// quadrature of `y^2 |psi_N|^2`.
#[test]
fn composed_position_variance_matches_quadrature() {
    let g = array(1.0, 2, 3.0);
    let state = MultiSlitState::new(ApertureState::hard_wall(g, 1).unwrap()).unwrap();

    let mut brute = 0.0;
    let n = 20_001usize;
    for c in state.slit_centers() {
        let ys = linspace(c - 0.5, c + 0.5, n);
        let h = 1.0 / (n - 1) as f64;
        let vals: Vec<Complex64> = ys
            .iter()
            .map(|&y| Complex64::new(y * y * state.total_wavefunction(y).unwrap().norm_sqr(), 0.0))
            .collect();
        brute += integrate_samples_complex(&vals, h).re;
    }

    let moments = state.position_moments().unwrap();
    assert!(moments.mean.abs() <= 1e-12);
    assert!(
        (moments.variance - brute).abs() <= 1e-8,
        "variance {}, quadrature {brute}",
        moments.variance
    );

    // Separation ladder: base variance plus d^2 (N^2 - 1) / 12.
    let base_variance = 1.0 / 12.0 - 1.0 / (2.0 * PI * PI);
    let expected = base_variance + 9.0 * 3.0 / 12.0;
    assert!((moments.variance - expected).abs() <= 1e-12);
}
