//! The three subcommands: `pattern` (intensity CSV), `report` (full JSON
//! diagnostics for one model), and `compare` (boxcar vs hard-wall ground
//! state side by side).

use std::fmt::Write as _;

use serde_json::{json, Value};

use slitlab_core::{
    array_factor_intensity, boxcar_momentum_amplitude, bound_state_energy,
    classical_uncertainty_estimate, first_pattern_minimum, hard_wall_ground_momentum_amplitude,
    numeric_momentum_amplitude, side_lobe_ratio, transmission_allowed, ApertureState, Error,
    MomentumAmplitude, MomentumMoments, PositionMoments, ScanConfig, ScanVerdict, SecondMoment,
    SlitGeometry,
};

use crate::config::{BaseKind, CliError, CliResult, ModelKind, ResolvedRun, RunState};
use crate::output::{fmt12, num12, opt_num12};

/// CSV intensity table over the run's momentum grid.
///
/// Columns depend on the model: single-slit analytic runs tabulate both
/// closed forms side by side (`p_y,intensity_boxcar,intensity_well`),
/// sampled runs their numeric transform, multi-slit runs the composed
/// pattern with envelope and interference factor.
pub fn run_pattern(run: &ResolvedRun) -> CliResult<String> {
    let grid = run.grid();
    let g = &run.geometry;
    let mut out = String::new();
    match &run.state {
        RunState::Single { .. } => {
            out.push_str("p_y,intensity_boxcar,intensity_well\n");
            for &p in &grid {
                let b = boxcar_momentum_amplitude(g, p);
                let w = hard_wall_ground_momentum_amplitude(g, p);
                writeln!(out, "{},{},{}", fmt12(p), fmt12(b * b), fmt12(w * w))
                    .expect("string write");
            }
        }
        RunState::Sampled { state, .. } => {
            out.push_str("p_y,intensity_sampled\n");
            let amp = numeric_momentum_amplitude(state, &grid)?;
            let (p, phi) = amp.grid().expect("numeric amplitude");
            for (pk, zk) in p.iter().zip(phi.iter()) {
                writeln!(out, "{},{}", fmt12(*pk), fmt12(zk.norm_sqr())).expect("string write");
            }
        }
        RunState::MultiSlit { base, state } => {
            out.push_str("p_y,intensity_multislit,envelope_intensity,array_factor\n");
            let amp = state.compose_momentum_amplitude(&grid)?;
            let (p, phi) = amp.grid().expect("composed amplitude");
            for (pk, zk) in p.iter().zip(phi.iter()) {
                let env = match base {
                    BaseKind::Boxcar => boxcar_momentum_amplitude(g, *pk),
                    BaseKind::Well => hard_wall_ground_momentum_amplitude(g, *pk),
                };
                let af = array_factor_intensity(g, *pk)?;
                writeln!(
                    out,
                    "{},{},{},{}",
                    fmt12(*pk),
                    fmt12(zk.norm_sqr()),
                    fmt12(env * env),
                    fmt12(af)
                )
                .expect("string write");
            }
        }
    }
    Ok(out)
}

fn geometry_json(run: &ResolvedRun) -> Value {
    let g = &run.geometry;
    let mut cfg = json!({
        "model": run.model.name(),
        "width": num12(g.width_a()),
        "momentum": num12(g.momentum_p()),
        "hbar": num12(g.hbar()),
        "mass": num12(g.mass()),
        "wavelength": num12(g.wavelength()),
        "grid": {
            "min": num12(run.grid_min),
            "max": num12(run.grid_max),
            "points": run.grid_points,
        },
    });
    let obj = cfg.as_object_mut().expect("object");
    if let RunState::MultiSlit { base, .. } = &run.state {
        obj.insert("slits".into(), Value::from(g.slit_count()));
        obj.insert("spacing".into(), opt_num12(g.spacing_d()));
        obj.insert("base".into(), Value::from(base.name()));
    }
    if let RunState::Sampled { path, .. } = &run.state {
        obj.insert(
            "samples".into(),
            Value::from(path.display().to_string()),
        );
    }
    cfg
}

fn transmission_json(g: &SlitGeometry, notes: &mut Vec<String>) -> CliResult<Value> {
    let tr = transmission_allowed(g, g.momentum_p())?;
    if !tr.allowed {
        notes.push(format!(
            "Transmission blocked: the incident kinetic energy {:.6} is below the transverse \
             confinement energy {:.6} demanded by a slit of width {}.",
            tr.incident_energy,
            tr.transverse_energy,
            g.width_a()
        ));
    }
    Ok(json!({
        "allowed": tr.allowed,
        "incident_energy": num12(tr.incident_energy),
        "transverse_energy": num12(tr.transverse_energy),
        "longitudinal_momentum": opt_num12(tr.longitudinal_momentum),
    }))
}

fn scan_json(m: &MomentumMoments) -> Value {
    let verdict = match m.scan.verdict {
        ScanVerdict::Convergent => "convergent",
        ScanVerdict::LinearDivergent => "linear_divergent",
        ScanVerdict::Other => "other",
    };
    json!({
        "cutoffs": m.scan.cutoffs.iter().map(|c| num12(*c)).collect::<Vec<_>>(),
        "partial_moments": m.scan.partial_moments.iter().map(|v| num12(*v)).collect::<Vec<_>>(),
        "fit": {
            "slope": num12(m.scan.fit.slope),
            "intercept": num12(m.scan.fit.intercept),
            "rms_residual": num12(m.scan.fit.rms_residual),
        },
        "verdict": verdict,
    })
}

fn momentum_json(m: &MomentumMoments) -> Value {
    let (kind, value, slope) = match m.second_moment {
        SecondMoment::Finite(v) => ("finite", Some(v), None),
        SecondMoment::LinearDivergent { slope } => ("linear_divergent", None, Some(slope)),
        SecondMoment::Indeterminate => ("indeterminate", None, None),
    };
    json!({
        "mean": num12(m.mean),
        "second_moment": {
            "kind": kind,
            "value": opt_num12(value),
            "cutoff_slope": opt_num12(slope),
        },
        "spread": opt_num12(m.spread),
        "cutoff_scan": scan_json(m),
    })
}

fn position_json(p: &PositionMoments) -> Value {
    json!({
        "mean": num12(p.mean),
        "variance": num12(p.variance),
        "spread": num12(p.spread()),
    })
}

/// Pattern quantities (first zero, side-lobe ratio, central intensity) with
/// failures reported as nulls rather than run aborts.
fn pattern_json(amp: &MomentumAmplitude, notes: &mut Vec<String>) -> Value {
    let central = amp.intensity(0.0).ok();
    let first_zero = match first_pattern_minimum(amp) {
        Ok(z) => Some(z),
        Err(e) => {
            notes.push(format!("No first pattern zero reported: {e}."));
            None
        }
    };
    let lobe = side_lobe_ratio(amp).ok();
    json!({
        "central_intensity": opt_num12(central),
        "first_minimum": opt_num12(first_zero),
        "side_lobe_ratio": opt_num12(lobe),
    })
}

fn classical_json(g: &SlitGeometry, notes: &mut Vec<String>) -> Value {
    match classical_uncertainty_estimate(g) {
        Ok(est) => {
            notes.push(
                "The classical estimate uses full-width measures from the first diffraction \
                 minimum (delta_y = a, delta_p = h/a), so its product is exactly h; it is a \
                 scale statement, not a standard-deviation bound."
                    .into(),
            );
            json!({
                "kind": "first-minimum full-width estimate",
                "delta_y": num12(est.delta_y),
                "delta_p": num12(est.delta_p),
                "product": num12(est.product),
                "theta_min": num12(est.theta_min),
            })
        }
        Err(Error::NoMinimum { wavelength, width }) => {
            notes.push(format!(
                "The de Broglie wavelength {wavelength:.6} exceeds the slit width {width}: the \
                 classical pattern has no minimum and no classical spread estimate exists."
            ));
            Value::Null
        }
        Err(e) => {
            notes.push(format!("No classical estimate: {e}."));
            Value::Null
        }
    }
}

fn divergence_notes(m: &MomentumMoments, notes: &mut Vec<String>) {
    match m.second_moment {
        SecondMoment::LinearDivergent { slope } => notes.push(format!(
            "The partial second momentum moment grows linearly with the integration cutoff \
             (slope {slope:.6}): the momentum spread is unbounded and no finite uncertainty \
             product exists. This is the signature of an intensity tail falling off as \
             1/p_y^2."
        )),
        SecondMoment::Finite(_) => notes.push(
            "The cutoff ladder converges: the intensity tail falls off as 1/p_y^4, fast \
             enough for a finite momentum spread."
                .into(),
        ),
        SecondMoment::Indeterminate => notes.push(
            "The cutoff ladder neither settled nor grew linearly; the second momentum moment \
             is reported as indeterminate."
                .into(),
        ),
    }
}

/// Full JSON diagnostics for the configured model.
pub fn run_report(run: &ResolvedRun) -> CliResult<String> {
    let g = &run.geometry;
    let mut notes: Vec<String> = Vec::new();

    let transmission = transmission_json(g, &mut notes)?;
    let ground_energy = bound_state_energy(g, 1)?;

    let (position, momentum, pattern) = match &run.state {
        RunState::Single { kind, state } => {
            let stats = slitlab_core::uncertainty_report(state)?;
            let amp = match kind {
                ModelKind::Boxcar => MomentumAmplitude::analytic_boxcar(*g),
                _ => MomentumAmplitude::analytic_hard_wall_ground(*g),
            };
            let pattern = pattern_json(&amp, &mut notes);
            if *kind == ModelKind::Well {
                notes.push(
                    "The first true zero of the hard-wall ground-state pattern lies at \
                     p_y = 3 pi hbar / a, 1.5 times the uniform-aperture zero at \
                     2 pi hbar / a; the point p_y = pi hbar / a is a removable feature \
                     with finite intensity, not a zero."
                        .into(),
                );
            }
            (stats.position, stats.momentum, pattern)
        }
        RunState::Sampled { state, .. } => {
            notes.push(format!(
                "Slit width {} inferred from the span of the sampled support.",
                g.width_a()
            ));
            if let slitlab_core::ApertureForm::Sampled { values } = state.form() {
                notes.push(format!(
                    "Tabulated on {} samples: the divergence scan is capped at the \
                     momentum the sample spacing resolves.",
                    values.len()
                ));
            }
            let stats = slitlab_core::uncertainty_report(state)?;
            let amp = numeric_momentum_amplitude(state, &run.grid())?;
            let pattern = pattern_json(&amp, &mut notes);
            (stats.position, stats.momentum, pattern)
        }
        RunState::MultiSlit { state, .. } => {
            let position = state.position_moments()?;
            // Momentum diagnostics on a wide composed grid; the composed
            // second moment equals the base state's because the
            // interference factor averages to one against the envelope.
            let scale = g.hbar() / g.width_a();
            let reach = 1040.0 * std::f64::consts::PI * scale;
            let wide = slitlab_core::numerics::linspace(-reach, reach, 16_641);
            let amp_wide = state.compose_momentum_amplitude(&wide)?;
            let momentum =
                slitlab_core::momentum_moments(&amp_wide, &ScanConfig::grid_ladder_for(g))?;
            let amp_pattern = state.compose_momentum_amplitude(&run.grid())?;
            let pattern = pattern_json(&amp_pattern, &mut notes);
            notes.push(format!(
                "Coherent composition across {} openings multiplies the single-slit \
                 envelope by an interference factor; the envelope (and with it the \
                 momentum spread behavior) is unchanged, while the position variance \
                 gains the slit-center ladder term.",
                g.slit_count()
            ));
            (position, momentum, pattern)
        }
    };

    divergence_notes(&momentum, &mut notes);

    let uncertainty_product = momentum.spread.map(|dp| position.spread() * dp);
    if let Some(prod) = uncertainty_product {
        let hbar = g.hbar();
        let in_h = prod / g.planck_h();
        // Single openings sit an order of magnitude under h; arrays widen
        // the position spread, so state the comparison the numbers support.
        let vs_classical = if in_h <= 0.11 {
            "an order of magnitude below the classical full-width estimate h"
        } else if in_h < 1.0 {
            "below the classical full-width estimate h"
        } else {
            "of the same scale as the classical full-width estimate h"
        };
        notes.push(format!(
            "Finite uncertainty product: delta_y * delta_p = {:.6} hbar = {:.6} h, above \
             the hbar/2 bound and {vs_classical}.",
            prod / hbar, in_h
        ));
    }

    let classical = classical_json(g, &mut notes);

    let report = json!({
        "config": geometry_json(run),
        "transmission": transmission,
        "ground_state_energy": num12(ground_energy),
        "position": position_json(&position),
        "momentum": momentum_json(&momentum),
        "uncertainty_product": opt_num12(uncertainty_product),
        "heisenberg_bound": num12(0.5 * g.hbar()),
        "pattern": pattern,
        "classical_estimate": classical,
        "notes": notes,
    });
    Ok(format!(
        "{}\n",
        serde_json::to_string_pretty(&report).expect("report serializes")
    ))
}

/// Side-by-side comparison of the two closed-form single-slit models for
/// the same geometry.
pub fn run_compare(run: &ResolvedRun) -> CliResult<String> {
    if !matches!(run.state, RunState::Single { .. }) {
        return Err(CliError::Config(
            "compare works on single-slit analytic models (model = boxcar or well)".into(),
        ));
    }
    let g = &run.geometry;
    let mut notes: Vec<String> = Vec::new();

    let box_amp = MomentumAmplitude::analytic_boxcar(*g);
    let well_amp = MomentumAmplitude::analytic_hard_wall_ground(*g);

    let box_stats = slitlab_core::uncertainty_report(&ApertureState::boxcar(*g))?;
    let well_stats =
        slitlab_core::uncertainty_report(&ApertureState::hard_wall(*g, 1)?)?;

    let z_box = first_pattern_minimum(&box_amp)?;
    let z_well = first_pattern_minimum(&well_amp)?;
    let lobe_box = side_lobe_ratio(&box_amp)?;
    let lobe_well = side_lobe_ratio(&well_amp)?;

    notes.push(format!(
        "The hard-wall ground state pushes the first zero out to {:.6} = 1.5 x the \
         uniform-aperture zero {:.6} and suppresses the side lobes by an order of \
         magnitude: softer confinement at the edges spreads the pattern core and damps \
         its wings.",
        z_well, z_box
    ));
    notes.push(
        "The uniform aperture has no finite momentum spread (its partial second moment \
         grows linearly with the cutoff), so only the hard-wall ground state admits a \
         finite uncertainty product."
            .into(),
    );

    let classical = classical_json(g, &mut notes);
    let well_product = well_stats.uncertainty_product;
    if let Some(prod) = well_product {
        notes.push(format!(
            "Quantum product vs classical estimate: {:.6} h vs 1 h.",
            prod / g.planck_h()
        ));
    }

    let box_slope = match box_stats.momentum.second_moment {
        SecondMoment::LinearDivergent { slope } => Some(slope),
        _ => None,
    };

    let report = json!({
        "config": geometry_json(run),
        "central_intensity": {
            "boxcar": num12(box_amp.intensity(0.0)?),
            "well": num12(well_amp.intensity(0.0)?),
        },
        "first_minimum": {
            "boxcar": num12(z_box),
            "well": num12(z_well),
            "well_over_boxcar": num12(z_well / z_box),
        },
        "side_lobe_ratio": {
            "boxcar": num12(lobe_box),
            "well": num12(lobe_well),
        },
        "momentum_spread": {
            "boxcar": opt_num12(box_stats.momentum.spread),
            "boxcar_cutoff_slope": opt_num12(box_slope),
            "well": opt_num12(well_stats.momentum.spread),
        },
        "position_spread": {
            "boxcar": num12(box_stats.position.spread()),
            "well": num12(well_stats.position.spread()),
        },
        "uncertainty_product": {
            "boxcar": opt_num12(box_stats.uncertainty_product),
            "well": opt_num12(well_product),
            "well_in_units_of_h": opt_num12(well_product.map(|p| p / g.planck_h())),
            "classical_estimate": match classical {
                Value::Null => Value::Null,
                ref c => c["product"].clone(),
            },
        },
        "heisenberg_bound": num12(0.5 * g.hbar()),
        "classical_estimate": classical,
        "notes": notes,
    });
    Ok(format!(
        "{}\n",
        serde_json::to_string_pretty(&report).expect("comparison serializes")
    ))
}
