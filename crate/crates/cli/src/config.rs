//! Run configuration: flat key/value config files, command-line overrides,
//! and resolution into validated geometry, state, and grid.
//!
//! Config files use one `key = value` pair per line; blank lines and lines
//! starting with `#` are ignored. Recognized keys:
//!
//! | key        | meaning                                         | default |
//! |------------|-------------------------------------------------|---------|
//! | `model`    | `boxcar`, `well`, `sampled`, `multislit`        | `well`  |
//! | `width`    | slit width `a`                                  | `1.0`   |
//! | `momentum` | incident momentum `p`                           | `10.0`  |
//! | `hbar`     | reduced Planck constant                         | `1.0`   |
//! | `mass`     | particle mass                                   | `1.0`   |
//! | `samples`  | path to a sampled-state file (`sampled` model)  | —       |
//! | `base`     | `boxcar` or `well` (`multislit` model)          | `boxcar`|
//! | `slits`    | number of openings (`multislit` model)          | `2`     |
//! | `spacing`  | center spacing `d` (`multislit`, `slits >= 2`)  | —       |
//! | `grid`     | momentum grid `min:max:points`                  | `-12*pi*hbar/a : 12*pi*hbar/a : 4801` |
//!
//! Sampled-state files hold whitespace-separated rows `y re [im]`; the `y`
//! column must be uniform, ascending, and centered on zero, and the slit
//! width is inferred from its span.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use slitlab_core::{ApertureState, SlitGeometry};

/// CLI failure modes, ordered by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration or input content — exit code 1.
    Config(String),
    /// Filesystem failure (unreadable input, unwritable output) — exit 2.
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

impl From<slitlab_core::Error> for CliError {
    fn from(e: slitlab_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Which physical model a run works with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Boxcar,
    Well,
    Sampled,
    MultiSlit,
}

impl ModelKind {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s {
            "boxcar" => Ok(Self::Boxcar),
            "well" => Ok(Self::Well),
            "sampled" => Ok(Self::Sampled),
            "multislit" => Ok(Self::MultiSlit),
            other => Err(CliError::Config(format!(
                "unknown model '{other}' (expected boxcar, well, sampled, or multislit)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Boxcar => "boxcar",
            Self::Well => "well",
            Self::Sampled => "sampled",
            Self::MultiSlit => "multislit",
        }
    }
}

/// Base state of a multi-slit run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    Boxcar,
    Well,
}

impl BaseKind {
    fn parse(s: &str) -> CliResult<Self> {
        match s {
            "boxcar" => Ok(Self::Boxcar),
            "well" => Ok(Self::Well),
            other => Err(CliError::Config(format!(
                "unknown base state '{other}' (expected boxcar or well)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Boxcar => "boxcar",
            Self::Well => "well",
        }
    }
}

/// Raw settings accumulated from the config file and overrides.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    pub model: Option<String>,
    pub width: Option<f64>,
    pub momentum: Option<f64>,
    pub hbar: Option<f64>,
    pub mass: Option<f64>,
    pub samples: Option<PathBuf>,
    pub base: Option<String>,
    pub slits: Option<u32>,
    pub spacing: Option<f64>,
    pub grid: Option<(f64, f64, usize)>,
}

fn parse_f64(key: &str, v: &str) -> CliResult<f64> {
    v.parse::<f64>()
        .map_err(|_| CliError::Config(format!("key '{key}': expected a number, got '{v}'")))
        .and_then(|x| {
            if x.is_finite() {
                Ok(x)
            } else {
                Err(CliError::Config(format!(
                    "key '{key}': value must be finite, got '{v}'"
                )))
            }
        })
}

/// Parses a `min:max:points` grid description.
pub fn parse_grid_spec(v: &str) -> CliResult<(f64, f64, usize)> {
    let parts: Vec<&str> = v.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!(
            "grid must be 'min:max:points', got '{v}'"
        )));
    }
    let min = parse_f64("grid min", parts[0].trim())?;
    let max = parse_f64("grid max", parts[1].trim())?;
    let points: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("grid points must be an integer, got '{}'", parts[2])))?;
    if !(max > min) {
        return Err(CliError::Config(format!(
            "grid needs max > min, got {min}:{max}"
        )));
    }
    if points < 9 {
        return Err(CliError::Config(format!(
            "grid needs at least 9 points, got {points}"
        )));
    }
    Ok((min, max, points))
}

impl RawConfig {
    /// Parses the flat `key = value` file content. Unknown and duplicate
    /// keys are configuration errors.
    pub fn parse(content: &str) -> CliResult<Self> {
        let mut cfg = Self::default();
        let mut seen: BTreeMap<String, ()> = BTreeMap::new();
        for (idx, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {lineno}: expected 'key = value', got '{line}'"))
            })?;
            let key = key.trim();
            let value = value.trim();
            if value.is_empty() {
                return Err(CliError::Config(format!(
                    "line {lineno}: key '{key}' has no value"
                )));
            }
            if seen.insert(key.to_string(), ()).is_some() {
                return Err(CliError::Config(format!(
                    "line {lineno}: duplicate key '{key}'"
                )));
            }
            match key {
                "model" => cfg.model = Some(value.to_string()),
                "width" => cfg.width = Some(parse_f64(key, value)?),
                "momentum" => cfg.momentum = Some(parse_f64(key, value)?),
                "hbar" => cfg.hbar = Some(parse_f64(key, value)?),
                "mass" => cfg.mass = Some(parse_f64(key, value)?),
                "samples" => cfg.samples = Some(PathBuf::from(value)),
                "base" => cfg.base = Some(value.to_string()),
                "slits" => {
                    cfg.slits = Some(value.parse().map_err(|_| {
                        CliError::Config(format!(
                            "key 'slits': expected a positive integer, got '{value}'"
                        ))
                    })?)
                }
                "spacing" => cfg.spacing = Some(parse_f64(key, value)?),
                "grid" => cfg.grid = Some(parse_grid_spec(value)?),
                other => {
                    return Err(CliError::Config(format!(
                        "line {lineno}: unknown key '{other}'"
                    )))
                }
            }
        }
        Ok(cfg)
    }

    /// Reads and parses a config file.
    pub fn load(path: &Path) -> CliResult<Self> {
        let content = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&content)
    }

    /// Applies command-line overrides on top of the file settings.
    #[allow(clippy::too_many_arguments)]
    pub fn apply_overrides(
        &mut self,
        model: Option<&str>,
        width: Option<f64>,
        momentum: Option<f64>,
        hbar: Option<f64>,
        mass: Option<f64>,
        grid: Option<&str>,
    ) -> CliResult<()> {
        if let Some(m) = model {
            self.model = Some(m.to_string());
        }
        if let Some(a) = width {
            self.width = Some(a);
        }
        if let Some(p) = momentum {
            self.momentum = Some(p);
        }
        if let Some(h) = hbar {
            self.hbar = Some(h);
        }
        if let Some(m) = mass {
            self.mass = Some(m);
        }
        if let Some(g) = grid {
            self.grid = Some(parse_grid_spec(g)?);
        }
        Ok(())
    }
}

/// The state a run operates on, after resolution.
#[derive(Debug, Clone)]
pub enum RunState {
    /// Single-slit boxcar or hard-wall ground state.
    Single {
        kind: ModelKind,
        state: ApertureState,
    },
    /// Sampled single-slit state with the file it came from.
    Sampled {
        state: ApertureState,
        path: PathBuf,
    },
    /// Multi-slit composition of a closed-form base.
    MultiSlit {
        base: BaseKind,
        state: slitlab_core::MultiSlitState,
    },
}

/// Fully resolved run: model, geometry, state, and momentum grid.
#[derive(Debug, Clone)]
pub struct ResolvedRun {
    pub model: ModelKind,
    pub geometry: SlitGeometry,
    pub state: RunState,
    pub grid_min: f64,
    pub grid_max: f64,
    pub grid_points: usize,
}

impl ResolvedRun {
    pub fn grid(&self) -> Vec<f64> {
        slitlab_core::numerics::linspace(self.grid_min, self.grid_max, self.grid_points)
    }
}

/// Relative tolerance when checking an explicit `width` against the span of
/// a sampled-state file.
const SAMPLED_WIDTH_REL_TOL: f64 = 1e-9;

/// Loads a sampled-state file: rows `y re [im]`, uniform ascending centered
/// `y`. Returns the samples and the inferred slit width.
fn load_samples(path: &Path) -> CliResult<(Vec<f64>, Vec<Complex64>)> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read samples {}: {e}", path.display())))?;
    let mut ys = Vec::new();
    let mut vals = Vec::new();
    for (idx, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = idx + 1;
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.len() != 2 && cols.len() != 3 {
            return Err(CliError::Config(format!(
                "samples line {lineno}: expected 'y re [im]', got {} columns",
                cols.len()
            )));
        }
        let y = parse_f64("y", cols[0])
            .map_err(|_| CliError::Config(format!("samples line {lineno}: bad y value")))?;
        let re = parse_f64("re", cols[1])
            .map_err(|_| CliError::Config(format!("samples line {lineno}: bad amplitude")))?;
        let im = if cols.len() == 3 {
            parse_f64("im", cols[2])
                .map_err(|_| CliError::Config(format!("samples line {lineno}: bad amplitude")))?
        } else {
            0.0
        };
        ys.push(y);
        vals.push(Complex64::new(re, im));
    }
    if ys.len() < 4 {
        return Err(CliError::Config(format!(
            "samples file needs at least 4 rows, got {}",
            ys.len()
        )));
    }
    slitlab_core::numerics::validate_uniform_grid(&ys)
        .map_err(|e| CliError::Config(format!("samples file: {e}")))?;
    let span = ys[ys.len() - 1] - ys[0];
    let center = ys[0] + ys[ys.len() - 1];
    if center.abs() > SAMPLED_WIDTH_REL_TOL * span {
        return Err(CliError::Config(format!(
            "samples must be centered on y = 0 (found center offset {})",
            center / 2.0
        )));
    }
    Ok((ys, vals))
}

/// Resolves raw settings into a validated run.
pub fn resolve(raw: &RawConfig) -> CliResult<ResolvedRun> {
    let model = ModelKind::parse(raw.model.as_deref().unwrap_or("well"))?;
    let momentum = raw.momentum.unwrap_or(10.0);
    let hbar = raw.hbar.unwrap_or(1.0);
    let mass = raw.mass.unwrap_or(1.0);

    // Keys that only make sense for specific models are rejected elsewhere
    // to keep configs honest.
    if model != ModelKind::Sampled && raw.samples.is_some() {
        return Err(CliError::Config(
            "'samples' is only valid with model = sampled".into(),
        ));
    }
    if model != ModelKind::MultiSlit {
        if raw.base.is_some() {
            return Err(CliError::Config(
                "'base' is only valid with model = multislit".into(),
            ));
        }
        if raw.slits.is_some() {
            return Err(CliError::Config(
                "'slits' is only valid with model = multislit".into(),
            ));
        }
        if raw.spacing.is_some() {
            return Err(CliError::Config(
                "'spacing' is only valid with model = multislit".into(),
            ));
        }
    }

    let (geometry, state) = match model {
        ModelKind::Boxcar | ModelKind::Well => {
            let width = raw.width.unwrap_or(1.0);
            let g = SlitGeometry::single(width, momentum, hbar, mass)?;
            let state = if model == ModelKind::Boxcar {
                ApertureState::boxcar(g)
            } else {
                ApertureState::hard_wall(g, 1)?
            };
            (g, RunState::Single { kind: model, state })
        }
        ModelKind::Sampled => {
            let path = raw.samples.clone().ok_or_else(|| {
                CliError::Config("model = sampled needs a 'samples' file".into())
            })?;
            let (ys, vals) = load_samples(&path)?;
            let span = ys[ys.len() - 1] - ys[0];
            if let Some(width) = raw.width {
                if ((width - span) / span).abs() > SAMPLED_WIDTH_REL_TOL {
                    return Err(CliError::Config(format!(
                        "explicit width {width} disagrees with sampled span {span}"
                    )));
                }
            }
            let g = SlitGeometry::single(span, momentum, hbar, mass)?;
            let state = ApertureState::sampled(g, &vals)?;
            (g, RunState::Sampled { state, path })
        }
        ModelKind::MultiSlit => {
            let width = raw.width.unwrap_or(1.0);
            let slits = raw.slits.unwrap_or(2);
            let spacing = if slits >= 2 {
                Some(raw.spacing.ok_or_else(|| {
                    CliError::Config("model = multislit with slits >= 2 needs 'spacing'".into())
                })?)
            } else {
                if raw.spacing.is_some() {
                    return Err(CliError::Config(
                        "'spacing' is meaningless for a single slit".into(),
                    ));
                }
                None
            };
            let g = SlitGeometry::array(width, slits, spacing, momentum, hbar, mass)?;
            let base = BaseKind::parse(raw.base.as_deref().unwrap_or("boxcar"))?;
            let base_state = match base {
                BaseKind::Boxcar => ApertureState::boxcar(g),
                BaseKind::Well => ApertureState::hard_wall(g, 1)?,
            };
            let state = slitlab_core::MultiSlitState::new(base_state)?;
            (g, RunState::MultiSlit { base, state })
        }
    };

    let (grid_min, grid_max, grid_points) = match raw.grid {
        Some(spec) => spec,
        None => {
            let reach = 12.0 * std::f64::consts::PI * geometry.hbar() / geometry.width_a();
            (-reach, reach, 4801)
        }
    };

    Ok(ResolvedRun {
        model,
        geometry,
        state,
        grid_min,
        grid_max,
        grid_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_well_formed_config() {
        let cfg = RawConfig::parse(
            "# demo\nmodel = boxcar\nwidth = 2.0\nmomentum = 5.0\n\ngrid = -10:10:101\n",
        )
        .unwrap();
        assert_eq!(cfg.model.as_deref(), Some("boxcar"));
        assert_eq!(cfg.width, Some(2.0));
        assert_eq!(cfg.momentum, Some(5.0));
        assert_eq!(cfg.grid, Some((-10.0, 10.0, 101)));
    }

    #[test]
    fn rejects_malformed_lines_and_unknown_keys() {
        assert!(RawConfig::parse("model boxcar\n").is_err());
        assert!(RawConfig::parse("colour = red\n").is_err());
        assert!(RawConfig::parse("width = \n").is_err());
        assert!(RawConfig::parse("width = abc\n").is_err());
        assert!(RawConfig::parse("width = 1\nwidth = 2\n").is_err());
        assert!(RawConfig::parse("grid = 1:2\n").is_err());
        assert!(RawConfig::parse("grid = 5:1:100\n").is_err());
    }

    #[test]
    fn defaults_resolve_to_ground_state_well() {
        let run = resolve(&RawConfig::default()).unwrap();
        assert_eq!(run.model, ModelKind::Well);
        assert_eq!(run.geometry.width_a(), 1.0);
        assert_eq!(run.geometry.momentum_p(), 10.0);
        assert_eq!(run.grid_points, 4801);
        let reach = 12.0 * std::f64::consts::PI;
        assert!((run.grid_max - reach).abs() < 1e-12);
        // The default grid is symmetric with an odd point count, so it
        // contains p = 0 exactly.
        assert_eq!(run.grid()[2400], 0.0);
    }

    #[test]
    fn model_specific_keys_are_fenced() {
        let mut raw = RawConfig::default();
        raw.base = Some("boxcar".into());
        assert!(resolve(&raw).is_err());
        let mut raw = RawConfig::default();
        raw.slits = Some(2);
        assert!(resolve(&raw).is_err());
        let mut raw = RawConfig::default();
        raw.model = Some("multislit".into());
        raw.slits = Some(2);
        // Missing spacing.
        assert!(resolve(&raw).is_err());
        raw.spacing = Some(3.0);
        assert!(resolve(&raw).is_ok());
    }

    #[test]
    fn sampled_model_requires_file() {
        let mut raw = RawConfig::default();
        raw.model = Some("sampled".into());
        assert!(matches!(resolve(&raw), Err(CliError::Config(_))));
    }

    #[test]
    fn overrides_take_precedence() {
        let mut raw = RawConfig::parse("model = well\nwidth = 1.0\n").unwrap();
        raw.apply_overrides(Some("boxcar"), Some(2.0), None, None, None, Some("-5:5:99"))
            .unwrap();
        let run = resolve(&raw).unwrap();
        assert_eq!(run.model, ModelKind::Boxcar);
        assert_eq!(run.geometry.width_a(), 2.0);
        assert_eq!(run.grid_points, 99);
    }
}
