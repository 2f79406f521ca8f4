//! Line-based `section.key = value` scenario configuration.
//!
//! ```text
//! # rippled bed, comprehensive model
//! params.tan_theta = 0.01
//! bed.kind = ripple
//! bed.height = 0.6
//! output.probes = 50, 60
//! ```
//!
//! Every key is optional; an empty file describes the rippled-bed
//! experiment. Unknown or repeated keys are rejected.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::params::{smagorinski_constant_consistency, steady_equilibrium, ModelParams};
use crate::solver::RhsChoice;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid {field}: {message}")]
    Invalid { field: &'static str, message: String },
}

fn invalid(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamsSection {
    pub tan_theta: f64,
    pub s: f64,
    pub d: f64,
    pub c_d: f64,
    pub c_u: f64,
    pub c_t: f64,
}

impl Default for ParamsSection {
    fn default() -> Self {
        Self {
            tan_theta: 0.01,
            s: 2.65,
            d: 6e-5,
            c_d: 1.4,
            c_u: 1.85,
            c_t: smagorinski_constant_consistency(),
        }
    }
}

impl ParamsSection {
    pub fn model_params(&self) -> Result<ModelParams<f64>, crate::params::ParamError> {
        ModelParams::with_constants(self.tan_theta, self.s, self.d, self.c_d, self.c_u, self.c_t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSection {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        Self {
            nx: 512,
            ny: 4,
            lx: 100.0,
            ly: 10.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BedKind {
    Flat,
    Ripple,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BedSection {
    pub kind: BedKind,
    /// Crest-to-trough height.
    pub height: f64,
    pub wavelength: f64,
    /// Position of one trough; crests sit half a wavelength away.
    pub trough: f64,
}

impl Default for BedSection {
    fn default() -> Self {
        Self {
            kind: BedKind::Ripple,
            height: 0.4,
            wavelength: 20.0,
            trough: 50.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialKind {
    /// Uniform steady flow at unit depth.
    Equilibrium,
    /// Uniform fields given by `initial.h`, `initial.ubar`, ...
    Uniform,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitialSection {
    pub kind: InitialKind,
    /// Amplitude of the sinusoidal depth perturbation.
    pub amplitude: f64,
    /// Phase shift of the perturbation along x.
    pub shift: f64,
    pub h: f64,
    pub ubar: f64,
    pub vbar: f64,
    pub cbar: f64,
}

impl Default for InitialSection {
    fn default() -> Self {
        Self {
            kind: InitialKind::Equilibrium,
            amplitude: 0.2,
            shift: 0.0,
            h: 1.0,
            ubar: 0.0,
            vbar: 0.0,
            cbar: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSection {
    pub rhs: RhsChoice,
    pub t_end: f64,
    pub cfl: f64,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self {
            rhs: RhsChoice::Full,
            t_end: 180.0,
            cfl: 0.25,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSection {
    /// x-locations of the probes.
    pub probes: Vec<f64>,
    pub snapshots: Vec<f64>,
    pub dir: PathBuf,
    /// Minimum time between probe samples; zero samples every step.
    pub probe_interval: f64,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            probes: vec![50.0, 60.0],
            snapshots: vec![180.0],
            dir: PathBuf::from("out"),
            probe_interval: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScenarioConfig {
    pub params: ParamsSection,
    pub grid: GridSection,
    pub bed: BedSection,
    pub initial: InitialSection,
    pub model: ModelSection,
    pub output: OutputSection,
}

fn parse_f64(v: &str) -> Result<f64, String> {
    v.parse::<f64>().map_err(|_| format!("expected a number, got {v:?}"))
}

fn parse_usize(v: &str) -> Result<usize, String> {
    v.parse::<usize>()
        .map_err(|_| format!("expected a non-negative integer, got {v:?}"))
}

fn parse_list(v: &str) -> Result<Vec<f64>, String> {
    if v.is_empty() {
        return Ok(Vec::new());
    }
    v.split(',').map(|s| parse_f64(s.trim())).collect()
}

fn parse_rhs(v: &str) -> Result<RhsChoice, String> {
    match v {
        "full" => Ok(RhsChoice::Full),
        "leading" => Ok(RhsChoice::Leading),
        "reference" => Ok(RhsChoice::Reference),
        _ => Err(format!("expected full, leading or reference, got {v:?}")),
    }
}

fn rhs_name(r: RhsChoice) -> &'static str {
    match r {
        RhsChoice::Full => "full",
        RhsChoice::Leading => "leading",
        RhsChoice::Reference => "reference",
    }
}

fn list(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(", ")
}

impl ScenarioConfig {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses and validates configuration text.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        let mut seen = HashSet::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                return Err(ConfigError::Parse {
                    line,
                    message: format!("expected `section.key = value`, got {body:?}"),
                });
            };
            let key = key.trim();
            if !seen.insert(key.to_string()) {
                return Err(ConfigError::Parse {
                    line,
                    message: format!("duplicate key {key}"),
                });
            }
            cfg.set(key, value.trim())
                .map_err(|message| ConfigError::Parse { line, message })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, v: &str) -> Result<(), String> {
        match key {
            "params.tan_theta" => self.params.tan_theta = parse_f64(v)?,
            "params.s" => self.params.s = parse_f64(v)?,
            "params.d" => self.params.d = parse_f64(v)?,
            "params.c_d" => self.params.c_d = parse_f64(v)?,
            "params.c_u" => self.params.c_u = parse_f64(v)?,
            "params.c_t" => self.params.c_t = parse_f64(v)?,
            "grid.nx" => self.grid.nx = parse_usize(v)?,
            "grid.ny" => self.grid.ny = parse_usize(v)?,
            "grid.lx" => self.grid.lx = parse_f64(v)?,
            "grid.ly" => self.grid.ly = parse_f64(v)?,
            "bed.kind" => {
                self.bed.kind = match v {
                    "flat" => BedKind::Flat,
                    "ripple" => BedKind::Ripple,
                    _ => return Err(format!("expected flat or ripple, got {v:?}")),
                }
            }
            "bed.height" => self.bed.height = parse_f64(v)?,
            "bed.wavelength" => self.bed.wavelength = parse_f64(v)?,
            "bed.trough" => self.bed.trough = parse_f64(v)?,
            "initial.kind" => {
                self.initial.kind = match v {
                    "equilibrium" => InitialKind::Equilibrium,
                    "uniform" => InitialKind::Uniform,
                    _ => return Err(format!("expected equilibrium or uniform, got {v:?}")),
                }
            }
            "initial.amplitude" => self.initial.amplitude = parse_f64(v)?,
            "initial.shift" => self.initial.shift = parse_f64(v)?,
            "initial.h" => self.initial.h = parse_f64(v)?,
            "initial.ubar" => self.initial.ubar = parse_f64(v)?,
            "initial.vbar" => self.initial.vbar = parse_f64(v)?,
            "initial.cbar" => self.initial.cbar = parse_f64(v)?,
            "model.kind" => self.model.rhs = parse_rhs(v)?,
            "model.t_end" => self.model.t_end = parse_f64(v)?,
            "model.cfl" => self.model.cfl = parse_f64(v)?,
            "output.probes" => self.output.probes = parse_list(v)?,
            "output.snapshots" => self.output.snapshots = parse_list(v)?,
            "output.dir" => self.output.dir = PathBuf::from(v),
            "output.probe_interval" => self.output.probe_interval = parse_f64(v)?,
            _ => return Err(format!("unknown key {key}")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let params = self
            .params
            .model_params()
            .map_err(|e| invalid("params", e.to_string()))?;

        let g = &self.grid;
        if g.nx == 0 || g.ny == 0 {
            return Err(invalid("grid", "nx and ny must be at least 1"));
        }
        if !(g.lx > 0.0 && g.lx.is_finite()) {
            return Err(invalid("grid.lx", format!("must be positive, got {}", g.lx)));
        }
        if !(g.ly > 0.0 && g.ly.is_finite()) {
            return Err(invalid("grid.ly", format!("must be positive, got {}", g.ly)));
        }

        let b = &self.bed;
        if !(b.height >= 0.0 && b.height.is_finite()) {
            return Err(invalid("bed.height", format!("must be >= 0, got {}", b.height)));
        }
        if !b.trough.is_finite() {
            return Err(invalid("bed.trough", "must be finite"));
        }
        if b.kind == BedKind::Ripple {
            if !(b.wavelength > 0.0) {
                return Err(invalid(
                    "bed.wavelength",
                    format!("must be positive, got {}", b.wavelength),
                ));
            }
            let ratio = g.lx / b.wavelength;
            if ratio.round() < 1.0 || (ratio - ratio.round()).abs() > 1e-9 * ratio {
                return Err(invalid(
                    "bed.wavelength",
                    format!("{} does not divide lx = {}", b.wavelength, g.lx),
                ));
            }
        }

        let i = &self.initial;
        if !i.amplitude.is_finite() || !i.shift.is_finite() {
            return Err(invalid("initial.amplitude", "amplitude and shift must be finite"));
        }
        let depth = match i.kind {
            InitialKind::Equilibrium => 1.0,
            InitialKind::Uniform => i.h,
        };
        if !(depth - i.amplitude.abs() > 0.0) {
            return Err(invalid(
                "initial.amplitude",
                format!("|{}| must stay below the mean depth {depth}", i.amplitude),
            ));
        }
        if i.kind == InitialKind::Equilibrium {
            let eq = steady_equilibrium(&params).map_err(|e| invalid("params", e.to_string()))?;
            if eq.cbar < 0.0 {
                return Err(invalid(
                    "params.d",
                    format!(
                        "equilibrium concentration {:.3e} is negative (w_f/q = {:.4}); use smaller grains or initial.kind = uniform",
                        eq.cbar,
                        params.w_f() / eq.q
                    ),
                ));
            }
        }
        if i.kind == InitialKind::Uniform {
            if ![i.ubar, i.vbar, i.cbar].iter().all(|x| x.is_finite()) {
                return Err(invalid("initial", "uniform fields must be finite"));
            }
            if i.cbar < 0.0 {
                return Err(invalid("initial.cbar", format!("must be >= 0, got {}", i.cbar)));
            }
        }

        let m = &self.model;
        if !(m.t_end > 0.0 && m.t_end.is_finite()) {
            return Err(invalid("model.t_end", format!("must be positive, got {}", m.t_end)));
        }
        if !(m.cfl > 0.0 && m.cfl <= 1.0) {
            return Err(invalid("model.cfl", format!("must lie in (0, 1], got {}", m.cfl)));
        }

        let o = &self.output;
        if let Some(&x) = o.probes.iter().find(|&&x| !(x >= 0.0 && x < g.lx)) {
            return Err(invalid("output.probes", format!("{x} is outside [0, {})", g.lx)));
        }
        if let Some(&t) = o.snapshots.iter().find(|&&t| !(t > 0.0 && t <= m.t_end)) {
            return Err(invalid("output.snapshots", format!("{t} is outside (0, {}]", m.t_end)));
        }
        if !(o.probe_interval >= 0.0 && o.probe_interval.is_finite()) {
            return Err(invalid("output.probe_interval", "must be >= 0"));
        }
        Ok(())
    }
}

/// Writes every key, so that parsing the text reproduces the configuration.
impl fmt::Display for ScenarioConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(f, "params.tan_theta = {:?}", p.tan_theta)?;
        writeln!(f, "params.s = {:?}", p.s)?;
        writeln!(f, "params.d = {:?}", p.d)?;
        writeln!(f, "params.c_d = {:?}", p.c_d)?;
        writeln!(f, "params.c_u = {:?}", p.c_u)?;
        writeln!(f, "params.c_t = {:?}", p.c_t)?;
        writeln!(f)?;
        writeln!(f, "grid.nx = {}", self.grid.nx)?;
        writeln!(f, "grid.ny = {}", self.grid.ny)?;
        writeln!(f, "grid.lx = {:?}", self.grid.lx)?;
        writeln!(f, "grid.ly = {:?}", self.grid.ly)?;
        writeln!(f)?;
        let kind = match self.bed.kind {
            BedKind::Flat => "flat",
            BedKind::Ripple => "ripple",
        };
        writeln!(f, "bed.kind = {kind}")?;
        writeln!(f, "bed.height = {:?}", self.bed.height)?;
        writeln!(f, "bed.wavelength = {:?}", self.bed.wavelength)?;
        writeln!(f, "bed.trough = {:?}", self.bed.trough)?;
        writeln!(f)?;
        let i = &self.initial;
        let kind = match i.kind {
            InitialKind::Equilibrium => "equilibrium",
            InitialKind::Uniform => "uniform",
        };
        writeln!(f, "initial.kind = {kind}")?;
        writeln!(f, "initial.amplitude = {:?}", i.amplitude)?;
        writeln!(f, "initial.shift = {:?}", i.shift)?;
        writeln!(f, "initial.h = {:?}", i.h)?;
        writeln!(f, "initial.ubar = {:?}", i.ubar)?;
        writeln!(f, "initial.vbar = {:?}", i.vbar)?;
        writeln!(f, "initial.cbar = {:?}", i.cbar)?;
        writeln!(f)?;
        writeln!(f, "model.kind = {}", rhs_name(self.model.rhs))?;
        writeln!(f, "model.t_end = {:?}", self.model.t_end)?;
        writeln!(f, "model.cfl = {:?}", self.model.cfl)?;
        writeln!(f)?;
        let o = &self.output;
        writeln!(f, "output.probes = {}", list(&o.probes))?;
        writeln!(f, "output.snapshots = {}", list(&o.snapshots))?;
        writeln!(f, "output.dir = {}", o.dir.display())?;
        writeln!(f, "output.probe_interval = {:?}", o.probe_interval)
    }
}
