//! CSV tables behind the vertical-structure figures.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::params::{equilibrium_concentration, ModelParams};
use crate::profiles::{
    concentration_analytic, concentration_profile_steady, shear_stress_profile, velocity_profile_steady,
};
use crate::spectrum::{concentration_wavenumbers, equilibrium_eddy_viscosity, velocity_wavenumbers, SpectrumResult};

use super::ScenarioError;

/// Particle sizes of the concentration profile table.
pub const PROFILE_SIZES: [f64; 3] = [0.6e-4, 1e-4, 1.5e-4];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKey {
    ConcentrationProfiles,
    VelocityProfile,
    ShearProfile,
    Spectrum,
}

impl FigureKey {
    pub const ALL: [FigureKey; 4] = [
        FigureKey::ConcentrationProfiles,
        FigureKey::VelocityProfile,
        FigureKey::ShearProfile,
        FigureKey::Spectrum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureKey::ConcentrationProfiles => "concentration_profiles",
            FigureKey::VelocityProfile => "velocity_profile",
            FigureKey::ShearProfile => "shear_profile",
            FigureKey::Spectrum => "spectrum",
        }
    }
}

impl fmt::Display for FigureKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureKey {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FigureKey::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| ScenarioError::UnknownFigure(s.to_string()))
    }
}

/// Sampling of the figure tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureOptions {
    /// Points on `Z in [0, 1]`.
    pub samples: usize,
    /// Modes per spectrum family.
    pub modes: usize,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self { samples: 101, modes: 8 }
    }
}

fn zs(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

/// Rows of the concentration table: `(d, Z, polynomial, analytic)`.
///
/// Both curves use the steady speed `18.7 sqrt(tan theta)` and the
/// equilibrium depth-averaged concentration at that speed.
pub fn concentration_rows(params: &ModelParams<f64>, samples: usize) -> Result<Vec<[f64; 4]>, ScenarioError> {
    let mut rows = Vec::new();
    for d in PROFILE_SIZES {
        let p = params.with_particle_size(d)?;
        let q = p.steady_speed();
        let cbar = equilibrium_concentration(&p, &crate::coefficients::ModelCoefficients::PRINTED, q);
        for z in zs(samples) {
            let poly = concentration_profile_steady(z, cbar, p.c_ae(), p.w_f(), q)?;
            let exact = concentration_analytic(z, p.c_ae(), p.w_f(), q)?;
            rows.push([d, z, poly, exact]);
        }
    }
    Ok(rows)
}

/// Rows `(Z, u(Z) / u(1))` of the steady velocity profile.
pub fn velocity_rows(params: &ModelParams<f64>, samples: usize) -> Result<Vec<[f64; 2]>, ScenarioError> {
    let top = velocity_profile_steady(1.0, params.tan_theta(), params.c_t())?;
    zs(samples)
        .into_iter()
        .map(|z| Ok([z, velocity_profile_steady(z, params.tan_theta(), params.c_t())? / top]))
        .collect()
}

/// Rows `(Z, tau_xz / tan theta)`; the stress is linear in the slope, so the
/// ratio is the stress at unit slope.
pub fn shear_rows(samples: usize) -> Result<Vec<[f64; 2]>, ScenarioError> {
    zs(samples)
        .into_iter()
        .map(|z| Ok([z, shear_stress_profile(z, 1.0)?]))
        .collect()
}

/// Velocity and concentration spectra of the unit-depth equilibrium.
pub fn spectra(
    params: &ModelParams<f64>,
    modes: usize,
) -> Result<[(&'static str, SpectrumResult<f64>); 2], ScenarioError> {
    let eq = crate::params::steady_equilibrium(params)?;
    let nu = equilibrium_eddy_viscosity(params.c_t(), 1.0, eq.q, params.c_u())?;
    let vel = SpectrumResult::new(nu, velocity_wavenumbers(params.c_u(), modes)?)?;
    let conc = SpectrumResult::new(nu, concentration_wavenumbers(1.0, modes)?)?;
    Ok([("velocity", vel), ("concentration", conc)])
}

fn write_table(path: &Path, header: &str, rows: impl Iterator<Item = String>) -> Result<(), ScenarioError> {
    let err = |source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(err)?);
    let body = || -> std::io::Result<()> {
        writeln!(w, "{header}")?;
        for r in rows {
            writeln!(w, "{r}")?;
        }
        w.flush()
    };
    body().map_err(err)
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:.16e}")).collect::<Vec<_>>().join(",")
}

/// Writes `<key>.csv` into `dir` and returns its path.
pub fn emit_figure_data(
    which: FigureKey,
    params: &ModelParams<f64>,
    dir: &Path,
    options: FigureOptions,
) -> Result<PathBuf, ScenarioError> {
    if options.samples < 2 {
        return Err(ScenarioError::Figure(format!(
            "need at least 2 samples, got {}",
            options.samples
        )));
    }
    std::fs::create_dir_all(dir).map_err(|source| ScenarioError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let path = dir.join(format!("{which}.csv"));
    match which {
        FigureKey::ConcentrationProfiles => {
            let rows = concentration_rows(params, options.samples)?;
            write_table(&path, "d,Z,polynomial,analytic", rows.iter().map(|r| join(r)))?;
        }
        FigureKey::VelocityProfile => {
            let rows = velocity_rows(params, options.samples)?;
            write_table(&path, "Z,ratio", rows.iter().map(|r| join(r)))?;
        }
        FigureKey::ShearProfile => {
            let rows = shear_rows(options.samples)?;
            write_table(&path, "Z,tau_over_tan_theta", rows.iter().map(|r| join(r)))?;
        }
        FigureKey::Spectrum => {
            let mut lines = Vec::new();
            for (family, s) in spectra(params, options.modes)? {
                for (m, (k, l)) in s.ks.iter().zip(&s.lambdas).enumerate() {
                    lines.push(format!("{family},{},{k:.16e},{l:.16e}", m + 1));
                }
            }
            write_table(&path, "family,mode,k,lambda", lines.into_iter())?;
        }
    }
    Ok(path)
}
