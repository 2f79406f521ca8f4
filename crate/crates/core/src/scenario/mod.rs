//! Configured experiments: the rippled-bed run, figure tables and file
//! output.

mod build;
pub mod checks;
mod config;
mod figures;
mod run;

use std::path::PathBuf;

use thiserror::Error;

use crate::params::ParamError;
use crate::profiles::ProfileError;
use crate::solver::SolverError;
use crate::spectrum::SpectrumError;

pub use build::{build_initial_state, build_ripple_bed, froude};
pub use config::{
    BedKind, BedSection, ConfigError, GridSection, InitialKind, InitialSection, ModelSection, OutputSection,
    ParamsSection, ScenarioConfig,
};
pub use figures::{
    concentration_rows, emit_figure_data, shear_rows, spectra, velocity_rows, FigureKey, FigureOptions, PROFILE_SIZES,
};
pub use run::{probe_path, run_scenario, simulate, snapshot_path, ProbeSeries, ScenarioOutput};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("invalid parameters: {0}")]
    Params(ParamError),
    #[error("invalid bed: {0}")]
    Bed(String),
    #[error("solver failed: {0}")]
    Solver(#[from] SolverError),
    #[error("profile evaluation failed: {0}")]
    Profile(#[from] ProfileError),
    #[error("spectrum failed: {0}")]
    Spectrum(#[from] SpectrumError),
    #[error("unknown figure {0:?} (expected concentration_profiles, velocity_profile, shear_profile or spectrum)")]
    UnknownFigure(String),
    #[error("{0}")]
    Figure(String),
    #[error("{0} invariant check(s) failed")]
    ChecksFailed(usize),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl ScenarioError {
    /// Process exit status: 1 for bad input, 2 for a failed computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Solver(_)
            | ScenarioError::Profile(_)
            | ScenarioError::Spectrum(_)
            | ScenarioError::ChecksFailed(_) => 2,
            _ => 1,
        }
    }
}
