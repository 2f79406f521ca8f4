//! Bed, initial state and diagnostics for the rippled-bed experiment.

use crate::params::{steady_equilibrium, ModelParams, ParamError};
use crate::scalar::{lit, Real};
use crate::solver::{Field, FlowState, Grid, SolverError};

use super::config::{BedKind, InitialKind, ScenarioConfig};
use super::ScenarioError;

/// Sinusoidal ripples `b = -(height/2) cos(2 pi (x - trough) / wavelength)`,
/// uniform in y, with zero mean and crest-to-trough distance `height`.
pub fn build_ripple_bed<T: Real>(
    grid: &Grid<T>,
    height: T,
    wavelength: T,
    trough: T,
) -> Result<Field<T>, ScenarioError> {
    if !(height >= T::zero()) {
        return Err(ScenarioError::Bed(format!("height must be >= 0, got {height}")));
    }
    let ratio = grid.lx / wavelength;
    let tol = lit::<T>(1e-9) * ratio;
    if !(wavelength > T::zero()) || ratio.round() < T::one() || (ratio - ratio.round()).abs() > tol {
        return Err(ScenarioError::Bed(format!(
            "wavelength {wavelength} does not divide the domain length {}",
            grid.lx
        )));
    }
    let half = height / lit(2.0);
    let k = T::TAU() / wavelength;
    Ok(Field::from_fn(grid, |x, _| -half * (k * (x - trough)).cos()))
}

/// Builds the initial state of a scenario: uniform flow with the depth
/// perturbed by `amplitude sin(2 pi (x - shift) / lx)`.
pub fn build_initial_state(
    config: &ScenarioConfig,
    params: &ModelParams<f64>,
) -> Result<FlowState<f64>, ScenarioError> {
    let g = &config.grid;
    let grid = Grid::new(g.nx, g.ny, g.lx, g.ly)?;
    let init = &config.initial;
    let (depth, u, v, c) = match init.kind {
        InitialKind::Equilibrium => {
            let eq = steady_equilibrium(params)?;
            (1.0, eq.u, eq.v, eq.cbar)
        }
        InitialKind::Uniform => (init.h, init.ubar, init.vbar, init.cbar),
    };
    let mut state = FlowState::uniform(grid, depth, u, v, c);
    if init.amplitude != 0.0 {
        let k = std::f64::consts::TAU / g.lx;
        state.h = Field::from_fn(&grid, |x, _| depth + init.amplitude * (k * (x - init.shift)).sin());
    }
    if config.bed.kind == BedKind::Ripple && config.bed.height > 0.0 {
        state.b = build_ripple_bed(&grid, config.bed.height, config.bed.wavelength, config.bed.trough)?;
    }
    Ok(state)
}

/// Pointwise Froude number `sqrt(u^2 + v^2) / sqrt(g h)`.
pub fn froude<T: Real>(state: &FlowState<T>, params: &ModelParams<T>) -> Result<Field<T>, SolverError> {
    let min = state.h.min();
    if !(min > T::zero()) {
        return Err(SolverError::NonpositiveDepth {
            t: crate::scalar::to_f64(state.t),
            min: crate::scalar::to_f64(min),
        });
    }
    let g = params.g();
    let mut out = state.h.clone();
    let cells = out.as_mut_slice().iter_mut().zip(state.u.iter().zip(state.v.iter()));
    for (f, (&u, &v)) in cells {
        *f = (u * u + v * v).sqrt() / (g * *f).sqrt();
    }
    Ok(out)
}

impl From<ParamError> for ScenarioError {
    fn from(e: ParamError) -> Self {
        ScenarioError::Params(e)
    }
}
