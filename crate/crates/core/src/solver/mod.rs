//! Finite-difference method-of-lines solver on a doubly periodic grid.

mod grid;
mod integrate;
mod ops;
mod tendency;

use thiserror::Error;

use crate::coefficients::ModelCoefficients;
use crate::scalar::{lit, Real};

pub use grid::{Field, FlowState, Grid, Tendency};
pub use integrate::{cfl_dt, run, step_rk4, RunEvent, RunStats, Step};
pub use ops::{ddx, ddy, regularized_speed, speed};
pub use tendency::{tendency, tendency_full, tendency_leading, tendency_reference};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("grid needs nx, ny >= 1 and positive lengths")]
    InvalidGrid,
    #[error("field shape {found:?} does not match grid {expected:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("depth fell to {min:e} at t = {t}")]
    NonpositiveDepth { t: f64, min: f64 },
    #[error("non-finite value in the {field} tendency at t = {t}")]
    NonFiniteField { t: f64, field: &'static str },
    #[error("invalid time step {0}")]
    InvalidTimeStep(f64),
    #[error("end time {t_end} precedes the state time {t}")]
    InvalidEndTime { t: f64, t_end: f64 },
}

impl SolverError {
    /// Simulation time at which the failure happened, if any.
    pub fn time(&self) -> Option<f64> {
        match self {
            SolverError::NonpositiveDepth { t, .. } | SolverError::NonFiniteField { t, .. } => Some(*t),
            _ => None,
        }
    }
}

/// Which right-hand side drives the integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RhsChoice {
    Leading,
    #[default]
    Full,
    /// Comprehensive flow with the conventional concentration equation.
    Reference,
}

/// Lateral axis along which the mean bed slopes down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Axis {
    #[default]
    X,
    Y,
}

/// Numerical knobs of the solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings<T> {
    /// Regularization of the mean speed, `q = sqrt(u^2 + v^2 + eps_q^2)`.
    pub eps_q: T,
    /// A step that leaves any depth at or below this fails.
    pub h_min: T,
    /// Courant number for [`cfl_dt`].
    pub cfl: T,
    /// Artificial diffusion factor applied by the leading-order model.
    pub leading_diffusion: T,
    pub coefficients: ModelCoefficients,
    pub downslope: Axis,
}

impl<T: Real> Default for SolverSettings<T> {
    fn default() -> Self {
        Self {
            eps_q: lit(1e-8),
            h_min: lit(1e-6),
            cfl: lit(0.25),
            leading_diffusion: lit(0.01),
            coefficients: ModelCoefficients::PRINTED,
            downslope: Axis::X,
        }
    }
}
