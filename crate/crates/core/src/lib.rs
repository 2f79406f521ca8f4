//! Depth-averaged model of suspended sediment carried by turbulent shallow
//! flow.
//!
//! The crate evolves the fluid depth `h`, depth-averaged lateral velocities
//! `u`, `v` and depth-averaged concentration `c` over a bed `b` on a doubly
//! periodic grid, reconstructs the vertical structure of velocity,
//! concentration, stress and diffusivity from those fields, and computes the
//! vertical decay spectrum that separates the depth-averaged dynamics from
//! the fast vertical modes.
//!
//! Numerics are generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the usual double-precision choice.

// `!(x > 0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coefficients;
pub mod params;
pub mod profiles;
pub mod scalar;
pub mod scenario;
pub mod solver;
pub mod spectrum;

pub use coefficients::ModelCoefficients;
pub use params::{steady_equilibrium, Equilibrium, ModelParams, ParamError};
pub use scalar::Real;
pub use solver::{Field, FlowState, Grid, RhsChoice, SolverError, SolverSettings, Tendency};
pub use spectrum::SpectrumResult;

pub type ModelParams64 = ModelParams<f64>;
pub type ModelParams32 = ModelParams<f32>;
pub type Equilibrium64 = Equilibrium<f64>;
pub type Grid64 = Grid<f64>;
pub type Field64 = Field<f64>;
pub type FlowState64 = FlowState<f64>;
pub type FlowState32 = FlowState<f32>;
pub type Tendency64 = Tendency<f64>;
pub type SolverSettings64 = SolverSettings<f64>;
pub type SpectrumResult64 = SpectrumResult<f64>;
