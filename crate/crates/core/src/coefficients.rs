//! Printed coefficients of the reduced evolution equations.
//!
//! All values are nondimensional and evaluated with both embedding
//! parameters set to one.

/// Coefficients of the comprehensive depth/momentum/concentration model.
///
/// The struct is plain data so alternative coefficient sets can be swapped in
/// for sensitivity studies; [`ModelCoefficients::PRINTED`] is the default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelCoefficients {
    /// Bed drag, multiplies `u q / h`.
    pub drag: f64,
    /// Gravitational forcing, multiplies `tan(theta) - d(h + b)/dx`.
    pub gravity: f64,
    /// Self-advection along the velocity component, e.g. `u du/dx`.
    pub advect_along: f64,
    /// Cross advection, e.g. `v du/dy`.
    pub advect_cross: f64,
    /// Depth-gradient coupling in the x-momentum equation.
    pub depth_gradient_u: f64,
    /// Depth-gradient coupling in the y-momentum equation.
    pub depth_gradient_v: f64,
    /// Isotropic momentum dispersion, multiplies `q/h [dx(h^2 dx u) + dy(h^2 dy u)]`.
    pub momentum_dispersion: f64,
    /// Anisotropic momentum dispersion, multiplies `(u^2 - v^2)/(h q) [...]`.
    pub momentum_dispersion_aniso: f64,
    /// Suspended-load drag correction, multiplies `(s - 1) u c q / h`.
    pub sediment_drag: f64,
    /// Suspended-load pressure gradient, multiplies `(s - 1) h dc/dx`.
    pub sediment_pressure: f64,
    /// Deposition `(w_f/h)(a + b w_f/q) c`.
    pub deposition: [f64; 2],
    /// Entrainment `(w_f/h)(a + b w_f/q) c_ae`.
    pub entrainment: [f64; 2],
    /// Concentration advection factor `a + b w_f/q`.
    pub sediment_advection: [f64; 2],
    /// Isotropic concentration dispersion.
    pub sediment_dispersion: f64,
    /// Anisotropic concentration dispersion.
    pub sediment_dispersion_aniso: f64,
}

impl ModelCoefficients {
    pub const PRINTED: Self = Self {
        drag: 0.00293,
        gravity: 0.993,
        advect_along: 1.025,
        advect_cross: 1.017,
        depth_gradient_u: 0.00817,
        depth_gradient_v: 0.00809,
        momentum_dispersion: 0.0941,
        momentum_dispersion_aniso: 0.0839,
        sediment_drag: 0.00257,
        sediment_pressure: 0.298,
        deposition: [0.938, 28.9],
        entrainment: [0.984, -51.3],
        sediment_advection: [1.01, -3.09],
        sediment_dispersion: 0.0331,
        sediment_dispersion_aniso: 0.0271,
    };
}

impl Default for ModelCoefficients {
    fn default() -> Self {
        Self::PRINTED
    }
}

/// Concentration advection factor of the leading-order model is
/// `LEADING_ADVECTION[0] * exp(LEADING_ADVECTION[1] * w_f / q)`.
pub const LEADING_ADVECTION: [f64; 2] = [1.007, -3.073];

/// Leading-order deposition and entrainment weights: `-(w_f/h)(0.938 c - 0.984 c_ae)`.
pub const LEADING_EXCHANGE: [f64; 2] = [0.938, 0.984];

/// Dispersion coefficient of the conventional depth-averaged
/// advection-diffusion model used for comparison runs.
pub const REFERENCE_DISPERSION: f64 = 0.13;
