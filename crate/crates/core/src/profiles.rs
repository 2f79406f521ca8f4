//! Vertical structure of the flow and sediment reconstructed from the
//! depth-averaged fields.
//!
//! Every profile is a polynomial (or, for the analytic approximation, a power
//! law) in the stretched coordinate `Z = (z - b) / h`, with `Z = 0` on the mean
//! bed and `Z = 1` at the free surface. The functions take point values of the
//! local state and its lateral gradients, so they do not depend on any grid.

use thiserror::Error;

use crate::coefficients::ModelCoefficients;
use crate::params::{equilibrium_concentration, ModelParams};
use crate::scalar::{horner, lit, to_f64, Real};

/// Settling ratio `w_f / q` above which the concentration expansion is
/// outside the regime it was built for.
pub const SETTLING_RATIO_LIMIT: f64 = 0.02;

// concentration expansion, one polynomial per group of terms
pub(crate) const C_MEAN: [f64; 4] = [0.985, 0.0422, -0.00756, -0.0139];
pub(crate) const C_SETTLING: [f64; 3] = [28.36, -5.156, -77.34];
pub(crate) const C_SETTLING_SQ: [f64; 4] = [-0.430, -0.430, 2.578, -0.859];
pub(crate) const C_ENTRAIN: [f64; 4] = [56.72, -166.3, 77.34, 2.578];
pub(crate) const C_ENTRAIN_SQ: [f64; 4] = [-0.430, 1.074, 0.0, -0.430];
pub(crate) const C_ADVECT: [f64; 4] = [2.578, 0.921, -17.68, 11.42];
pub(crate) const C_STRETCH_X: [f64; 4] = [-0.17, 0.449, -0.0392, -1.322];
pub(crate) const C_STRETCH_Y: [f64; 4] = [-1.774, 1.244, 2.471, -1.486];
pub(crate) const C_DEPTH_ADVECT: [f64; 4] = [-0.17, 0.449, -0.0392, -1.322];
pub(crate) const C_TOPOGRAPHY: [f64; 4] = [0.918, -0.809, 2.549, 1.343];

// lateral velocity expansion
pub(crate) const U_MEAN: [f64; 6] = [0.816, 0.445, -0.0916, -0.0307, -0.00383, -0.000418];
pub(crate) const U_SLOPE: [f64; 8] = [2.208, 1.204, -14.31, 8.069, -1.569, 0.954, 0.586, 0.119];
pub(crate) const U_STRETCH_X: [f64; 9] = [2.326, 1.269, -13.52, 4.585, 0.894, 0.783, 0.533, 0.118, 0.0106];
pub(crate) const U_SHEAR_Y: [f64; 9] = [2.352, 1.283, -13.25, 3.622, 1.53, 0.708, 0.543, 0.129, 0.0127];
pub(crate) const U_SURFACE: [f64; 8] = [-2.208, -1.204, 14.31, -8.069, 1.569, -0.954, -0.586, -0.119];
pub(crate) const U_SEDIMENT: [f64; 5] = [0.0167, 0.009, -0.107, 0.0439, 0.0173];

/// Steady uniform-flow velocity profile scaled by `sqrt(tan(theta) / c_t)`.
pub const STEADY_VELOCITY: [f64; 8] = [2.18, 1.19, -0.297, -0.0533, -0.0173, -0.00366, -0.00115, -0.000089];

/// Steady shear stress profile scaled by `tan(theta)`.
pub const STEADY_SHEAR: [f64; 7] = [0.997, -0.999, 0.000284, -0.00995, 0.00776, 0.000791, 0.000072];

const DIFFUSIVITY_SPEED: [f64; 3] = [0.00628, -0.00269, -0.000733];
const DIFFUSIVITY_SLOPE: [f64; 3] = [0.00978, -0.2605, 0.247];

const ANALYTIC_EXPONENT: f64 = -197.45;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProfileError {
    #[error("vertical coordinate Z = {0} outside [0, 1]")]
    OutOfRange(f64),
    #[error("mean speed must be positive, got {0}")]
    NonpositiveSpeed(f64),
    #[error("profile needs at least two samples, got {0}")]
    TooFewSamples(usize),
    #[error("{0}")]
    Domain(&'static str),
}

fn check_z<T: Real>(z: T) -> Result<(), ProfileError> {
    if z >= T::zero() && z <= T::one() {
        Ok(())
    } else {
        Err(ProfileError::OutOfRange(to_f64(z)))
    }
}

fn check_speed<T: Real>(q: T) -> Result<(), ProfileError> {
    if q > T::zero() && q.is_finite() {
        Ok(())
    } else {
        Err(ProfileError::NonpositiveSpeed(to_f64(q)))
    }
}

/// Local state of one fluid column: depth-averaged fields and the lateral
/// gradients that enter the vertical structure.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProfileInputs<T> {
    pub h: T,
    pub u: T,
    pub v: T,
    pub cbar: T,
    /// Mean speed, strictly positive.
    pub q: T,
    pub dc_dx: T,
    pub dc_dy: T,
    pub du_dx: T,
    pub du_dy: T,
    pub dv_dy: T,
    pub dh_dx: T,
    pub dh_dy: T,
    pub db_dx: T,
    pub db_dy: T,
}

impl<T: Real> ProfileInputs<T> {
    /// Column with the given mean fields and no lateral variation.
    pub fn uniform(h: T, u: T, v: T, cbar: T) -> Self {
        Self {
            h,
            u,
            v,
            cbar,
            q: (u * u + v * v).sqrt(),
            ..Self::zeroed()
        }
    }

    fn zeroed() -> Self {
        let z = T::zero();
        Self {
            h: z,
            u: z,
            v: z,
            cbar: z,
            q: z,
            dc_dx: z,
            dc_dy: z,
            du_dx: z,
            du_dy: z,
            dv_dy: z,
            dh_dx: z,
            dh_dy: z,
            db_dx: z,
            db_dy: z,
        }
    }

    /// `w_f / q` for these inputs.
    pub fn settling_ratio(&self, params: &ModelParams<T>) -> T {
        params.w_f() / self.q
    }

    /// True when the settling ratio exceeds [`SETTLING_RATIO_LIMIT`].
    pub fn outside_settling_regime(&self, params: &ModelParams<T>) -> bool {
        self.settling_ratio(params) > lit(SETTLING_RATIO_LIMIT)
    }
}

/// Sediment concentration `c(Z)` of an out-of-equilibrium column.
///
/// The bed-topography term appears once, with the companion polynomial
/// `0.918 - 0.809 Z + 2.549 Z^2 + 1.343 Z^3` shared by the downslope term.
pub fn concentration_profile<T: Real>(
    z: T,
    col: &ProfileInputs<T>,
    params: &ModelParams<T>,
) -> Result<T, ProfileError> {
    check_z(z)?;
    check_speed(col.q)?;
    let (w, c_ae, q, h) = (params.w_f(), params.c_ae(), col.q, col.h);
    let r = w / q;
    let r2 = w * w / q;
    let q3 = q * q * q;

    let mut c = col.cbar * horner(&C_MEAN, z);
    c = c + col.cbar * r * horner(&C_SETTLING, z);
    c = c + col.cbar * r2 * horner(&C_SETTLING_SQ, z);
    c = c + c_ae * r * horner(&C_ENTRAIN, z);
    c = c + c_ae * r2 * horner(&C_ENTRAIN_SQ, z);
    c = c + h / q * (col.u * col.dc_dx + col.v * col.dc_dy) * horner(&C_ADVECT, z);
    c = c + h * col.cbar / q * col.du_dx * horner(&C_STRETCH_X, z);
    c = c + h * col.cbar / q * col.dv_dy * horner(&C_STRETCH_Y, z);
    c = c + col.cbar / q * (col.u * col.dh_dx + col.v * col.dh_dy) * horner(&C_DEPTH_ADVECT, z);
    let topo = horner(&C_TOPOGRAPHY, z);
    c = c + col.cbar / q3 * (col.u * col.db_dx + col.v * col.db_dy) * topo;
    c = c - params.tan_theta() * h * col.u * col.cbar / q3 * topo;
    Ok(c)
}

/// Concentration profile of steady uniform flow over a flat bed.
pub fn concentration_profile_steady<T: Real>(z: T, cbar: T, c_ae: T, w_f: T, q: T) -> Result<T, ProfileError> {
    check_z(z)?;
    check_speed(q)?;
    let r = w_f / q;
    let r2 = w_f * w_f / q;
    Ok(cbar * horner(&C_MEAN, z)
        + cbar * r * horner(&C_SETTLING, z)
        + cbar * r2 * horner(&C_SETTLING_SQ, z)
        + c_ae * r * horner(&C_ENTRAIN, z)
        + c_ae * r2 * horner(&C_ENTRAIN_SQ, z))
}

/// Power-law approximation `c_ae [(5.29 + Z) / (3.26 (1.62 - Z))]^(-197.45 w_f / q)`
/// obtained by integrating the steady advection-diffusion balance.
pub fn concentration_analytic<T: Real>(z: T, c_ae: T, w_f: T, q: T) -> Result<T, ProfileError> {
    check_speed(q)?;
    if !(z >= T::zero() && z < lit(1.62)) {
        return Err(ProfileError::OutOfRange(to_f64(z)));
    }
    let base = (lit::<T>(5.29) + z) / (lit::<T>(3.26) * (lit::<T>(1.62) - z));
    Ok(c_ae * base.powf(lit::<T>(ANALYTIC_EXPONENT) * w_f / q))
}

/// Lateral velocity `u(Z)` of an out-of-equilibrium column.
pub fn velocity_profile<T: Real>(z: T, col: &ProfileInputs<T>, params: &ModelParams<T>) -> Result<T, ProfileError> {
    check_z(z)?;
    check_speed(col.q)?;
    let h_q = col.h / col.q;
    let mut u = col.u * horner(&U_MEAN, z);
    u = u + params.tan_theta() * h_q * horner(&U_SLOPE, z);
    u = u + h_q * col.u * col.du_dx * horner(&U_STRETCH_X, z);
    u = u + h_q * col.v * col.du_dy * horner(&U_SHEAR_Y, z);
    u = u + h_q * (col.dh_dx + col.db_dx) * horner(&U_SURFACE, z);
    u = u + (params.s() - T::one()) * col.cbar * col.u * horner(&U_SEDIMENT, z);
    Ok(u)
}

/// Steady uniform-flow velocity `sqrt(tan(theta)/c_t) (2.18 + 1.19 Z - ...)`.
pub fn velocity_profile_steady<T: Real>(z: T, tan_theta: T, c_t: T) -> Result<T, ProfileError> {
    check_z(z)?;
    if !(tan_theta >= T::zero()) || !(c_t > T::zero()) {
        return Err(ProfileError::Domain(
            "velocity profile needs tan_theta >= 0 and c_t > 0",
        ));
    }
    Ok((tan_theta / c_t).sqrt() * horner(&STEADY_VELOCITY, z))
}

/// Steady shear stress `tau_xz(Z)`, close to linear from `0.997 tan(theta)` at
/// the bed to nearly zero at the surface.
pub fn shear_stress_profile<T: Real>(z: T, tan_theta: T) -> Result<T, ProfileError> {
    check_z(z)?;
    Ok(tan_theta * horner(&STEADY_SHEAR, z))
}

/// Steady-flow eddy diffusivity of the sediment.
pub fn eddy_diffusivity<T: Real>(z: T, q: T, tan_theta: T) -> Result<T, ProfileError> {
    check_z(z)?;
    check_speed(q)?;
    Ok(q * horner(&DIFFUSIVITY_SPEED, z) + tan_theta / q * horner(&DIFFUSIVITY_SLOPE, z))
}

/// Steady-flow concentration using the uniform-flow substitutions
/// `q = 18.7 sqrt(tan(theta))` and the matching equilibrium mean concentration.
pub fn steady_concentration<T: Real>(z: T, params: &ModelParams<T>) -> Result<T, ProfileError> {
    let q = params.steady_speed();
    let cbar = equilibrium_concentration(params, &ModelCoefficients::PRINTED, q);
    concentration_profile_steady(z, cbar, params.c_ae(), params.w_f(), q)
}

/// Analytic approximation at the same steady substitutions.
pub fn steady_concentration_analytic<T: Real>(z: T, params: &ModelParams<T>) -> Result<T, ProfileError> {
    concentration_analytic(z, params.c_ae(), params.w_f(), params.steady_speed())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    Concentration,
    Velocity,
    ShearStress,
    EddyDiffusivity,
}

/// A profile sampled at increasing stretched coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct VerticalProfile<T> {
    pub kind: ProfileKind,
    pub zs: Vec<T>,
    pub values: Vec<T>,
}

impl<T: Real> VerticalProfile<T> {
    /// Trapezoidal depth average of the samples.
    pub fn depth_average(&self) -> T {
        let half = lit::<T>(0.5);
        self.zs
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(z, f)| (z[1] - z[0]) * half * (f[0] + f[1]))
            .fold(T::zero(), |a, b| a + b)
    }
}

/// Samples `profile` at `n` uniformly spaced points `Z = i / (n - 1)`.
pub fn sample_profile<T, F>(kind: ProfileKind, n: usize, profile: F) -> Result<VerticalProfile<T>, ProfileError>
where
    T: Real,
    F: Fn(T) -> Result<T, ProfileError>,
{
    if n < 2 {
        return Err(ProfileError::TooFewSamples(n));
    }
    let last = lit::<T>((n - 1) as f64);
    let zs: Vec<T> = (0..n).map(|i| lit::<T>(i as f64) / last).collect();
    let values = zs.iter().map(|&z| profile(z)).collect::<Result<Vec<_>, _>>()?;
    Ok(VerticalProfile { kind, zs, values })
}
