//! Model constants and the closed-form quantities derived from them.

use thiserror::Error;

use crate::coefficients::ModelCoefficients;
use crate::profiles::STEADY_VELOCITY;
use crate::scalar::{lit, to_f64, unit_mean, Real};

/// Depth-averaged speed of steady uniform flow per unit `sqrt(tan(theta))`,
/// used by the steady-flow profile substitutions.
pub const STEADY_SPEED_FACTOR: f64 = 18.7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("parameter `{name}` = {value} out of domain: requires {requirement}")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
}

fn require<T: Real>(ok: bool, name: &'static str, value: T, requirement: &'static str) -> Result<(), ParamError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(ParamError::Domain {
            name,
            value: to_f64(value),
            requirement,
        })
    }
}

/// Terminal settling speed of a sphere of nondimensional diameter `d`:
/// `sqrt(4 (s - 1) g d / (3 c_D))`.
pub fn falling_velocity<T: Real>(s: T, g: T, d: T, c_d: T) -> Result<T, ParamError> {
    require(s > T::one(), "s", s, "s > 1")?;
    require(g > T::zero(), "g", g, "g > 0")?;
    require(d > T::zero(), "d", d, "d > 0")?;
    require(c_d > T::zero(), "c_d", c_d, "c_d > 0")?;
    Ok((lit::<T>(4.0) * (s - T::one()) * g * d / (lit::<T>(3.0) * c_d)).sqrt())
}

/// Equilibrium near-bed reference concentration
/// `3.26 tan^1.5(theta) / (d^0.8 (1.39 - ln d)^3)`.
///
/// The logarithm is natural. With `tan(theta) = 0.01` and `d = 6e-5` this
/// gives 0.0057; a base-10 logarithm would give roughly 0.044.
pub fn reference_concentration<T: Real>(tan_theta: T, d: T) -> Result<T, ParamError> {
    require(tan_theta >= T::zero(), "tan_theta", tan_theta, "tan_theta >= 0")?;
    require(d > T::zero() && d < lit(4.0), "d", d, "0 < d < 4")?;
    let log_term = lit::<T>(1.39) - d.ln();
    Ok(lit::<T>(3.26) * tan_theta.powf(lit(1.5)) / (d.powf(lit(0.8)) * log_term * log_term * log_term))
}

/// Smagorinski constant that makes the depth average of the steady velocity
/// profile polynomial equal to `18.7 sqrt(c_t)`, i.e. `(P / 18.7)^2` with `P`
/// the mean of the polynomial over the depth. About 0.0202.
pub fn smagorinski_constant_consistency<T: Real>() -> T {
    let mean: T = unit_mean(&STEADY_VELOCITY);
    let ratio = mean / lit(STEADY_SPEED_FACTOR);
    ratio * ratio
}

/// Physical and closure constants of one simulation.
///
/// The falling velocity and reference concentration are derived once at
/// construction; the struct is immutable afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    tan_theta: T,
    s: T,
    d: T,
    c_d: T,
    c_u: T,
    c_t: T,
    g: T,
    w_f: T,
    c_ae: T,
}

impl<T: Real> ModelParams<T> {
    pub const DEFAULT_C_D: f64 = 1.4;
    pub const DEFAULT_C_U: f64 = 1.85;

    /// Parameters with the default drag, slip and Smagorinski constants.
    pub fn new(tan_theta: T, s: T, d: T) -> Result<Self, ParamError> {
        Self::with_constants(
            tan_theta,
            s,
            d,
            lit(Self::DEFAULT_C_D),
            lit(Self::DEFAULT_C_U),
            smagorinski_constant_consistency(),
        )
    }

    pub fn with_constants(tan_theta: T, s: T, d: T, c_d: T, c_u: T, c_t: T) -> Result<Self, ParamError> {
        require(c_u > T::zero(), "c_u", c_u, "c_u > 0")?;
        require(c_t > T::zero(), "c_t", c_t, "c_t > 0")?;
        let g = T::one();
        let w_f = falling_velocity(s, g, d, c_d)?;
        let c_ae = reference_concentration(tan_theta, d)?;
        Ok(Self {
            tan_theta,
            s,
            d,
            c_d,
            c_u,
            c_t,
            g,
            w_f,
            c_ae,
        })
    }

    /// Same constants with a different mean bed slope.
    pub fn with_slope(&self, tan_theta: T) -> Result<Self, ParamError> {
        Self::with_constants(tan_theta, self.s, self.d, self.c_d, self.c_u, self.c_t)
    }

    /// Same constants with a different particle size.
    pub fn with_particle_size(&self, d: T) -> Result<Self, ParamError> {
        Self::with_constants(self.tan_theta, self.s, d, self.c_d, self.c_u, self.c_t)
    }

    pub fn tan_theta(&self) -> T {
        self.tan_theta
    }
    pub fn s(&self) -> T {
        self.s
    }
    pub fn d(&self) -> T {
        self.d
    }
    pub fn c_d(&self) -> T {
        self.c_d
    }
    pub fn c_u(&self) -> T {
        self.c_u
    }
    pub fn c_t(&self) -> T {
        self.c_t
    }
    pub fn g(&self) -> T {
        self.g
    }
    /// Falling velocity of the sediment.
    pub fn w_f(&self) -> T {
        self.w_f
    }
    /// Equilibrium reference concentration on the mean bed.
    pub fn c_ae(&self) -> T {
        self.c_ae
    }

    /// Mean speed of steady uniform flow as substituted in the steady
    /// profile formulas, `18.7 sqrt(tan(theta))`.
    pub fn steady_speed(&self) -> T {
        lit::<T>(STEADY_SPEED_FACTOR) * self.tan_theta.sqrt()
    }
}

/// Rippled-bed scenario defaults: slope 0.01, quartz (`s = 2.65`), `d = 6e-5`.
impl<T: Real> Default for ModelParams<T> {
    fn default() -> Self {
        Self::new(lit(0.01), lit(2.65), lit(6e-5)).expect("default parameters are valid")
    }
}

/// Uniform steady flow over a flat bed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equilibrium<T> {
    /// Depth-averaged downslope velocity.
    pub u: T,
    /// Depth-averaged cross-slope velocity, zero by symmetry.
    pub v: T,
    /// Depth-averaged concentration.
    pub cbar: T,
    /// Mean speed `sqrt(u^2 + v^2)`.
    pub q: T,
}

/// Concentration that zeroes the deposition/entrainment balance at speed `q`:
/// `c_ae (0.984 - 51.3 w_f/q) / (0.938 + 28.9 w_f/q)`.
pub fn equilibrium_concentration<T: Real>(params: &ModelParams<T>, coeffs: &ModelCoefficients, q: T) -> T {
    let r = params.w_f() / q;
    let up = lit::<T>(coeffs.entrainment[0]) + lit::<T>(coeffs.entrainment[1]) * r;
    let down = lit::<T>(coeffs.deposition[0]) + lit::<T>(coeffs.deposition[1]) * r;
    params.c_ae() * up / down
}

/// Speed at which bed drag balances gravity when sediment feedback on the
/// drag is ignored: `sqrt(0.993 tan(theta) h / 0.00293)`, about `18.41 sqrt(tan(theta))`.
pub fn uncoupled_speed<T: Real>(tan_theta: T, depth: T, coeffs: &ModelCoefficients) -> T {
    (lit::<T>(coeffs.gravity) * tan_theta * depth / lit::<T>(coeffs.drag)).sqrt()
}

/// Uniform flat-bed fixed point of the comprehensive model at unit depth.
pub fn steady_equilibrium<T: Real>(params: &ModelParams<T>) -> Result<Equilibrium<T>, ParamError> {
    uniform_equilibrium(params, &ModelCoefficients::PRINTED, T::one())
}

/// Uniform flat-bed fixed point at the given depth.
///
/// The downslope velocity balances gravity against bed drag including the
/// small suspended-load drag correction `0.00257 (s - 1) u c q / h`, so that
/// the returned state is an exact zero of the comprehensive tendency. The
/// correction couples `u` to the equilibrium concentration, which is solved by
/// fixed-point iteration (it shifts `u` by roughly 0.25% at the rippled-bed
/// operating point).
pub fn uniform_equilibrium<T: Real>(
    params: &ModelParams<T>,
    coeffs: &ModelCoefficients,
    depth: T,
) -> Result<Equilibrium<T>, ParamError> {
    require(
        params.tan_theta() > T::zero(),
        "tan_theta",
        params.tan_theta(),
        "tan_theta > 0",
    )?;
    require(depth > T::zero(), "depth", depth, "depth > 0")?;

    let forcing = lit::<T>(coeffs.gravity) * params.tan_theta() * depth;
    let feedback = lit::<T>(coeffs.sediment_drag) * (params.s() - T::one());
    let mut u = uncoupled_speed(params.tan_theta(), depth, coeffs);
    let mut cbar = equilibrium_concentration(params, coeffs, u);
    for _ in 0..200 {
        let effective_drag = lit::<T>(coeffs.drag) - feedback * cbar;
        let next = (forcing / effective_drag).sqrt();
        cbar = equilibrium_concentration(params, coeffs, next);
        let done = (next - u).abs() <= lit::<T>(4.0) * T::epsilon() * next;
        u = next;
        if done {
            break;
        }
    }
    Ok(Equilibrium {
        u,
        v: T::zero(),
        cbar,
        q: u,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn falling_velocity_matches_figure_captions() {
        let w = falling_velocity(2.65_f64, 1.0, 6e-5, 1.4).unwrap();
        assert!((w - 0.0097).abs() <= 1e-4, "{w}");
        let w = falling_velocity(2.65_f64, 1.0, 1.65e-4, 1.4).unwrap();
        assert!((w - 0.0161).abs() <= 1e-4, "{w}");
    }

    #[test]
    fn falling_velocity_rejects_zero_size() {
        assert!(matches!(
            falling_velocity(2.65, 1.0, 0.0, 1.4),
            Err(ParamError::Domain { name: "d", .. })
        ));
        assert!(falling_velocity(1.0, 1.0, 1e-4, 1.4).is_err());
        assert!(falling_velocity(2.65, 1.0, 1e-4, 0.0).is_err());
    }

    #[test]
    fn reference_concentration_uses_natural_log() {
        let c = reference_concentration(0.01_f64, 6e-5).unwrap();
        assert!((c - 0.0057).abs() <= 2e-4, "{c}");
        // a decimal logarithm lands nowhere near the caption value
        let log10_variant = 3.26 * 0.01f64.powf(1.5) / (6e-5f64.powf(0.8) * (1.39 - 6e-5f64.log10()).powi(3));
        assert!((log10_variant - 0.0057).abs() > 0.03);
    }

    #[test]
    fn reference_concentration_against_high_precision() {
        // 50-digit evaluation with mpmath of 3.26*0.01^1.5/(1.65e-4^0.8*(1.39-ln 1.65e-4)^3)
        let oracle = 0.003_359_869_644_090_11_f64;
        let c = reference_concentration(0.01, 1.65e-4).unwrap();
        assert_relative_eq!(c, oracle, max_relative = 1e-13);
    }

    #[test]
    fn reference_concentration_edges() {
        assert_eq!(reference_concentration(0.0, 1e-4).unwrap(), 0.0);
        assert!(reference_concentration(0.01, 0.0).is_err());
        assert!(reference_concentration(0.01, 4.0).is_err());
        assert!(reference_concentration(-0.01, 1e-4).is_err());
    }

    #[test]
    fn consistency_constant() {
        let c_t: f64 = smagorinski_constant_consistency();
        assert!((c_t - 0.0202).abs() < 5e-5, "{c_t}");
        assert!(c_t > 0.015 && c_t < 0.025);
        let mean: f64 = unit_mean(&STEADY_VELOCITY);
        assert!((c_t.sqrt() * 18.7 - mean).abs() < 1e-6);
    }

    #[test]
    fn params_cache_is_coherent() {
        let p = ModelParams::<f64>::default();
        assert_eq!(p.w_f(), falling_velocity(p.s(), p.g(), p.d(), p.c_d()).unwrap());
        assert_eq!(p.c_ae(), reference_concentration(p.tan_theta(), p.d()).unwrap());
        let q = p.with_particle_size(1e-4).unwrap();
        assert_eq!(q.w_f(), falling_velocity(2.65, 1.0, 1e-4, 1.4).unwrap());
    }

    #[test]
    fn equilibrium_at_rippled_bed_operating_point() {
        let p = ModelParams::<f64>::default();
        let eq = steady_equilibrium(&p).unwrap();
        let ratio = eq.u / p.tan_theta().sqrt();
        assert!((18.3..=18.8).contains(&ratio), "{ratio}");
        assert!((eq.cbar - 0.0035).abs() <= 0.1 * 0.0035, "{}", eq.cbar);
        assert_eq!(eq.v, 0.0);
        assert_eq!(eq.q, (eq.u * eq.u + eq.v * eq.v).sqrt());
        assert!((eq.u - 1.86).abs() < 0.02);
    }

    #[test]
    fn equilibrium_vanishes_with_slope() {
        let p = ModelParams::<f64>::default().with_slope(1e-14).unwrap();
        let eq = steady_equilibrium(&p).unwrap();
        assert!(eq.u < 1e-5);
        assert!(eq.cbar.abs() < 1e-15);
        assert!(steady_equilibrium(&ModelParams::<f64>::default().with_slope(0.0).unwrap()).is_err());
    }

    #[test]
    fn sediment_drag_correction_is_small_but_not_negligible() {
        // the correction relative to bed drag is 0.00257 (s - 1) c / 0.00293
        let p = ModelParams::<f64>::default();
        let eq = steady_equilibrium(&p).unwrap();
        let c = ModelCoefficients::PRINTED;
        let ratio = c.sediment_drag * (p.s() - 1.0) * eq.cbar / c.drag;
        assert!(ratio > 1e-3 && ratio < 1e-2, "{ratio}");
        let bare = uncoupled_speed(p.tan_theta(), 1.0, &c);
        assert!((bare / 0.1 - 18.41).abs() < 0.01);
        assert!(eq.u > bare);
    }

    #[test]
    fn f32_parameters() {
        let p = ModelParams::<f32>::default();
        assert!((p.w_f() - 0.0097).abs() < 1e-4);
        assert!((p.c_ae() - 0.0057).abs() < 2e-4);
    }

    proptest! {
        #[test]
        fn falling_velocity_scales_with_root_size(d in 1e-7f64..0.5) {
            let a = falling_velocity(2.65, 1.0, d, 1.4).unwrap();
            let b = falling_velocity(2.65, 1.0, 4.0 * d, 1.4).unwrap();
            prop_assert!((b / a - 2.0).abs() < 4.0 * f64::EPSILON);
        }

        #[test]
        fn reference_concentration_scales_with_slope(t in 1e-6f64..0.2, d in 1e-6f64..1.0) {
            let a = reference_concentration(t, d).unwrap();
            let b = reference_concentration(4.0 * t, d).unwrap();
            prop_assert!((b / a - 8.0).abs() < 1e-13);
        }

        #[test]
        fn equilibrium_concentration_positive_below_threshold(t in 1e-4f64..0.1, d in 1e-6f64..1e-3) {
            let p = ModelParams::<f64>::new(t, 2.65, d).unwrap();
            let eq = steady_equilibrium(&p).unwrap();
            if p.w_f() / eq.q < 0.984 / 51.3 {
                prop_assert!(eq.cbar > 0.0);
            }
        }
    }
}
