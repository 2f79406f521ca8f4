//! Linear vertical spectrum of the shear-flow equilibrium.
//!
//! Perturbations of the velocity and concentration decay like
//! `exp(-nu k^2 t)` where the vertical wavenumbers `k` solve
//!
//! ```text
//! tan k = k / (1 + c_u (1 + c_u) k^2)      (velocity)
//! tan k = h k                               (concentration)
//! ```
//!
//! The depth-averaged modes have zero decay rate, so the gap to the first
//! non-zero wavenumber measures how fast the vertical structure relaxes onto
//! the depth-averaged description.

use thiserror::Error;

use crate::scalar::{lit, to_f64, Real};

/// Distance kept from the poles of `tan` when forming brackets.
const POLE_MARGIN: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("no sign change of the characteristic function on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },
    #[error("root {k} fails its characteristic equation, residual {residual:e}")]
    Residual { k: f64, residual: f64 },
    #[error("{name} must be positive, got {value}")]
    Domain { name: &'static str, value: f64 },
}

fn positive<T: Real>(name: &'static str, value: T) -> Result<(), SpectrumError> {
    if value > T::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(SpectrumError::Domain {
            name,
            value: to_f64(value),
        })
    }
}

/// Roots and decay rates of one family of vertical modes.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult<T> {
    /// Positive non-zero wavenumbers, ascending.
    pub ks: Vec<T>,
    /// `-nu k^2` for each wavenumber.
    pub lambdas: Vec<T>,
    pub nu: T,
}

impl<T: Real> SpectrumResult<T> {
    pub fn new(nu: T, ks: Vec<T>) -> Result<Self, SpectrumError> {
        let lambdas = decay_rates(nu, &ks)?;
        Ok(Self { ks, lambdas, nu })
    }

    /// `nu pi^2`, the lower bound on the decay rate of every fast mode when
    /// all wavenumbers exceed `pi`.
    pub fn gap_bound(&self) -> T {
        self.nu * T::PI() * T::PI()
    }

    /// Decay rate of the slowest non-zero mode, `nu k_1^2`.
    pub fn leading_rate(&self) -> Option<T> {
        self.lambdas.first().map(|&l| -l)
    }
}

/// Eddy viscosity of the linear shear flow, `c_t h q sqrt(2) / (1 + 2 c_u)`.
pub fn equilibrium_eddy_viscosity<T: Real>(c_t: T, h: T, q: T, c_u: T) -> Result<T, SpectrumError> {
    positive("c_t", c_t)?;
    positive("h", h)?;
    positive("q", q)?;
    positive("c_u", c_u)?;
    Ok(c_t * h * q * T::SQRT_2() / (T::one() + lit::<T>(2.0) * c_u))
}

/// `lambda_i = -nu k_i^2`.
pub fn decay_rates<T: Real>(nu: T, ks: &[T]) -> Result<Vec<T>, SpectrumError> {
    positive("nu", nu)?;
    Ok(ks.iter().map(|&k| -nu * k * k).collect())
}

/// Velocity characteristic function `tan k - k / (1 + c_u (1 + c_u) k^2)`.
pub fn velocity_characteristic<T: Real>(c_u: T, k: T) -> T {
    k.tan() - k / (T::one() + c_u * (T::one() + c_u) * k * k)
}

/// Concentration characteristic function `tan k - h k`.
pub fn concentration_characteristic<T: Real>(h: T, k: T) -> T {
    k.tan() - h * k
}

/// First `n` positive non-zero roots of the velocity relation.
///
/// On `(0, pi/2)` one has `tan k > k >= RHS`, so the m-th root lies in the
/// period bracket `((m - 1/2) pi, (m + 1/2) pi)` around `m pi`, just above
/// `m pi`.
pub fn velocity_wavenumbers<T: Real>(c_u: T, n: usize) -> Result<Vec<T>, SpectrumError> {
    positive("c_u", c_u)?;
    let f = |k: T| velocity_characteristic(c_u, k);
    (1..=n).map(|m| root_in_period(&f, m)).collect()
}

/// First `n` positive non-zero roots of `tan k = h k`.
///
/// For `h <= 1` every root lies in a period bracket around `m pi` with
/// `m >= 1`. For `h > 1` the line `h k` also crosses `tan k` once in
/// `(0, pi/2)`; that root is returned first.
pub fn concentration_wavenumbers<T: Real>(h: T, n: usize) -> Result<Vec<T>, SpectrumError> {
    positive("h", h)?;
    let f = |k: T| concentration_characteristic(h, k);
    let mut ks = Vec::with_capacity(n);
    if h > T::one() && n > 0 {
        // near zero f ~ (1 - h) k < 0, and f -> +inf below pi/2
        let lo = lit::<T>(POLE_MARGIN).sqrt();
        let hi = T::FRAC_PI_2() - margin(T::FRAC_PI_2());
        ks.push(bisect(&f, lo, hi)?);
    }
    let mut m = 1;
    while ks.len() < n {
        ks.push(root_in_period(&f, m)?);
        m += 1;
    }
    Ok(ks)
}

/// Pole margin at wavenumber `k`, never below a few ulps of `k`.
fn margin<T: Real>(k: T) -> T {
    lit::<T>(POLE_MARGIN).max(lit::<T>(16.0) * T::epsilon() * k)
}

fn root_in_period<T: Real, F: Fn(T) -> T>(f: &F, m: usize) -> Result<T, SpectrumError> {
    let centre = lit::<T>(m as f64) * T::PI();
    let lo = centre - T::FRAC_PI_2();
    let hi = centre + T::FRAC_PI_2();
    bisect(f, lo + margin(lo), hi - margin(hi))
}

/// Bisection on a sign-changing bracket down to adjacent floating point
/// numbers; the midpoint's residual is checked against the scalar's
/// resolution.
fn bisect<T: Real, F: Fn(T) -> T>(f: &F, mut lo: T, mut hi: T) -> Result<T, SpectrumError> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if !(f_lo.signum() != f_hi.signum()) || f_lo.is_nan() || f_hi.is_nan() {
        return Err(SpectrumError::Bracket {
            lo: to_f64(lo),
            hi: to_f64(hi),
        });
    }
    for _ in 0..2000 {
        let mid = lo + (hi - lo) / lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == T::zero() {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let root = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
    // residual scale: the slope of tan at the root times one ulp of k
    let slope = T::one() + root.tan() * root.tan();
    let tol = lit::<T>(64.0) * T::epsilon() * root * slope.max(T::one());
    let residual = f(root).abs();
    if residual > tol {
        return Err(SpectrumError::Residual {
            k: to_f64(root),
            residual: to_f64(residual),
        });
    }
    Ok(root)
}
