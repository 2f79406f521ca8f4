//! Periodic finite-difference operators.

use crate::scalar::{lit, Real};

use super::grid::{Field, Grid};
use super::SolverError;

fn check<T: Real>(f: &Field<T>, grid: &Grid<T>) -> Result<(), SolverError> {
    if f.matches(grid) {
        Ok(())
    } else {
        Err(SolverError::ShapeMismatch {
            expected: (grid.nx, grid.ny),
            found: f.shape(),
        })
    }
}

/// Central difference `(f[i+1] - f[i-1]) / (2 dx)` with periodic wrap.
pub fn ddx<T: Real>(f: &Field<T>, grid: &Grid<T>) -> Result<Field<T>, SolverError> {
    check(f, grid)?;
    let scale = lit::<T>(2.0) * grid.dx();
    let mut out = Field::zeros(grid);
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let (im, ip) = grid.wrap_x(i);
            out[(i, j)] = (f[(ip, j)] - f[(im, j)]) / scale;
        }
    }
    Ok(out)
}

/// Central difference along y.
pub fn ddy<T: Real>(f: &Field<T>, grid: &Grid<T>) -> Result<Field<T>, SolverError> {
    check(f, grid)?;
    let scale = lit::<T>(2.0) * grid.dy();
    let mut out = Field::zeros(grid);
    for j in 0..grid.ny {
        let (jm, jp) = grid.wrap_y(j);
        for i in 0..grid.nx {
            out[(i, j)] = (f[(i, jp)] - f[(i, jm)]) / scale;
        }
    }
    Ok(out)
}

/// Mean speed `sqrt(u^2 + v^2 + eps^2)`, strictly positive.
#[inline(always)]
pub fn speed<T: Real>(u: T, v: T, eps_q: T) -> T {
    (u * u + v * v + eps_q * eps_q).sqrt()
}

/// Pointwise [`speed`] over whole fields.
pub fn regularized_speed<T: Real>(u: &Field<T>, v: &Field<T>, eps_q: T) -> Result<Field<T>, SolverError> {
    if u.shape() != v.shape() {
        return Err(SolverError::ShapeMismatch {
            expected: u.shape(),
            found: v.shape(),
        });
    }
    let mut out = u.clone();
    for (o, &vv) in out.as_mut_slice().iter_mut().zip(v.iter()) {
        *o = speed(*o, vv, eps_q);
    }
    Ok(out)
}

/// Values of a field at one cell and its two neighbours along one axis.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Line<T> {
    pub minus: T,
    pub centre: T,
    pub plus: T,
}

impl<T: Real> Line<T> {
    #[inline(always)]
    pub fn central(&self, spacing: T) -> T {
        (self.plus - self.minus) / (lit::<T>(2.0) * spacing)
    }

    /// `a df/ds`, one-sided on the upwind side of `a`.
    #[inline(always)]
    pub fn upwind(&self, a: T, spacing: T) -> T {
        if a >= T::zero() {
            a * (self.centre - self.minus) / spacing
        } else {
            a * (self.plus - self.centre) / spacing
        }
    }

    #[inline(always)]
    pub fn second(&self, spacing: T) -> T {
        (self.plus - lit::<T>(2.0) * self.centre + self.minus) / (spacing * spacing)
    }

    /// `d/ds (h^2 df/ds)` with `h^2` averaged onto the two faces.
    #[inline(always)]
    pub fn weighted_second(&self, h: &Line<T>, spacing: T) -> T {
        let half = lit::<T>(0.5);
        let hp = (h.centre + h.plus) * half;
        let hm = (h.minus + h.centre) * half;
        (hp * hp * (self.plus - self.centre) - hm * hm * (self.centre - self.minus)) / (spacing * spacing)
    }
}
