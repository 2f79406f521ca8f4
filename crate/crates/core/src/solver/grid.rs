use std::ops::{Index, IndexMut};

use crate::scalar::{lit, Real};

use super::SolverError;

/// Doubly periodic lateral grid. Cell `(i, j)` sits at `(i dx, j dy)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    pub nx: usize,
    pub ny: usize,
    pub lx: T,
    pub ly: T,
}

impl<T: Real> Grid<T> {
    pub fn new(nx: usize, ny: usize, lx: T, ly: T) -> Result<Self, SolverError> {
        if nx == 0 || ny == 0 || !(lx > T::zero()) || !(ly > T::zero()) {
            return Err(SolverError::InvalidGrid);
        }
        Ok(Self { nx, ny, lx, ly })
    }

    pub fn dx(&self) -> T {
        self.lx / lit(self.nx as f64)
    }

    pub fn dy(&self) -> T {
        self.ly / lit(self.ny as f64)
    }

    pub fn x(&self, i: usize) -> T {
        lit::<T>(i as f64) * self.dx()
    }

    pub fn y(&self, j: usize) -> T {
        lit::<T>(j as f64) * self.dy()
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat index of cell `(i, j)`, rows of constant `j` are contiguous.
    #[inline(always)]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Periodic neighbours `(i - 1, i + 1)` along x.
    #[inline(always)]
    pub fn wrap_x(&self, i: usize) -> (usize, usize) {
        wrap(i, self.nx)
    }

    /// Periodic neighbours `(j - 1, j + 1)` along y.
    #[inline(always)]
    pub fn wrap_y(&self, j: usize) -> (usize, usize) {
        wrap(j, self.ny)
    }

    /// Grid with the axes swapped.
    pub fn transposed(&self) -> Self {
        Self {
            nx: self.ny,
            ny: self.nx,
            lx: self.ly,
            ly: self.lx,
        }
    }
}

#[inline(always)]
fn wrap(i: usize, n: usize) -> (usize, usize) {
    let minus = if i == 0 { n - 1 } else { i - 1 };
    let plus = if i + 1 == n { 0 } else { i + 1 };
    (minus, plus)
}

/// A scalar field on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Field<T> {
    nx: usize,
    ny: usize,
    data: Vec<T>,
}

impl<T: Real> Field<T> {
    pub fn constant(grid: &Grid<T>, value: T) -> Self {
        Self {
            nx: grid.nx,
            ny: grid.ny,
            data: vec![value; grid.len()],
        }
    }

    pub fn zeros(grid: &Grid<T>) -> Self {
        Self::constant(grid, T::zero())
    }

    /// Field sampled from `f(x, y)` at the cell positions.
    pub fn from_fn(grid: &Grid<T>, f: impl Fn(T, T) -> T) -> Self {
        let mut data = Vec::with_capacity(grid.len());
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                data.push(f(grid.x(i), grid.y(j)));
            }
        }
        Self {
            nx: grid.nx,
            ny: grid.ny,
            data,
        }
    }

    pub fn from_vec(grid: &Grid<T>, data: Vec<T>) -> Result<Self, SolverError> {
        if data.len() != grid.len() {
            return Err(SolverError::ShapeMismatch {
                expected: (grid.nx, grid.ny),
                found: (data.len(), 1),
            });
        }
        Ok(Self {
            nx: grid.nx,
            ny: grid.ny,
            data,
        })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn matches(&self, grid: &Grid<T>) -> bool {
        self.nx == grid.nx && self.ny == grid.ny
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.data.iter()
    }

    pub fn sum(&self) -> T {
        self.data.iter().fold(T::zero(), |a, &b| a + b)
    }

    pub fn mean(&self) -> T {
        self.sum() / lit(self.data.len() as f64)
    }

    pub fn min(&self) -> T {
        self.data.iter().fold(T::infinity(), |a, &b| a.min(b))
    }

    pub fn max(&self) -> T {
        self.data.iter().fold(T::neg_infinity(), |a, &b| a.max(b))
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            nx: self.nx,
            ny: self.ny,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Largest absolute pointwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    /// Field with `(i, j)` moved to `(j, i)`.
    pub fn transposed(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for i in 0..self.nx {
            for j in 0..self.ny {
                data.push(self.data[j * self.nx + i]);
            }
        }
        Self {
            nx: self.ny,
            ny: self.nx,
            data,
        }
    }

    /// Field shifted periodically by `k` cells along x: `out(i) = self(i - k)`.
    pub fn rolled_x(&self, k: usize) -> Self {
        let mut out = self.clone();
        for j in 0..self.ny {
            for i in 0..self.nx {
                out.data[j * self.nx + (i + k) % self.nx] = self.data[j * self.nx + i];
            }
        }
        out
    }

    /// `self + a * other`, the RK stage update.
    pub(crate) fn axpy(&self, a: T, other: &Self) -> Self {
        Self {
            nx: self.nx,
            ny: self.ny,
            data: self.data.iter().zip(&other.data).map(|(&x, &y)| x + a * y).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Field<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[j * self.nx + i]
    }
}

impl<T> IndexMut<(usize, usize)> for Field<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[j * self.nx + i]
    }
}

/// Depth, depth-averaged velocities and concentration over a static bed.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState<T> {
    pub grid: Grid<T>,
    pub t: T,
    pub h: Field<T>,
    pub u: Field<T>,
    pub v: Field<T>,
    pub c: Field<T>,
    pub b: Field<T>,
}

impl<T: Real> FlowState<T> {
    /// Spatially uniform state over a flat bed.
    pub fn uniform(grid: Grid<T>, h: T, u: T, v: T, c: T) -> Self {
        Self {
            grid,
            t: T::zero(),
            h: Field::constant(&grid, h),
            u: Field::constant(&grid, u),
            v: Field::constant(&grid, v),
            c: Field::constant(&grid, c),
            b: Field::zeros(&grid),
        }
    }

    pub fn check_shapes(&self) -> Result<(), SolverError> {
        for f in [&self.h, &self.u, &self.v, &self.c, &self.b] {
            if !f.matches(&self.grid) {
                return Err(SolverError::ShapeMismatch {
                    expected: (self.grid.nx, self.grid.ny),
                    found: f.shape(),
                });
            }
        }
        Ok(())
    }

    /// Total fluid volume `sum(h) dx dy`.
    pub fn volume(&self) -> T {
        self.h.sum() * self.grid.dx() * self.grid.dy()
    }

    /// State with the axes swapped, `u` and `v` exchanged.
    pub fn transposed(&self) -> Self {
        Self {
            grid: self.grid.transposed(),
            t: self.t,
            h: self.h.transposed(),
            u: self.v.transposed(),
            v: self.u.transposed(),
            c: self.c.transposed(),
            b: self.b.transposed(),
        }
    }

    /// Largest pointwise difference over the evolving fields.
    pub fn max_field_diff(&self, other: &Self) -> T {
        self.h
            .max_abs_diff(&other.h)
            .max(self.u.max_abs_diff(&other.u))
            .max(self.v.max_abs_diff(&other.v))
            .max(self.c.max_abs_diff(&other.c))
    }
}

/// Time derivatives of the four evolving fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Tendency<T> {
    pub dh: Field<T>,
    pub du: Field<T>,
    pub dv: Field<T>,
    pub dc: Field<T>,
}

impl<T: Real> Tendency<T> {
    pub fn zeros(grid: &Grid<T>) -> Self {
        Self {
            dh: Field::zeros(grid),
            du: Field::zeros(grid),
            dv: Field::zeros(grid),
            dc: Field::zeros(grid),
        }
    }

    /// Largest absolute value over all four fields.
    pub fn max_abs(&self) -> T {
        [&self.dh, &self.du, &self.dv, &self.dc]
            .iter()
            .flat_map(|f| f.iter())
            .fold(T::zero(), |m, &v| m.max(v.abs()))
    }

    pub fn transposed(&self) -> Self {
        Self {
            dh: self.dh.transposed(),
            du: self.dv.transposed(),
            dv: self.du.transposed(),
            dc: self.dc.transposed(),
        }
    }
}
