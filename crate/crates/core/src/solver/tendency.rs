//! Right-hand sides of the depth-averaged models on the periodic grid.
//!
//! Gradients and dispersion terms are second-order central; the
//! self-advection products `u du/dx`, `v du/dy`, `u dc/dx`, ... are first-order
//! upwind. The x- and y-momentum equations share one kernel with the roles of
//! the two axes exchanged, so the discrete scheme treats both directions
//! identically.

use crate::coefficients::{ModelCoefficients, LEADING_ADVECTION, LEADING_EXCHANGE, REFERENCE_DISPERSION};
use crate::params::ModelParams;
use crate::scalar::{lit, to_f64, Real};

use super::grid::{Field, FlowState, Tendency};
use super::ops::{speed, Line};
use super::{Axis, RhsChoice, SolverError, SolverSettings};

/// Coefficients converted to the working scalar once per evaluation.
struct Coeffs<T> {
    drag: T,
    gravity: T,
    advect_along: T,
    advect_cross: T,
    depth_gradient_u: T,
    depth_gradient_v: T,
    dispersion: T,
    dispersion_aniso: T,
    sediment_drag: T,
    sediment_pressure: T,
    deposition: [T; 2],
    entrainment: [T; 2],
    sediment_advection: [T; 2],
    sediment_dispersion: T,
    sediment_dispersion_aniso: T,
}

impl<T: Real> Coeffs<T> {
    fn new(k: &ModelCoefficients) -> Self {
        Self {
            drag: lit(k.drag),
            gravity: lit(k.gravity),
            advect_along: lit(k.advect_along),
            advect_cross: lit(k.advect_cross),
            depth_gradient_u: lit(k.depth_gradient_u),
            depth_gradient_v: lit(k.depth_gradient_v),
            dispersion: lit(k.momentum_dispersion),
            dispersion_aniso: lit(k.momentum_dispersion_aniso),
            sediment_drag: lit(k.sediment_drag),
            sediment_pressure: lit(k.sediment_pressure),
            deposition: [lit(k.deposition[0]), lit(k.deposition[1])],
            entrainment: [lit(k.entrainment[0]), lit(k.entrainment[1])],
            sediment_advection: [lit(k.sediment_advection[0]), lit(k.sediment_advection[1])],
            sediment_dispersion: lit(k.sediment_dispersion),
            sediment_dispersion_aniso: lit(k.sediment_dispersion_aniso),
        }
    }
}

/// Local inputs of one momentum equation, written for the velocity component
/// `along` one axis with `cross` the other component.
struct Momentum<T> {
    along: T,
    cross: T,
    h: T,
    q: T,
    c: T,
    slope: T,
    surface_slope: T,
    advect_along: T,
    advect_cross: T,
    disp_along: T,
    disp_cross: T,
    curv_along: T,
    curv_cross: T,
    conc_slope: T,
}

#[inline(always)]
fn full_momentum<T: Real>(m: &Momentum<T>, k: &Coeffs<T>, s_minus_one: T) -> T {
    let mut r = -k.drag * m.along * m.q / m.h;
    r = r + k.gravity * (m.slope - m.surface_slope);
    r = r - k.advect_along * m.advect_along;
    r = r - k.advect_cross * m.advect_cross;
    r = r + k.dispersion * m.q / m.h * (m.disp_along + m.disp_cross);
    r = r + k.dispersion_aniso * (m.along * m.along - m.cross * m.cross) / (m.h * m.q) * (m.disp_along - m.disp_cross);
    r = r + k.sediment_drag * s_minus_one * m.along * m.c * m.q / m.h;
    r - k.sediment_pressure * s_minus_one * m.h * m.conc_slope
}

#[inline(always)]
fn leading_momentum<T: Real>(m: &Momentum<T>, k: &Coeffs<T>, s_minus_one: T, art: (T, T)) -> T {
    let mut r = -k.drag * m.along * m.q / m.h;
    r = r + k.gravity * (m.slope - m.surface_slope);
    r = r - k.advect_along * m.advect_along;
    r = r - k.advect_cross * m.advect_cross;
    r = r - k.sediment_pressure * s_minus_one * m.h * m.conc_slope;
    r + (art.0 * m.curv_along + art.1 * m.curv_cross)
}

#[inline(always)]
fn lines<T: Real>(f: &[T], c: usize, xm: usize, xp: usize, ym: usize, yp: usize) -> (Line<T>, Line<T>) {
    (
        Line {
            minus: f[xm],
            centre: f[c],
            plus: f[xp],
        },
        Line {
            minus: f[ym],
            centre: f[c],
            plus: f[yp],
        },
    )
}

fn check_depth<T: Real>(state: &FlowState<T>) -> Result<(), SolverError> {
    let min = state.h.min();
    if min > T::zero() {
        Ok(())
    } else {
        Err(SolverError::NonpositiveDepth {
            t: to_f64(state.t),
            min: to_f64(min),
        })
    }
}

fn check_finite<T: Real>(t: T, tend: &Tendency<T>) -> Result<(), SolverError> {
    for (name, f) in [("h", &tend.dh), ("u", &tend.du), ("v", &tend.dv), ("c", &tend.dc)] {
        if !f.all_finite() {
            return Err(SolverError::NonFiniteField {
                t: to_f64(t),
                field: name,
            });
        }
    }
    Ok(())
}

/// Constant artificial diffusivities `0.01 dx s`, `0.01 dy s` with `s` the
/// largest characteristic speed `q + sqrt(g h)` in the state.
fn artificial_diffusion<T: Real>(
    state: &FlowState<T>,
    params: &ModelParams<T>,
    settings: &SolverSettings<T>,
) -> (T, T) {
    let mut fastest = T::zero();
    for k in 0..state.grid.len() {
        let q = speed(state.u.as_slice()[k], state.v.as_slice()[k], settings.eps_q);
        fastest = fastest.max(q + (params.g() * state.h.as_slice()[k]).sqrt());
    }
    (
        settings.leading_diffusion * state.grid.dx() * fastest,
        settings.leading_diffusion * state.grid.dy() * fastest,
    )
}

fn slopes<T: Real>(params: &ModelParams<T>, settings: &SolverSettings<T>) -> (T, T) {
    match settings.downslope {
        Axis::X => (params.tan_theta(), T::zero()),
        Axis::Y => (T::zero(), params.tan_theta()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flavour {
    Leading,
    Full,
}

fn evaluate<T: Real>(
    state: &FlowState<T>,
    params: &ModelParams<T>,
    settings: &SolverSettings<T>,
    flavour: Flavour,
) -> Result<Tendency<T>, SolverError> {
    state.check_shapes()?;
    check_depth(state)?;
    let grid = state.grid;
    let (dx, dy) = (grid.dx(), grid.dy());
    let k = Coeffs::<T>::new(&settings.coefficients);
    let s_minus_one = params.s() - T::one();
    let (w, c_ae) = (params.w_f(), params.c_ae());
    let (slope_x, slope_y) = slopes(params, settings);
    let art = match flavour {
        Flavour::Leading => artificial_diffusion(state, params, settings),
        Flavour::Full => (T::zero(), T::zero()),
    };
    let leading_adv = [lit::<T>(LEADING_ADVECTION[0]), lit::<T>(LEADING_ADVECTION[1])];
    let leading_exchange = [lit::<T>(LEADING_EXCHANGE[0]), lit::<T>(LEADING_EXCHANGE[1])];

    let (h, u, v, c, b) = (
        state.h.as_slice(),
        state.u.as_slice(),
        state.v.as_slice(),
        state.c.as_slice(),
        state.b.as_slice(),
    );
    let mut out = Tendency::zeros(&grid);

    for j in 0..grid.ny {
        let (jm, jp) = grid.wrap_y(j);
        for i in 0..grid.nx {
            let (im, ip) = grid.wrap_x(i);
            let n = grid.idx(i, j);
            let (xm, xp, ym, yp) = (grid.idx(im, j), grid.idx(ip, j), grid.idx(i, jm), grid.idx(i, jp));

            let (hx, hy) = lines(h, n, xm, xp, ym, yp);
            let (ux, uy) = lines(u, n, xm, xp, ym, yp);
            let (vx, vy) = lines(v, n, xm, xp, ym, yp);
            let (cx, cy) = lines(c, n, xm, xp, ym, yp);
            let surface_x = Line {
                minus: h[xm] + b[xm],
                centre: h[n] + b[n],
                plus: h[xp] + b[xp],
            };
            let surface_y = Line {
                minus: h[ym] + b[ym],
                centre: h[n] + b[n],
                plus: h[yp] + b[yp],
            };

            let (hc, uc, vc, cc) = (h[n], u[n], v[n], c[n]);
            let q = speed(uc, vc, settings.eps_q);

            let flux_x = (h[xp] * u[xp] - h[xm] * u[xm]) / (lit::<T>(2.0) * dx);
            let flux_y = (h[yp] * v[yp] - h[ym] * v[ym]) / (lit::<T>(2.0) * dy);
            out.dh.as_mut_slice()[n] = -(flux_x + flux_y);

            let mu = Momentum {
                along: uc,
                cross: vc,
                h: hc,
                q,
                c: cc,
                slope: slope_x,
                surface_slope: surface_x.central(dx),
                advect_along: ux.upwind(uc, dx),
                advect_cross: uy.upwind(vc, dy),
                disp_along: ux.weighted_second(&hx, dx),
                disp_cross: uy.weighted_second(&hy, dy),
                curv_along: ux.second(dx),
                curv_cross: uy.second(dy),
                conc_slope: cx.central(dx),
            };
            let mv = Momentum {
                along: vc,
                cross: uc,
                h: hc,
                q,
                c: cc,
                slope: slope_y,
                surface_slope: surface_y.central(dy),
                advect_along: vy.upwind(vc, dy),
                advect_cross: vx.upwind(uc, dx),
                disp_along: vy.weighted_second(&hy, dy),
                disp_cross: vx.weighted_second(&hx, dx),
                curv_along: vy.second(dy),
                curv_cross: vx.second(dx),
                conc_slope: cy.central(dy),
            };

            let ratio = w / q;
            let advect_c = cx.upwind(uc, dx) + cy.upwind(vc, dy);

            let (du, dv, dc) = match flavour {
                Flavour::Full => {
                    let (dh_dx, dh_dy) = (hx.central(dx), hy.central(dy));
                    let du = full_momentum(&mu, &k, s_minus_one)
                        - k.depth_gradient_u * (uc * uc / hc * dh_dx - uc * vc / hc * dh_dy);
                    let dv = full_momentum(&mv, &k, s_minus_one)
                        - k.depth_gradient_v * (uc * vc / hc * dh_dx - vc * vc / hc * dh_dy);

                    let (disp_x, disp_y) = (cx.weighted_second(&hx, dx), cy.weighted_second(&hy, dy));
                    let mut dc = -(w / hc) * (k.deposition[0] + k.deposition[1] * ratio) * cc;
                    dc = dc + (w / hc) * (k.entrainment[0] + k.entrainment[1] * ratio) * c_ae;
                    dc = dc - (k.sediment_advection[0] + k.sediment_advection[1] * ratio) * advect_c;
                    dc = dc + k.sediment_dispersion * q / hc * (disp_x + disp_y);
                    dc = dc + k.sediment_dispersion_aniso * (uc * uc - vc * vc) / (hc * q) * (disp_x - disp_y);
                    (du, dv, dc)
                }
                Flavour::Leading => {
                    let du = leading_momentum(&mu, &k, s_minus_one, art);
                    let dv = leading_momentum(&mv, &k, s_minus_one, (art.1, art.0));
                    let mut dc = -(w / hc) * (leading_exchange[0] * cc - leading_exchange[1] * c_ae);
                    dc = dc - leading_adv[0] * (leading_adv[1] * ratio).exp() * advect_c;
                    dc = dc + (art.0 * cx.second(dx) + art.1 * cy.second(dy));
                    (du, dv, dc)
                }
            };
            out.du.as_mut_slice()[n] = du;
            out.dv.as_mut_slice()[n] = dv;
            out.dc.as_mut_slice()[n] = dc;
        }
    }
    check_finite(state.t, &out)?;
    Ok(out)
}

/// Leading-order model: mass conservation, momentum with drag, gravity,
/// self-advection and the suspended-load pressure gradient, and concentration
/// with exchange and exponentially corrected advection.
///
/// Adds the constant artificial diffusion of
/// [`SolverSettings::leading_diffusion`] to `u`, `v`, `c`, since the model
/// carries no dispersion of its own.
pub fn tendency_leading<T: Real>(
    state: &FlowState<T>,
    params: &ModelParams<T>,
    settings: &SolverSettings<T>,
) -> Result<Tendency<T>, SolverError> {
    evaluate(state, params, settings, Flavour::Leading)
}

/// Comprehensive model including depth-gradient coupling, isotropic and
/// anisotropic dispersion of momentum and sediment, and the settling-ratio
/// corrections of the sediment exchange and advection.
pub fn tendency_full<T: Real>(
    state: &FlowState<T>,
    params: &ModelParams<T>,
    settings: &SolverSettings<T>,
) -> Result<Tendency<T>, SolverError> {
    evaluate(state, params, settings, Flavour::Full)
}

/// Concentration tendency of the conventional depth-averaged
/// advection-diffusion model
/// `-(w_f/h)(c - c_ae) - u dc/dx - v dc/dy + 0.13 h q (d2c/dx2 + d2c/dy2)`.
pub fn tendency_reference<T: Real>(
    state: &FlowState<T>,
    params: &ModelParams<T>,
    settings: &SolverSettings<T>,
) -> Result<Field<T>, SolverError> {
    state.check_shapes()?;
    check_depth(state)?;
    let grid = state.grid;
    let (dx, dy) = (grid.dx(), grid.dy());
    let dispersion = lit::<T>(REFERENCE_DISPERSION);
    let (w, c_ae) = (params.w_f(), params.c_ae());
    let (h, u, v, c) = (
        state.h.as_slice(),
        state.u.as_slice(),
        state.v.as_slice(),
        state.c.as_slice(),
    );
    let mut dc = Field::zeros(&grid);
    for j in 0..grid.ny {
        let (jm, jp) = grid.wrap_y(j);
        for i in 0..grid.nx {
            let (im, ip) = grid.wrap_x(i);
            let n = grid.idx(i, j);
            let (cx, cy) = lines(c, n, grid.idx(im, j), grid.idx(ip, j), grid.idx(i, jm), grid.idx(i, jp));
            let q = speed(u[n], v[n], settings.eps_q);
            let mut r = -(w / h[n]) * (c[n] - c_ae);
            r = r - (cx.upwind(u[n], dx) + cy.upwind(v[n], dy));
            r = r + dispersion * h[n] * q * (cx.second(dx) + cy.second(dy));
            dc.as_mut_slice()[n] = r;
        }
    }
    if !dc.all_finite() {
        return Err(SolverError::NonFiniteField {
            t: to_f64(state.t),
            field: "c",
        });
    }
    Ok(dc)
}

/// Tendency of the selected model. The reference choice evolves the flow
/// with the comprehensive momentum equations and the concentration with the
/// conventional advection-diffusion equation.
pub fn tendency<T: Real>(
    state: &FlowState<T>,
    params: &ModelParams<T>,
    settings: &SolverSettings<T>,
    rhs: RhsChoice,
) -> Result<Tendency<T>, SolverError> {
    match rhs {
        RhsChoice::Leading => tendency_leading(state, params, settings),
        RhsChoice::Full => tendency_full(state, params, settings),
        RhsChoice::Reference => {
            let mut t = tendency_full(state, params, settings)?;
            t.dc = tendency_reference(state, params, settings)?;
            Ok(t)
        }
    }
}
