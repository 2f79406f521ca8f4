//! Explicit time stepping.

use crate::params::ModelParams;
use crate::scalar::{lit, to_f64, Real};

use super::grid::{Field, FlowState, Tendency};
use super::ops::speed;
use super::tendency::tendency;
use super::{RhsChoice, SolverError, SolverSettings};

fn advance<T: Real>(state: &FlowState<T>, dt: T, k: &Tendency<T>) -> FlowState<T> {
    FlowState {
        grid: state.grid,
        t: state.t + dt,
        h: state.h.axpy(dt, &k.dh),
        u: state.u.axpy(dt, &k.du),
        v: state.v.axpy(dt, &k.dv),
        c: state.c.axpy(dt, &k.dc),
        b: state.b.clone(),
    }
}

fn combine<T: Real>(x: &Field<T>, dt: T, k: [&Field<T>; 4]) -> Field<T> {
    let two = lit::<T>(2.0);
    let sixth = dt / lit(6.0);
    let mut out = x.clone();
    for (n, o) in out.as_mut_slice().iter_mut().enumerate() {
        let incr = k[0].as_slice()[n] + two * k[1].as_slice()[n] + two * k[2].as_slice()[n] + k[3].as_slice()[n];
        *o = *o + sixth * incr;
    }
    out
}

/// Result of one accepted step.
#[derive(Debug, Clone)]
pub struct Step<T> {
    pub state: FlowState<T>,
    /// Cells whose concentration was clamped up to zero.
    pub clamped: usize,
}

/// Classical four-stage Runge-Kutta step of the chosen model.
///
/// Negative concentrations are clamped to zero afterwards; the step fails if
/// the depth drops to `settings.h_min` anywhere.
pub fn step_rk4<T: Real>(
    state: &FlowState<T>,
    params: &ModelParams<T>,
    settings: &SolverSettings<T>,
    dt: T,
    rhs: RhsChoice,
) -> Result<Step<T>, SolverError> {
    if !(dt > T::zero()) || !dt.is_finite() {
        return Err(SolverError::InvalidTimeStep(to_f64(dt)));
    }
    let half = dt / lit(2.0);
    let k1 = tendency(state, params, settings, rhs)?;
    let k2 = tendency(&advance(state, half, &k1), params, settings, rhs)?;
    let k3 = tendency(&advance(state, half, &k2), params, settings, rhs)?;
    let k4 = tendency(&advance(state, dt, &k3), params, settings, rhs)?;

    let mut next = FlowState {
        grid: state.grid,
        t: state.t + dt,
        h: combine(&state.h, dt, [&k1.dh, &k2.dh, &k3.dh, &k4.dh]),
        u: combine(&state.u, dt, [&k1.du, &k2.du, &k3.du, &k4.du]),
        v: combine(&state.v, dt, [&k1.dv, &k2.dv, &k3.dv, &k4.dv]),
        c: combine(&state.c, dt, [&k1.dc, &k2.dc, &k3.dc, &k4.dc]),
        b: state.b.clone(),
    };

    let min_depth = next.h.min();
    if !(min_depth > settings.h_min) {
        return Err(SolverError::NonpositiveDepth {
            t: to_f64(next.t),
            min: to_f64(min_depth),
        });
    }
    let mut clamped = 0;
    for c in next.c.as_mut_slice() {
        if *c < T::zero() {
            *c = T::zero();
            clamped += 1;
        }
    }
    Ok(Step { state: next, clamped })
}

/// Stable explicit step size: `cfl` times the smallest of the gravity-wave
/// crossing times `dx / (|u| + sqrt(g h))`, `dy / (|v| + sqrt(g h))` and the
/// dispersive limits `dx^2 / (4 D)`, `dy^2 / (4 D)`, with `D` the largest
/// momentum dispersivity `0.0941 q h` in the state.
pub fn cfl_dt<T: Real>(state: &FlowState<T>, params: &ModelParams<T>, settings: &SolverSettings<T>) -> T {
    let (dx, dy) = (state.grid.dx(), state.grid.dy());
    let dispersion = lit::<T>(settings.coefficients.momentum_dispersion);
    let mut bound = T::infinity();
    let mut d_max = T::zero();
    let (h, u, v) = (state.h.as_slice(), state.u.as_slice(), state.v.as_slice());
    for n in 0..h.len() {
        let wave = (params.g() * h[n]).sqrt();
        bound = bound.min(dx / (u[n].abs() + wave)).min(dy / (v[n].abs() + wave));
        d_max = d_max.max(dispersion * speed(u[n], v[n], settings.eps_q) * h[n]);
    }
    if d_max > T::zero() {
        let four = lit::<T>(4.0);
        bound = bound.min(dx * dx / (four * d_max)).min(dy * dy / (four * d_max));
    }
    settings.cfl * bound
}

/// When a run hook is invoked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunEvent {
    /// Before the first step.
    Start,
    /// After an ordinary step.
    Step,
    /// After a step that landed exactly on a scheduled stop time.
    Stop,
}

/// Totals accumulated over a run.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunStats {
    pub steps: usize,
    pub clamped: usize,
}

/// Integrates from `state0.t` to `t_end` with CFL-limited RK4 steps.
///
/// Steps are shortened so that each time in `stops` inside the interval and
/// `t_end` itself are hit exactly. `hook` sees the state after every step;
/// it cannot influence the step sequence.
pub fn run<T: Real, H>(
    state0: FlowState<T>,
    params: &ModelParams<T>,
    settings: &SolverSettings<T>,
    rhs: RhsChoice,
    t_end: T,
    stops: &[T],
    mut hook: H,
) -> Result<(FlowState<T>, RunStats), SolverError>
where
    H: FnMut(&FlowState<T>, RunEvent),
{
    if t_end < state0.t {
        return Err(SolverError::InvalidEndTime {
            t: to_f64(state0.t),
            t_end: to_f64(t_end),
        });
    }
    let mut schedule: Vec<T> = stops.iter().copied().filter(|&s| s > state0.t && s < t_end).collect();
    schedule.sort_by(|a, b| a.partial_cmp(b).expect("finite stop times"));
    schedule.push(t_end);

    let mut state = state0;
    let mut stats = RunStats::default();
    hook(&state, RunEvent::Start);
    for target in schedule {
        while state.t < target {
            let dt = cfl_dt(&state, params, settings);
            if !(dt > T::zero()) || !dt.is_finite() {
                return Err(SolverError::InvalidTimeStep(to_f64(dt)));
            }
            let remaining = target - state.t;
            // avoid leaving a sliver step shorter than a rounding error
            let landing = remaining <= dt * (T::one() + lit(1e-9));
            let dt = if landing { remaining } else { dt };
            let step = step_rk4(&state, params, settings, dt, rhs)?;
            state = step.state;
            if landing {
                state.t = target;
            }
            stats.steps += 1;
            stats.clamped += step.clamped;
            hook(&state, if landing { RunEvent::Stop } else { RunEvent::Step });
        }
    }
    Ok((state, stats))
}
