//! Quick self-checks of the model, run by `sedflow check`.

use crate::coefficients::{ModelCoefficients, LEADING_ADVECTION};
use crate::params::{falling_velocity, reference_concentration, steady_equilibrium, ModelParams};
use crate::profiles::{C_MEAN, STEADY_SHEAR, U_MEAN};
use crate::scalar::{horner, unit_mean};
use crate::solver::{tendency_full, tendency_leading, Axis, Field, FlowState, Grid, SolverSettings};
use crate::spectrum::{
    concentration_characteristic, concentration_wavenumbers, velocity_characteristic, velocity_wavenumbers,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome { name, passed, detail }
}

/// A smooth, fully two-dimensional state on a small square grid.
pub fn wavy_state(n: usize) -> FlowState<f64> {
    let grid = Grid::new(n, n, 10.0, 10.0).expect("valid grid");
    let k = std::f64::consts::TAU / 10.0;
    let mut s = FlowState::uniform(grid, 1.0, 0.0, 0.0, 0.0);
    s.h = Field::from_fn(&grid, |x, y| 1.0 + 0.2 * (k * x).sin() + 0.1 * (2.0 * k * y).cos());
    s.u = Field::from_fn(&grid, |x, y| 1.8 + 0.3 * (k * y).sin() - 0.2 * (k * x).cos());
    s.v = Field::from_fn(&grid, |x, y| 0.4 * (k * (x + y)).sin() - 0.1);
    s.c = Field::from_fn(&grid, |x, y| 0.0037 + 0.001 * (k * x - 2.0 * k * y).cos());
    s.b = Field::from_fn(&grid, |x, y| 0.2 * (k * x).cos() * (k * y).sin());
    s
}

fn symmetry_defect(settings: &SolverSettings<f64>, full: bool) -> f64 {
    let params = ModelParams::default();
    let s = wavy_state(12);
    let st = s.transposed();
    let swapped = SolverSettings {
        downslope: Axis::Y,
        ..*settings
    };
    let (a, b) = if full {
        (
            tendency_full(&s, &params, settings).unwrap(),
            tendency_full(&st, &params, &swapped).unwrap(),
        )
    } else {
        (
            tendency_leading(&s, &params, settings).unwrap(),
            tendency_leading(&st, &params, &swapped).unwrap(),
        )
    };
    let a = a.transposed();
    [
        a.dh.max_abs_diff(&b.dh),
        a.du.max_abs_diff(&b.du),
        a.dv.max_abs_diff(&b.dv),
        a.dc.max_abs_diff(&b.dc),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Runs the checks; each finishes in well under a second.
pub fn invariant_checks() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let params = ModelParams::<f64>::default();

    let w1 = falling_velocity(2.65, 1.0, 6e-5, 1.4).unwrap_or(f64::NAN);
    let w2 = falling_velocity(2.65, 1.0, 1.65e-4, 1.4).unwrap_or(f64::NAN);
    out.push(outcome(
        "falling velocity",
        (w1 - 0.0097).abs() <= 1e-4 && (w2 - 0.0161).abs() <= 1e-4,
        format!("w_f = {w1:.6}, {w2:.6}"),
    ));

    let c_ae = reference_concentration(0.01, 6e-5).unwrap_or(f64::NAN);
    out.push(outcome(
        "reference concentration",
        (c_ae - 0.0057).abs() <= 2e-4,
        format!("c_ae = {c_ae:.6}"),
    ));

    match steady_equilibrium(&params) {
        Ok(eq) => {
            let ratio = eq.u / params.tan_theta().sqrt();
            out.push(outcome(
                "steady equilibrium",
                (18.3..=18.8).contains(&ratio) && ((eq.cbar - 0.0035) / 0.0035).abs() <= 0.1,
                format!("U/sqrt(tan) = {ratio:.4}, Cbar = {:.6}", eq.cbar),
            ));
            let grid = Grid::new(8, 4, 10.0, 10.0).expect("valid grid");
            let s = FlowState::uniform(grid, 1.0, eq.u, 0.0, eq.cbar);
            let r = tendency_full(&s, &params, &SolverSettings::default())
                .map(|t| t.max_abs())
                .unwrap_or(f64::NAN);
            out.push(outcome("fixed point", r < 1e-10, format!("max |tendency| = {r:e}")));
        }
        Err(e) => out.push(outcome("steady equilibrium", false, e.to_string())),
    }

    let c: f64 = unit_mean(&C_MEAN);
    let u: f64 = unit_mean(&U_MEAN);
    out.push(outcome(
        "profile normalization",
        (c - 1.00010).abs() <= 1e-4 && (u - 0.99946).abs() <= 1e-4,
        format!("concentration {c:.6}, velocity {u:.6}"),
    ));

    let t0: f64 = horner(&STEADY_SHEAR, 0.0);
    let t1: f64 = horner(&STEADY_SHEAR, 1.0);
    out.push(outcome(
        "shear endpoints",
        t0 == 0.997 && t1.abs() < 0.01,
        format!("tau(0) = {t0}, tau(1) = {t1:.5}"),
    ));

    let spectrum = velocity_wavenumbers(params.c_u(), 8).and_then(|kv| {
        concentration_wavenumbers(1.0, 8).map(|kc| {
            let rv = kv.iter().map(|&k| velocity_characteristic(params.c_u(), k).abs());
            let rc = kc.iter().map(|&k| concentration_characteristic(1.0_f64, k).abs());
            let above = kv.iter().chain(&kc).all(|&k| k > std::f64::consts::PI);
            (above, rv.chain(rc).fold(0.0, f64::max), kc[0])
        })
    });
    match spectrum {
        Ok((above, residual, first)) => out.push(outcome(
            "spectrum",
            above && residual < 1e-10 && (first - 4.4934).abs() <= 1e-3,
            format!("first tan k = k root {first:.6}, max residual {residual:e}"),
        )),
        Err(e) => out.push(outcome("spectrum", false, e.to_string())),
    }

    let k = ModelCoefficients::PRINTED.sediment_advection;
    let worst = (0..=200)
        .map(|i| {
            let r = 0.02 * i as f64 / 200.0;
            (LEADING_ADVECTION[0] * (LEADING_ADVECTION[1] * r).exp() - (k[0] + k[1] * r)).abs()
        })
        .fold(0.0, f64::max);
    out.push(outcome(
        "advection consistency",
        worst < 2e-3,
        format!("max difference {worst:.2e}"),
    ));

    let settings = SolverSettings::default();
    let lead = symmetry_defect(&settings, false);
    let mut paired = settings;
    paired.coefficients.depth_gradient_u = 0.0;
    paired.coefficients.depth_gradient_v = 0.0;
    let full = symmetry_defect(&paired, true);
    out.push(outcome(
        "axis symmetry",
        lead == 0.0 && full == 0.0,
        format!("leading defect {lead:e}, full defect {full:e}"),
    ));
    out
}
