use std::f64::consts::PI;

use proptest::prelude::*;

use sedflow::params::{steady_equilibrium, ModelParams};
use sedflow::spectrum::{
    concentration_characteristic, concentration_wavenumbers, equilibrium_eddy_viscosity, velocity_characteristic,
    velocity_wavenumbers,
};
use sedflow::SpectrumResult;

/// Root of `sin k - a k cos k` on `(lo, hi)` by plain bisection; this form has
/// no poles, so the bracket can run right up to the odd multiples of pi/2.
fn oracle(a: f64, lo: f64, hi: f64) -> f64 {
    let f = |k: f64| k.sin() - a * k * k.cos();
    let (mut lo, mut hi) = (lo, hi);
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == f_lo.signum() {
            lo = mid
        } else {
            hi = mid
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn first_root_of_tan_k_equals_k() {
    let k = concentration_wavenumbers(1.0, 1).unwrap()[0];
    let reference = oracle(1.0, PI + 1e-3, 1.5 * PI - 1e-3);
    assert!((k - reference).abs() < 1e-12);
    assert!((k - 4.4934).abs() < 1e-3);
}

#[test]
fn concentration_roots_agree_with_pole_free_oracle() {
    for &h in &[0.5, 1.0, 3.0] {
        let ks = concentration_wavenumbers(h, 5).unwrap();
        let skip = usize::from(h > 1.0);
        for (m, &k) in ks.iter().enumerate().skip(skip) {
            let centre = (m + 1 - skip) as f64 * PI;
            let reference = oracle(h, centre, centre + 0.5 * PI - 1e-12);
            assert!((k - reference).abs() < 1e-11, "h = {h}, m = {m}: {k} vs {reference}");
        }
    }
}

#[test]
fn spectral_gap_at_the_rippled_bed_operating_point() {
    let p = ModelParams::default();
    let eq = steady_equilibrium(&p).unwrap();
    let nu = equilibrium_eddy_viscosity(p.c_t(), 1.0, eq.q, p.c_u()).unwrap();
    for ks in [
        velocity_wavenumbers(p.c_u(), 10).unwrap(),
        concentration_wavenumbers(1.0, 10).unwrap(),
    ] {
        assert!(ks.iter().all(|&k| k > PI));
        let s = SpectrumResult::new(nu, ks).unwrap();
        assert!(s.gap_bound() > 0.0);
        let worst = s.lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert!(worst < -s.gap_bound());
        assert!(s.lambdas.windows(2).all(|w| w[1] < w[0]));
        assert!(s.leading_rate().unwrap() > s.gap_bound());
    }
}

#[test]
fn velocity_roots_are_simple_and_ascending() {
    let ks = velocity_wavenumbers(1.85, 6).unwrap();
    assert!(ks.windows(2).all(|w| w[1] > w[0]));
    for (m, &k) in ks.iter().enumerate() {
        let centre = (m + 1) as f64 * PI;
        assert!(k > centre && k < centre + 0.5 * PI);
        let eps = 1e-8 * k;
        assert!(velocity_characteristic(1.85, k - eps) < 0.0);
        assert!(velocity_characteristic(1.85, k + eps) > 0.0);
    }
}

proptest! {
    #[test]
    fn residuals_stay_below_tolerance(c_u in 0.1f64..50.0, h in 0.05f64..1.0) {
        for k in velocity_wavenumbers(c_u, 4).unwrap() {
            prop_assert!(k > PI);
            prop_assert!(velocity_characteristic(c_u, k).abs() < 1e-10);
        }
        for k in concentration_wavenumbers(h, 4).unwrap() {
            prop_assert!(k > PI);
            prop_assert!(concentration_characteristic(h, k).abs() < 1e-10);
        }
    }
}
