use std::fs;

use sedflow::params::{steady_equilibrium, ModelParams};
use sedflow::scenario::{
    build_initial_state, build_ripple_bed, froude, probe_path, run_scenario, simulate, snapshot_path, ConfigError,
    ScenarioConfig, ScenarioError,
};
use sedflow::{Grid, SolverError};

fn small(extra: &str) -> ScenarioConfig {
    let base = "grid.nx = 100\ngrid.ny = 2\nmodel.t_end = 2\n";
    let extra = if extra.contains("output.snapshots") {
        extra.to_string()
    } else {
        format!("output.snapshots = 1, 2\n{extra}")
    };
    ScenarioConfig::parse(&format!("{base}{extra}")).unwrap()
}

#[test]
fn parses_a_config_file_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    fs::write(
        &path,
        "# rippled bed, taller crests\nbed.height = 0.6\nmodel.kind = leading  # cheap\noutput.probes = 40, 55.5\n",
    )
    .unwrap();
    let cfg = ScenarioConfig::from_path(&path).unwrap();
    assert_eq!(cfg.bed.height, 0.6);
    assert_eq!(cfg.output.probes, vec![40.0, 55.5]);
    assert_eq!(cfg.grid.nx, 512);
    let again = ScenarioConfig::parse(&cfg.to_string()).unwrap();
    assert_eq!(again, cfg);
}

#[test]
fn missing_file_is_an_io_error() {
    let err = ScenarioConfig::from_path("/nonexistent/sedflow.cfg".as_ref()).unwrap_err();
    assert!(matches!(err, ConfigError::Io { .. }));
}

#[test]
fn validation_names_the_offending_field() {
    for (text, field) in [
        ("grid.nx = 0", "grid"),
        ("bed.height = -0.1", "bed.height"),
        ("bed.wavelength = 30", "bed.wavelength"),
        ("initial.amplitude = 1.5", "initial.amplitude"),
        ("model.t_end = -1", "model.t_end"),
        ("model.cfl = 1.5", "model.cfl"),
        ("output.probes = 120", "output.probes"),
        ("model.t_end = 50", "output.snapshots"),
        ("params.d = -1", "params"),
        ("params.d = 1e-3", "params.d"),
    ] {
        let err = ScenarioConfig::parse(text).unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, ConfigError::Invalid { .. }), "{text}: {msg}");
        assert!(msg.contains(field), "{text}: {msg}");
    }
    let err = ScenarioConfig::parse("\n\nmodel.speed = 3").unwrap_err();
    assert!(matches!(err, ConfigError::Parse { line: 3, .. }), "{err}");
}

#[test]
fn ripple_bed_has_zero_mean_and_the_requested_height() {
    let grid: sedflow::Grid64 = Grid::new(500, 3, 100.0, 10.0).unwrap();
    let b = build_ripple_bed(&grid, 0.4, 20.0, 50.0).unwrap();
    assert!(b.mean().abs() < 1e-12);
    assert!((b.max() - b.min() - 0.4).abs() < 1e-10);
    // trough at x = 50, crest half a wavelength downstream
    assert!((b[(250, 1)] + 0.2).abs() < 1e-12);
    assert!((b[(300, 2)] - 0.2).abs() < 1e-12);
    assert!(build_ripple_bed(&grid, -0.1, 20.0, 50.0).is_err());
    assert!(build_ripple_bed(&grid, 0.4, 30.0, 50.0).is_err());
}

#[test]
fn unperturbed_initial_state_is_the_equilibrium() {
    let cfg = ScenarioConfig::parse("grid.nx = 500\ninitial.amplitude = 0\nbed.kind = flat").unwrap();
    let params = cfg.params.model_params().unwrap();
    let eq = steady_equilibrium(&params).unwrap();
    let s = build_initial_state(&cfg, &params).unwrap();
    assert!(s.h.iter().all(|&h| h == 1.0));
    assert!(s.u.iter().all(|&u| u == eq.u));
    assert!(s.v.iter().all(|&v| v == 0.0));
    assert!(s.c.iter().all(|&c| c == eq.cbar));
    assert!(s.b.iter().all(|&b| b == 0.0));
}

#[test]
fn perturbed_initial_state_keeps_the_mean_depth() {
    let cfg = ScenarioConfig::parse("grid.nx = 500").unwrap();
    let params = cfg.params.model_params().unwrap();
    let s = build_initial_state(&cfg, &params).unwrap();
    assert!((s.h.mean() - 1.0).abs() < 1e-12);
    assert!((s.h.min() - 0.8).abs() < 1e-12);
    assert!((s.h.max() - 1.2).abs() < 1e-12);
    assert!((s.b.max() - s.b.min() - 0.4).abs() < 1e-10);
}

#[test]
fn froude_matches_hand_value_and_rejects_dry_cells() {
    let params: sedflow::ModelParams64 = ModelParams::default();
    let grid: sedflow::Grid64 = Grid::new(2, 1, 1.0, 1.0).unwrap();
    let mut s = sedflow::FlowState::uniform(grid, 4.0, 3.0, 4.0, 0.0);
    assert!(froude(&s, &params).unwrap().iter().all(|&f| (f - 2.5).abs() < 1e-15));
    s.h[(1, 0)] = 0.0;
    assert!(matches!(froude(&s, &params), Err(SolverError::NonpositiveDepth { .. })));
}

#[test]
fn unperturbed_flat_run_keeps_probes_constant() {
    let out = simulate(&small("initial.amplitude = 0\nbed.kind = flat")).unwrap();
    assert_eq!(out.probes.len(), 2);
    for p in &out.probes {
        assert!(p.times.len() > 10);
        for series in [&p.h, &p.ubar, &p.cbar] {
            let spread = series.iter().fold(0.0f64, |m, &v| m.max((v - series[0]).abs()));
            assert!(spread < 1e-8, "probe at {}: spread {spread}", p.x);
        }
    }
    assert!(out.mass_drift.abs() < 1e-12);
}

#[test]
fn probes_do_not_perturb_the_run() {
    let with = simulate(&small("")).unwrap();
    let without = simulate(&small("output.probes =")).unwrap();
    assert!(without.probes.is_empty());
    assert_eq!(with.final_state, without.final_state);
    assert_eq!(with.stats.steps, without.stats.steps);
    assert_eq!(with.snapshots.len(), 2);
    assert_eq!(with.snapshots[1], with.final_state);
}

#[test]
fn shifting_the_initial_hump_translates_the_solution() {
    let base = "grid.nx = 500\ngrid.ny = 2\nbed.kind = flat\nmodel.t_end = 1\noutput.snapshots =\noutput.probes =\n";
    let a = simulate(&ScenarioConfig::parse(base).unwrap()).unwrap().final_state;
    let b = simulate(&ScenarioConfig::parse(&format!("{base}initial.shift = 20")).unwrap())
        .unwrap()
        .final_state;
    // 20 length units are 100 cells
    for (fa, fb) in [(&a.h, &b.h), (&a.u, &b.u), (&a.v, &b.v), (&a.c, &b.c)] {
        let d = fa.rolled_x(100).max_abs_diff(fb);
        assert!(d < 1e-10, "{d}");
    }
}

#[test]
fn run_scenario_writes_probe_snapshot_and_summary_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small("output.probes = 50, 60");
    cfg.output.dir = dir.path().join("out");
    let out = run_scenario(&cfg).unwrap();
    assert_eq!(out.files.len(), 5);

    let probe = fs::read_to_string(probe_path(&cfg.output.dir, 50.0)).unwrap();
    let mut lines = probe.lines();
    assert_eq!(lines.next(), Some("t,h,ubar,cbar"));
    let times: Vec<f64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(times.len(), out.probes[0].times.len());
    assert!(times.windows(2).all(|w| w[1] > w[0]));
    assert_eq!(*times.last().unwrap(), 2.0);

    let snap = fs::read_to_string(snapshot_path(&cfg.output.dir, 1.0)).unwrap();
    assert!(snap.starts_with("x,y,b,h,ubar,vbar,cbar,froude\n"));
    assert_eq!(snap.lines().count(), 1 + 100 * 2);
    assert!(snapshot_path(&cfg.output.dir, 2.0).exists());

    let summary = fs::read_to_string(cfg.output.dir.join("summary.txt")).unwrap();
    assert!(summary.starts_with("status = completed"));
    assert!(summary.contains(&format!("steps = {}", out.stats.steps)));
}

#[test]
fn solver_failure_still_writes_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ScenarioConfig::parse(
        "grid.nx = 64\ninitial.kind = uniform\nmodel.cfl = 1\nmodel.t_end = 50\noutput.snapshots = 50\n",
    )
    .unwrap();
    cfg.output.dir = dir.path().to_path_buf();
    let err = run_scenario(&cfg).unwrap_err();
    assert!(
        matches!(err, ScenarioError::Solver(SolverError::NonpositiveDepth { .. })),
        "{err}"
    );
    assert_eq!(err.exit_code(), 2);
    let summary = fs::read_to_string(dir.path().join("summary.txt")).unwrap();
    assert!(summary.starts_with("status = failed"));
    let probe = fs::read_to_string(probe_path(dir.path(), 50.0)).unwrap();
    assert!(probe.lines().count() > 1);
}
