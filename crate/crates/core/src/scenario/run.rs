//! Runs a configured scenario and writes its probes, snapshots and summary.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use crate::params::ModelParams;
use crate::solver::{run, FlowState, RunEvent, RunStats, SolverError, SolverSettings};

use super::build::{build_initial_state, froude};
use super::config::ScenarioConfig;
use super::ScenarioError;

/// Time series of depth-averaged fields at one downslope position.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSeries {
    pub x: f64,
    pub times: Vec<f64>,
    pub h: Vec<f64>,
    pub ubar: Vec<f64>,
    pub cbar: Vec<f64>,
}

impl ProbeSeries {
    pub fn new(x: f64) -> Self {
        Self {
            x,
            times: Vec::new(),
            h: Vec::new(),
            ubar: Vec::new(),
            cbar: Vec::new(),
        }
    }

    /// Records the state, interpolated linearly in x and averaged over y.
    /// Samples that do not advance in time are dropped.
    pub fn record(&mut self, state: &FlowState<f64>) {
        if self.times.last().is_some_and(|&t| state.t <= t) {
            return;
        }
        let g = &state.grid;
        let pos = self.x / g.dx();
        let i0 = (pos.floor() as usize) % g.nx;
        let i1 = (i0 + 1) % g.nx;
        let w = pos - pos.floor();
        let ny = g.ny as f64;
        let at = |f: &crate::solver::Field<f64>| {
            (0..g.ny).map(|j| (1.0 - w) * f[(i0, j)] + w * f[(i1, j)]).sum::<f64>() / ny
        };
        self.times.push(state.t);
        self.h.push(at(&state.h));
        self.ubar.push(at(&state.u));
        self.cbar.push(at(&state.c));
    }

    /// Trapezoidal time average of `values` over the samples in `[t0, t1]`.
    pub fn time_average(&self, values: &[f64], t0: f64, t1: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .times
            .iter()
            .zip(values)
            .filter(|(&t, _)| t >= t0 && t <= t1)
            .map(|(&t, &v)| (t, v))
            .collect();
        let span = pts.last()?.0 - pts.first()?.0;
        if span <= 0.0 {
            return None;
        }
        let area: f64 = pts
            .windows(2)
            .map(|p| 0.5 * (p[1].0 - p[0].0) * (p[0].1 + p[1].1))
            .sum();
        Some(area / span)
    }
}

/// What a completed run produced.
#[derive(Debug, Clone)]
pub struct ScenarioOutput {
    pub final_state: FlowState<f64>,
    pub stats: RunStats,
    pub probes: Vec<ProbeSeries>,
    pub snapshots: Vec<FlowState<f64>>,
    /// `(V_end - V_0) / V_0` for the fluid volume.
    pub mass_drift: f64,
    pub max_froude: f64,
    pub wall: Duration,
    pub files: Vec<PathBuf>,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ScenarioError + '_ {
    move |source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn number_label(x: f64) -> String {
    format!("{x}")
}

pub fn probe_path(dir: &Path, x: f64) -> PathBuf {
    dir.join(format!("probe_x{}.csv", number_label(x)))
}

pub fn snapshot_path(dir: &Path, t: f64) -> PathBuf {
    dir.join(format!("snapshot_t{}.csv", number_label(t)))
}

fn write_probe(dir: &Path, p: &ProbeSeries) -> Result<PathBuf, ScenarioError> {
    let path = probe_path(dir, p.x);
    let mut w = BufWriter::new(File::create(&path).map_err(io_err(&path))?);
    let mut body = || -> std::io::Result<()> {
        writeln!(w, "t,h,ubar,cbar")?;
        for k in 0..p.times.len() {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                p.times[k], p.h[k], p.ubar[k], p.cbar[k]
            )?;
        }
        w.flush()
    };
    body().map_err(io_err(&path))?;
    Ok(path)
}

fn write_snapshot(dir: &Path, state: &FlowState<f64>, params: &ModelParams<f64>) -> Result<PathBuf, ScenarioError> {
    let path = snapshot_path(dir, state.t);
    let fr = froude(state, params)?;
    let g = &state.grid;
    let mut w = BufWriter::new(File::create(&path).map_err(io_err(&path))?);
    let mut body = || -> std::io::Result<()> {
        writeln!(w, "x,y,b,h,ubar,vbar,cbar,froude")?;
        for j in 0..g.ny {
            for i in 0..g.nx {
                let ij = (i, j);
                writeln!(
                    w,
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                    g.x(i),
                    g.y(j),
                    state.b[ij],
                    state.h[ij],
                    state.u[ij],
                    state.v[ij],
                    state.c[ij],
                    fr[ij]
                )?;
            }
        }
        w.flush()
    };
    body().map_err(io_err(&path))?;
    Ok(path)
}

struct Summary<'a> {
    config: &'a ScenarioConfig,
    state: &'a FlowState<f64>,
    stats: RunStats,
    mass_drift: f64,
    max_froude: f64,
    wall: Duration,
    failure: Option<&'a SolverError>,
}

fn write_summary(dir: &Path, s: &Summary) -> Result<PathBuf, ScenarioError> {
    let path = dir.join("summary.txt");
    let mut w = BufWriter::new(File::create(&path).map_err(io_err(&path))?);
    let st = s.state;
    let mut body = || -> std::io::Result<()> {
        match s.failure {
            None => writeln!(w, "status = completed")?,
            Some(e) => writeln!(w, "status = failed: {e}")?,
        }
        writeln!(w, "t = {:.16e}", st.t)?;
        writeln!(w, "t_end = {:.16e}", s.config.model.t_end)?;
        writeln!(w, "steps = {}", s.stats.steps)?;
        writeln!(w, "clamped = {}", s.stats.clamped)?;
        writeln!(w, "mass_drift = {:.16e}", s.mass_drift)?;
        for (name, f) in [("h", &st.h), ("ubar", &st.u), ("vbar", &st.v), ("cbar", &st.c)] {
            writeln!(w, "{name}_min = {:.16e}", f.min())?;
            writeln!(w, "{name}_max = {:.16e}", f.max())?;
        }
        writeln!(w, "cbar_mean = {:.16e}", st.c.mean())?;
        writeln!(w, "froude_max = {:.16e}", s.max_froude)?;
        writeln!(w, "wall_seconds = {:.6}", s.wall.as_secs_f64())?;
        w.flush()
    };
    body().map_err(io_err(&path))?;
    Ok(path)
}

/// Integrates the scenario without touching the filesystem.
pub fn simulate(config: &ScenarioConfig) -> Result<ScenarioOutput, ScenarioError> {
    execute(config, None)
}

/// Integrates the scenario and writes `probe_x<loc>.csv`,
/// `snapshot_t<time>.csv` and `summary.txt` into `config.output.dir`.
///
/// On solver failure the probes, snapshots taken so far and the summary of
/// the last good state are still written before the error is returned.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioOutput, ScenarioError> {
    let dir = config.output.dir.clone();
    std::fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    execute(config, Some(&dir))
}

fn execute(config: &ScenarioConfig, dir: Option<&Path>) -> Result<ScenarioOutput, ScenarioError> {
    config.validate()?;
    let params = config.params.model_params()?;
    let state0 = build_initial_state(config, &params)?;
    let settings = SolverSettings {
        cfl: config.model.cfl,
        ..SolverSettings::default()
    };
    let v0 = state0.volume();

    let mut probes: Vec<ProbeSeries> = config.output.probes.iter().map(|&x| ProbeSeries::new(x)).collect();
    let mut snapshots: Vec<FlowState<f64>> = Vec::new();
    let mut last: Option<FlowState<f64>> = None;
    let interval = config.output.probe_interval;
    let mut next_probe = state0.t;
    let snap_times = &config.output.snapshots;
    let started = Instant::now();

    let result = run(
        state0.clone(),
        &params,
        &settings,
        config.model.rhs,
        config.model.t_end,
        snap_times,
        |s, event| {
            if event == RunEvent::Stop && snap_times.contains(&s.t) {
                snapshots.push(s.clone());
            }
            if s.t >= next_probe || event == RunEvent::Stop {
                for p in probes.iter_mut() {
                    p.record(s);
                }
                next_probe = s.t + interval;
            }
            if dir.is_some() {
                last = Some(s.clone());
            }
        },
    );
    let wall = started.elapsed();

    let (final_state, stats, failure) = match result {
        Ok((s, stats)) => (s, stats, None),
        Err(e) => {
            let s = last.take().unwrap_or(state0);
            (s, RunStats::default(), Some(e))
        }
    };
    let mass_drift = (final_state.volume() - v0) / v0;
    let max_froude = froude(&final_state, &params).map(|f| f.max()).unwrap_or(f64::NAN);

    let mut files = Vec::new();
    if let Some(dir) = dir {
        for p in &probes {
            files.push(write_probe(dir, p)?);
        }
        for s in &snapshots {
            files.push(write_snapshot(dir, s, &params)?);
        }
        let summary = Summary {
            config,
            state: &final_state,
            stats,
            mass_drift,
            max_froude,
            wall,
            failure: failure.as_ref(),
        };
        files.push(write_summary(dir, &summary)?);
    }
    if let Some(source) = failure {
        return Err(ScenarioError::Solver(source));
    }
    Ok(ScenarioOutput {
        final_state,
        stats,
        probes,
        snapshots,
        mass_drift,
        max_froude,
        wall,
        files,
    })
}
