use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sedflow::params::{steady_equilibrium, ModelParams};
use sedflow::profiles::SETTLING_RATIO_LIMIT;
use sedflow::scenario::{
    checks::invariant_checks, emit_figure_data, froude, run_scenario, spectra, FigureKey, FigureOptions,
    ScenarioConfig, ScenarioError,
};

/// Depth-averaged suspended sediment flow: scenarios, figure tables and
/// diagnostics.
#[derive(Parser)]
#[command(name = "sedflow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario from a config file.
    Run {
        config: PathBuf,
        /// Overrides output.dir.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a figure table (concentration_profiles, velocity_profile,
    /// shear_profile, spectrum or all).
    Figures {
        which: String,
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        /// Points on Z in [0, 1].
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Print the vertical decay spectrum of the default equilibrium as CSV.
    Spectrum {
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Print the parameters and uniform equilibrium.
    Equilibrium {
        #[arg(long, default_value_t = 0.01)]
        tan_theta: f64,
        #[arg(long, default_value_t = 6e-5)]
        d: f64,
    },
    /// Run the quick invariant checks.
    Check,
}

fn warn_settling(params: &ModelParams<f64>, q: f64) {
    let r = params.w_f() / q;
    if r > SETTLING_RATIO_LIMIT {
        eprintln!("warning: w_f/q = {r:.4} exceeds {SETTLING_RATIO_LIMIT}; the expansions assume slow settling");
    }
}

fn run(cmd: Command) -> Result<(), ScenarioError> {
    match cmd {
        Command::Run { config, out } => {
            let mut cfg = ScenarioConfig::from_path(&config)?;
            if let Some(out) = out {
                cfg.output.dir = out;
            }
            let params = cfg.params.model_params()?;
            if let Ok(eq) = steady_equilibrium(&params) {
                warn_settling(&params, eq.q);
            }
            let result = run_scenario(&cfg)?;
            println!(
                "t = {} steps = {} clamped = {} mass drift = {:.3e} max Froude = {:.4} wall = {:.2}s",
                result.final_state.t,
                result.stats.steps,
                result.stats.clamped,
                result.mass_drift,
                result.max_froude,
                result.wall.as_secs_f64()
            );
            for f in &result.files {
                println!("wrote {}", f.display());
            }
        }
        Command::Figures { which, out, samples } => {
            let keys = if which == "all" {
                FigureKey::ALL.to_vec()
            } else {
                vec![which.parse::<FigureKey>()?]
            };
            let params = ModelParams::default();
            let options = FigureOptions {
                samples,
                ..FigureOptions::default()
            };
            for k in keys {
                let path = emit_figure_data(k, &params, &out, options)?;
                println!("wrote {}", path.display());
            }
        }
        Command::Spectrum { n } => {
            let params = ModelParams::default();
            let families = spectra(&params, n)?;
            println!("# nu = {:.16e}", families[0].1.nu);
            println!("# gap nu*pi^2 = {:.16e}", families[0].1.gap_bound());
            println!("family,mode,k,lambda");
            for (family, s) in &families {
                for (m, (k, l)) in s.ks.iter().zip(&s.lambdas).enumerate() {
                    println!("{family},{},{k:.16e},{l:.16e}", m + 1);
                }
            }
        }
        Command::Equilibrium { tan_theta, d } => {
            let params = ModelParams::default().with_slope(tan_theta)?.with_particle_size(d)?;
            let eq = steady_equilibrium(&params)?;
            let state = sedflow::FlowState::uniform(sedflow::Grid::new(1, 1, 1.0, 1.0)?, 1.0, eq.u, eq.v, eq.cbar);
            let fr = froude(&state, &params)?[(0, 0)];
            println!("tan_theta      = {}", params.tan_theta());
            println!("s              = {}", params.s());
            println!("d              = {:e}", params.d());
            println!(
                "c_D, c_u, c_t  = {}, {}, {:.6}",
                params.c_d(),
                params.c_u(),
                params.c_t()
            );
            println!("w_f            = {:.7}", params.w_f());
            println!("c_ae           = {:.7}", params.c_ae());
            println!("U              = {:.7}", eq.u);
            println!("U/sqrt(tan)    = {:.5}", eq.u / tan_theta.sqrt());
            println!("Cbar           = {:.7}", eq.cbar);
            println!("Froude         = {fr:.5}");
            println!("w_f/q          = {:.5}", params.w_f() / eq.q);
            warn_settling(&params, eq.q);
        }
        Command::Check => {
            let outcomes = invariant_checks();
            for o in &outcomes {
                println!("{} {:<24} {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if failed > 0 {
                return Err(ScenarioError::ChecksFailed(failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
