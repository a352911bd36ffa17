//! Command-line front end: configuration files, driver dispatch and report
//! files (`report.csv`, `summary.txt`, `resolved.cfg`).

mod config;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use config::{
    kind_from_name, DriverConfig, InflateConfig, InitialData, OdeApproxConfig, PlanConfig, RunConfig,
    SimulateConfig, StrichartzConfig,
};
pub use output::{format_number, summary_text, write_outputs, write_report_csv, write_summary};

use crate::error::{Error, Result};
use crate::evolution::{evolve, SolveConfig};
use crate::experiments::{
    gaussian_profile, run_norm_inflation, run_ode_approx, run_singular_probe, run_strichartz_probe,
    ExperimentKind, ExperimentReport, InflationParams, OdeApproxParams, Verdict,
};
use crate::spectral::{Field, Grid, SpectralField};

/// Relative `L²` drift tolerated by `simulate`.
pub const SIMULATE_DRIFT_TOL: f64 = 1e-10;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "modisp", version, about = "Modified-dispersion NLS laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Paths {
    /// Configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `output_dir` in `[run]`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Split-step evolution with conservation diagnostics.
    Simulate(Paths),
    /// Norm-inflation sweep along h.
    Inflate(Paths),
    /// Distance to the phase ODE along eps.
    OdeApprox(Paths),
    /// Space-time exponent of the free flow on concentrated data.
    Strichartz(Paths),
    /// Radial gradient integrals of log-singular data.
    Singular(Paths),
}

impl Command {
    fn split(self) -> (ExperimentKind, Paths) {
        match self {
            Command::Simulate(p) => (ExperimentKind::Simulate, p),
            Command::Inflate(p) => (ExperimentKind::Inflate, p),
            Command::OdeApprox(p) => (ExperimentKind::OdeApprox, p),
            Command::Strichartz(p) => (ExperimentKind::Strichartz, p),
            Command::Singular(p) => (ExperimentKind::Singular, p),
        }
    }
}

pub fn exit_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Pass | Verdict::Inconclusive => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
    }
}

/// Smooth random data: coefficients `e^{−|ξ|²/8}(a + ib)` with `a, b`
/// uniform in `[−1, 1]`, scaled to the requested peak modulus.
fn random_data(grid: &Grid, amplitude: f64, seed: u64) -> Field {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<Complex64> = (0..grid.len())
        .map(|i| {
            let xi = grid.frequency(i);
            let weight = (-(xi[0] * xi[0] + xi[1] * xi[1]) / 8.0).exp();
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * weight
        })
        .collect();
    let mut f = SpectralField::from_coeffs(grid, coeffs).expect("length matches grid").inverse_transform();
    let peak = f.max_abs();
    if peak > 0.0 {
        f.scale(Complex64::new(amplitude / peak, 0.0));
    }
    f
}

fn run_simulate(cfg: &SimulateConfig, seed: u64, exec: crate::par::Execution) -> Result<ExperimentReport> {
    let grid = Grid::new(cfg.d, cfg.n, cfg.half_length)?.with_execution(exec);
    let u0 = match cfg.initial {
        InitialData::Gaussian => gaussian_profile(&grid, cfg.amplitude),
        InitialData::Random => random_data(&grid, cfg.amplitude, seed),
    };
    let mut solve = SolveConfig::new(cfg.symbol.clone(), cfg.lambda, cfg.sigma, cfg.dt, cfg.final_time)
        .with_eps(cfg.eps)
        .with_snapshot_every(cfg.snapshot_every);
    solve.dealias = cfg.dealias;
    let traj = evolve(&u0, &solve)?;
    let mut report = ExperimentReport::new(
        ExperimentKind::Simulate,
        &["time", "l2", "relative_l2_drift", "spectral_tail", "spatial_tail"],
    );
    let l2_0 = traj.diagnostics[0].l2;
    let mut worst: f64 = 0.0;
    for d in &traj.diagnostics {
        let drift = if l2_0 > 0.0 { (d.l2 - l2_0).abs() / l2_0 } else { d.l2 };
        worst = worst.max(drift);
        report.push_row(vec![d.time.into(), d.l2.into(), drift.into(), d.spectral_tail.into(), d.spatial_tail.into()]);
    }
    report.verdict = if worst <= SIMULATE_DRIFT_TOL { Verdict::Pass } else { Verdict::Fail };
    report.criterion =
        format!("max relative L2 drift <= {SIMULATE_DRIFT_TOL:e}; observed {worst:.6e}");
    report.notes.push(format!("steps = {}, dt = {:e}", traj.steps, traj.dt));
    report.notes.push(format!("sigma admissible in d = {}: {}", cfg.d, solve.sigma_admissible(cfg.d)));
    Ok(report)
}

/// Run the configured driver and return its report. No files are written.
pub fn run_driver(cfg: &RunConfig) -> Result<ExperimentReport> {
    let exec = cfg.execution;
    match &cfg.driver {
        DriverConfig::Simulate(c) => run_simulate(c, cfg.seed, exec),
        DriverConfig::Inflate(c) => {
            let plan = c.plan.plan()?;
            let grid = Grid::new(c.plan.d, c.n, c.half_length)?.with_execution(exec);
            let params = InflationParams { lambda: c.plan.lambda, min_steps: c.min_steps, execution: exec };
            run_norm_inflation(&plan, &c.plan.symbol, &grid, &c.h_list, &params)
        }
        DriverConfig::OdeApprox(c) => {
            let plan = c.plan.plan()?;
            let grid = Grid::new(c.plan.d, c.n, c.half_length)?.with_execution(exec);
            let params = OdeApproxParams {
                lambda: c.plan.lambda,
                r: c.r,
                disable_dispersion: c.disable_dispersion,
                min_steps: c.min_steps,
                execution: exec,
            };
            run_ode_approx(&plan, &c.plan.symbol, &grid, &c.eps_list, &params)
        }
        DriverConfig::Strichartz(c) => run_strichartz_probe(&c.symbol, &c.params),
        DriverConfig::Singular(c) => run_singular_probe(c),
    }
}

fn execute(kind: ExperimentKind, paths: &Paths) -> Result<(Verdict, PathBuf)> {
    let text = std::fs::read_to_string(&paths.config)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", paths.config.display())))?;
    let mut cfg = RunConfig::parse(&text, kind)?;
    if let Some(out) = &paths.out {
        cfg.output_dir = Some(out.clone());
    }
    let dir = cfg.output_dir.clone().unwrap_or_else(|| PathBuf::from("modisp-out"));
    let report = run_driver(&cfg)?;
    write_outputs(&dir, &cfg, &report)?;
    Ok((report.verdict, dir))
}

/// Parse `argv`, run the driver and write its outputs. Returns the exit
/// code: 0 on pass (or inconclusive), 1 on fail, 2 on any error.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
        }
    };
    let (kind, paths) = cli.command.split();
    match execute(kind, &paths) {
        Ok((verdict, dir)) => {
            println!("{}: {verdict} (outputs in {})", kind.name(), dir.display());
            exit_code(verdict)
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
