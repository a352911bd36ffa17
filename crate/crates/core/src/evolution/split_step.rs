use log::warn;
use num_complex::Complex64;

use super::config::SolveConfig;
use crate::error::{Error, Result};
use crate::spectral::{spatial_tail_fraction, spectral_tail_fraction, Field, SpectralField, SymbolLattice, TAIL_TOL};

/// Exact flow of `iε∂ₜu = λ|u|^{2σ}u` over `dt`, in place.
fn rotate_phases(f: &mut Field, lambda: f64, sigma: f64, dt: f64, eps: f64) {
    if lambda == 0.0 || dt == 0.0 {
        return;
    }
    let rate = lambda * dt / eps;
    let exec = f.grid().execution();
    if sigma == 1.0 {
        exec.for_each_mut(f.values_mut(), |_, z| *z *= Complex64::cis(-rate * z.norm_sqr()));
    } else {
        exec.for_each_mut(f.values_mut(), |_, z| *z *= Complex64::cis(-rate * z.norm_sqr().powf(sigma)));
    }
}

/// `u ↦ u · exp(−i (λ dt/ε) |u|^{2σ})`, nodewise.
pub fn nonlinear_phase_step(f: &Field, lambda: f64, sigma: f64, dt: f64, eps: f64) -> Field {
    let mut out = f.clone();
    rotate_phases(&mut out, lambda, sigma, dt, eps);
    out
}

/// Step size keeping each sub-flow's phase rotation below 0.02 rad:
/// `0.02 ε / (|λ| max|u₀|^{2σ} + max|P|)`.
pub fn recommended_dt(u0: &Field, lattice: &SymbolLattice, lambda: f64, sigma: f64, eps: f64) -> f64 {
    let rate = lambda.abs() * u0.max_abs().powf(2.0 * sigma) + lattice.max_abs();
    if rate == 0.0 {
        f64::INFINITY
    } else {
        0.02 * eps / rate
    }
}

/// Strang integrator with the symbol cached on the lattice.
#[derive(Debug, Clone)]
pub struct SplitStep {
    config: SolveConfig,
    lattice: SymbolLattice,
    mask: Option<Vec<bool>>,
}

impl SplitStep {
    pub fn new(config: &SolveConfig, grid: &crate::spectral::Grid) -> Result<SplitStep> {
        config.validate()?;
        let lattice = SymbolLattice::new(&config.symbol, grid)?;
        let mask = config.dealias.then(|| {
            let cut = (grid.n() / 3) as i64;
            (0..grid.len())
                .map(|i| {
                    let k = grid.wavenumbers(i);
                    k[0].abs() <= cut && k[1].abs() <= cut
                })
                .collect()
        });
        Ok(SplitStep { config: config.clone(), lattice, mask })
    }

    pub fn config(&self) -> &SolveConfig {
        &self.config
    }

    pub fn lattice(&self) -> &SymbolLattice {
        &self.lattice
    }

    fn linear(&self, c: &mut SpectralField, dt: f64) {
        self.lattice.propagate_spectral(c, dt / self.config.eps);
        if let Some(mask) = &self.mask {
            c.grid()
                .clone()
                .execution()
                .for_each_mut(c.coeffs_mut(), |i, z| {
                    if !mask[i] {
                        *z = Complex64::new(0.0, 0.0);
                    }
                });
        }
    }

    /// Advance `steps` Strang steps of size `dt`, fusing adjacent linear
    /// half-steps. `first_step` only labels errors.
    pub fn advance(&self, u: &mut Field, steps: usize, dt: f64, first_step: usize) -> Result<()> {
        if steps == 0 {
            return Ok(());
        }
        let SolveConfig { lambda, sigma, eps, .. } = self.config;
        let mut c = u.transform();
        self.linear(&mut c, 0.5 * dt);
        for s in 0..steps {
            *u = c.inverse_transform();
            rotate_phases(u, lambda, sigma, dt, eps);
            if !u.is_finite() {
                return Err(Error::NonFinite { step: first_step + s });
            }
            c = u.transform();
            let linear_dt = if s + 1 == steps { 0.5 * dt } else { dt };
            self.linear(&mut c, linear_dt);
        }
        *u = c.inverse_transform();
        if !u.is_finite() {
            return Err(Error::NonFinite { step: first_step + steps - 1 });
        }
        Ok(())
    }
}

/// One Strang step `S(dt/2) ∘ N(dt) ∘ S(dt/2)`.
pub fn strang_step(f: &Field, cfg: &SolveConfig) -> Result<Field> {
    let stepper = SplitStep::new(cfg, f.grid())?;
    let mut u = f.clone();
    stepper.advance(&mut u, 1, cfg.dt, 0)?;
    Ok(u)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub time: f64,
    pub l2: f64,
    pub spectral_tail: f64,
    pub spatial_tail: f64,
}

impl Diagnostics {
    pub fn of(time: f64, f: &Field) -> Diagnostics {
        let c = f.transform();
        Diagnostics {
            time,
            l2: c.l2_norm(),
            spectral_tail: spectral_tail_fraction(&c),
            spatial_tail: spatial_tail_fraction(f),
        }
    }

    pub fn within_tail_tolerance(&self) -> bool {
        self.spectral_tail < TAIL_TOL && self.spatial_tail < TAIL_TOL
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub config: SolveConfig,
    /// Effective step, `T / steps`.
    pub dt: f64,
    pub steps: usize,
    pub snapshots: Vec<(f64, Field)>,
    pub diagnostics: Vec<Diagnostics>,
}

impl Trajectory {
    pub fn final_field(&self) -> &Field {
        &self.snapshots.last().expect("trajectory always holds the initial state").1
    }

    pub fn final_time(&self) -> f64 {
        self.snapshots.last().expect("trajectory always holds the initial state").0
    }
}

/// Integrate from `u0` to `T`, using `⌈T/dt⌉` equal steps so the last
/// snapshot lands on `T`.
pub fn evolve(u0: &Field, cfg: &SolveConfig) -> Result<Trajectory> {
    let stepper = SplitStep::new(cfg, u0.grid())?;
    let initial = Diagnostics::of(0.0, u0);
    if !initial.within_tail_tolerance() {
        warn!(
            "initial data tails exceed {TAIL_TOL:e}: spatial {:e}, spectral {:e}",
            initial.spatial_tail, initial.spectral_tail
        );
    }
    let steps = if cfg.final_time == 0.0 { 0 } else { (cfg.final_time / cfg.dt * (1.0 - 1e-12)).ceil() as usize };
    let dt = if steps == 0 { 0.0 } else { cfg.final_time / steps as f64 };
    let mut snapshots = vec![(0.0, u0.clone())];
    let mut diagnostics = vec![initial];
    let mut u = u0.clone();
    let mut done = 0;
    while done < steps {
        let block = cfg.snapshot_every.min(steps - done);
        stepper.advance(&mut u, block, dt, done)?;
        done += block;
        let t = if done == steps { cfg.final_time } else { dt * done as f64 };
        diagnostics.push(Diagnostics::of(t, &u));
        snapshots.push((t, u.clone()));
    }
    Ok(Trajectory { config: cfg.clone(), dt, steps, snapshots, diagnostics })
}
