use super::data::{gaussian_profile, ode_phase_profile};
use super::report::{Cell, ExperimentKind, ExperimentReport, Verdict};
use super::scaling::ScalingPlan;
use crate::error::{Error, Result};
use crate::evolution::{evolve, recommended_dt, SolveConfig};
use crate::par::Execution;
use crate::spectral::{Grid, SymbolLattice};
use crate::symbol::{Symbol, SymbolClass};

#[derive(Debug, Clone, PartialEq)]
pub struct OdeApproxParams {
    pub lambda: f64,
    /// Sobolev index of the error norm; an integer above `d/2`.
    pub r: u32,
    /// Replace the rescaled symbol by zero.
    pub disable_dispersion: bool,
    /// Lower bound on the number of steps across `[0, τ*]`.
    pub min_steps: usize,
    pub execution: Execution,
}

impl Default for OdeApproxParams {
    fn default() -> Self {
        OdeApproxParams { lambda: 1.0, r: 1, disable_dispersion: false, min_steps: 64, execution: Execution::default() }
    }
}

pub(crate) fn check_class(plan: &ScalingPlan, symbol: &Symbol) -> Result<()> {
    let consistent = match (plan.class, symbol.class()) {
        (SymbolClass::Bounded { .. }, SymbolClass::Bounded { .. }) => true,
        (SymbolClass::Homogeneous { degree: a }, SymbolClass::Homogeneous { degree: b }) => a == b,
        _ => false,
    };
    if consistent {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "scaling plan class {:?} does not match symbol `{symbol}` ({:?})",
            plan.class,
            symbol.class()
        )))
    }
}

/// Check the Sobolev index of the error norm: `r > d/2`, and `r ≤ 2σ` when
/// `σ` is not an integer.
pub(crate) fn check_r(r: u32, d: usize, sigma: f64) -> Result<()> {
    if 2 * r as usize <= d {
        return Err(Error::hypothesis(format!("r = {r} must exceed d/2 = {}", d as f64 / 2.0), "r > d/2"));
    }
    if sigma.fract() != 0.0 && r as f64 > 2.0 * sigma {
        return Err(Error::hypothesis(
            format!("r = {r} must satisfy r <= 2 sigma = {} for non-integer sigma", 2.0 * sigma),
            "r <= 2 sigma when sigma is not an integer",
        ));
    }
    Ok(())
}

/// Per `ε`: `E(ε) = max_{τ ≤ ε(log 1/ε)^δ} ‖ψ(τ) − φ(τ)‖_{H^r}`.
pub fn run_ode_approx(
    plan: &ScalingPlan,
    symbol: &Symbol,
    grid: &Grid,
    eps_list: &[f64],
    params: &OdeApproxParams,
) -> Result<ExperimentReport> {
    check_class(plan, symbol)?;
    check_r(params.r, plan.d, plan.sigma)?;
    if grid.dim() != plan.d {
        return Err(Error::InvalidArgument(format!("grid dimension {} != d = {}", grid.dim(), plan.d)));
    }
    if eps_list.len() < 2 {
        return Err(Error::InvalidArgument("eps list needs at least two entries".into()));
    }
    if eps_list.iter().any(|&e| !(e > 0.0 && e < 1.0)) || eps_list.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidArgument(format!("eps list {eps_list:?} must decrease strictly within (0, 1)")));
    }
    for &eps in eps_list {
        plan.check_h(plan.h_for_eps(eps))?;
    }

    let rows = params.execution.map(eps_list, |&eps| -> Result<Vec<Cell>> {
        let h = plan.h_for_eps(eps);
        let kappa = plan.kappa(h);
        let psi_symbol = if params.disable_dispersion {
            symbol.rescaled(0.0, 1.0)
        } else {
            plan.psi_symbol(symbol, h)
        };
        let tau_star = plan.tau_star(eps);
        let psi0 = gaussian_profile(grid, kappa);
        let lattice = SymbolLattice::new(&psi_symbol, grid)?;
        let dt = recommended_dt(&psi0, &lattice, params.lambda, plan.sigma, eps)
            .min(tau_star / params.min_steps as f64);
        let cfg = SolveConfig::new(psi_symbol, params.lambda, plan.sigma, dt, tau_star).with_eps(eps);
        let traj = evolve(&psi0, &cfg)?;
        let mut worst: f64 = 0.0;
        for (tau, psi) in &traj.snapshots {
            let phi = ode_phase_profile(*tau, grid, kappa, params.lambda, plan.sigma, eps);
            let gap = psi.sub(&phi)?.transform().sobolev_norm(params.r as f64, false)?;
            worst = worst.max(gap);
        }
        let spectral_tail = traj.diagnostics.iter().map(|d| d.spectral_tail).fold(0.0, f64::max);
        let spatial_tail = traj.diagnostics.iter().map(|d| d.spatial_tail).fold(0.0, f64::max);
        Ok(vec![
            eps.into(),
            h.into(),
            kappa.into(),
            tau_star.into(),
            traj.steps.into(),
            worst.into(),
            spectral_tail.into(),
            spatial_tail.into(),
        ])
    });

    let mut report = ExperimentReport::new(
        ExperimentKind::OdeApprox,
        &["eps", "h", "kappa", "tau_star", "steps", "error_hr", "spectral_tail", "spatial_tail"],
    );
    for row in rows {
        report.push_row(row?);
    }
    let errors = report.column("error_hr");
    let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
    let ratio = errors[errors.len() - 1] / errors[0];
    report.verdict = if decreasing && ratio < 0.5 { Verdict::Pass } else { Verdict::Fail };
    report.criterion = format!(
        "E(eps) strictly decreasing along eps list and E(last)/E(first) < 0.5; observed ratio {ratio:.6e}"
    );
    report.notes.push(format!("symbol {symbol}, r = {}, lambda = {}", params.r, params.lambda));
    Ok(report)
}
