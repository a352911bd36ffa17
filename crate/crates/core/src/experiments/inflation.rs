use super::data::{build_concentrated_data, concentrated_grid, gaussian_profile, ode_phase_profile};
use super::ode_approx::check_class;
use super::report::{Cell, ExperimentKind, ExperimentReport, Verdict};
use super::scaling::ScalingPlan;
use crate::error::{Error, Result};
use crate::evolution::{evolve, recommended_dt, sigma_admissible, SolveConfig};
use crate::par::Execution;
use crate::spectral::{sobolev_norm, Field, Grid, SymbolLattice};
use crate::symbol::Symbol;

/// Required growth of the inflation ratio from the largest to the smallest `h`.
pub const INFLATION_GROWTH: f64 = 3.0;

#[derive(Debug, Clone, PartialEq)]
pub struct InflationParams {
    pub lambda: f64,
    pub min_steps: usize,
    pub execution: Execution,
}

impl Default for InflationParams {
    fn default() -> Self {
        InflationParams { lambda: 1.0, min_steps: 64, execution: Execution::default() }
    }
}

/// `(‖u^h‖²_{L²} + ‖u^h‖²_{Ḣ^s})^{1/2}` from `ψ`, using
/// `‖u^h‖_{Ḣ^{s'}} = h^{s−s'} ‖ψ‖_{Ḣ^{s'}}` at `s' ∈ {0, s}`.
fn transferred_norm(psi: &Field, h: f64, s: f64) -> Result<f64> {
    let c = psi.transform();
    let l2 = h.powf(s) * c.sobolev_norm(0.0, true)?;
    let hs = c.sobolev_norm(s, true)?;
    Ok(l2.hypot(hs))
}

/// Sweep the concentrated family along `h_list` and record
/// `‖u₀^h‖_{H^s}` and `‖u^h(t^h)‖_{H^s} / ‖u₀^h‖_{H^s}`.
pub fn run_norm_inflation(
    plan: &ScalingPlan,
    symbol: &Symbol,
    psi_grid: &Grid,
    h_list: &[f64],
    params: &InflationParams,
) -> Result<ExperimentReport> {
    check_class(plan, symbol)?;
    if !sigma_admissible(plan.sigma, plan.d) {
        return Err(Error::hypothesis(
            format!("sigma = {} is neither an integer nor >= r/2 for an integer r > d/2", plan.sigma),
            "sigma integer, or 2 sigma >= r > d/2 for an integer r",
        ));
    }
    if psi_grid.dim() != plan.d {
        return Err(Error::InvalidArgument(format!("grid dimension {} != d = {}", psi_grid.dim(), plan.d)));
    }
    if h_list.len() < 2 || h_list.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidArgument(format!("h list {h_list:?} must have >= 2 strictly decreasing entries")));
    }
    for &h in h_list {
        plan.check_h(h)?;
    }

    let s = plan.s;
    let rows = params.execution.map(h_list, |&h| -> Result<Vec<Cell>> {
        let x_grid = concentrated_grid(plan.d, h)?.with_execution(psi_grid.execution());
        let u0 = build_concentrated_data(plan, h, &x_grid)?;
        let norm0_direct = sobolev_norm(&u0, s, false)?;

        let eps = plan.eps(h);
        let kappa = plan.kappa(h);
        let tau_star = plan.tau_star(eps);
        let psi_symbol = plan.psi_symbol(symbol, h);
        let psi0 = gaussian_profile(psi_grid, kappa);
        let lattice = SymbolLattice::new(&psi_symbol, psi_grid)?;
        let dt = recommended_dt(&psi0, &lattice, params.lambda, plan.sigma, eps)
            .min(tau_star / params.min_steps as f64);
        let cfg = SolveConfig::new(psi_symbol, params.lambda, plan.sigma, dt, tau_star)
            .with_eps(eps)
            .with_snapshot_every(usize::MAX);
        let traj = evolve(&psi0, &cfg)?;

        let norm0 = transferred_norm(&psi0, h, s)?;
        let norm_final = transferred_norm(traj.final_field(), h, s)?;
        let phi = ode_phase_profile(tau_star, psi_grid, kappa, params.lambda, plan.sigma, eps);
        let phi_norm = transferred_norm(&phi, h, s)?;
        let log_factor = (-eps.ln()).powf(plan.lower_bound_exponent());
        let tail = traj.diagnostics.iter().map(|d| d.spectral_tail.max(d.spatial_tail)).fold(0.0, f64::max);
        Ok(vec![
            h.into(),
            eps.into(),
            kappa.into(),
            tau_star.into(),
            plan.t_h(h).into(),
            norm0_direct.into(),
            norm0.into(),
            norm_final.into(),
            (norm_final / norm0).into(),
            phi_norm.into(),
            log_factor.into(),
            tail.into(),
        ])
    });

    let mut report = ExperimentReport::new(
        ExperimentKind::Inflate,
        &[
            "h",
            "eps",
            "kappa",
            "tau_star",
            "t_h",
            "norm0_hs",
            "norm0_transferred",
            "norm_t_h",
            "ratio",
            "phi_norm",
            "log_lower_bound",
            "max_tail",
        ],
    );
    for row in rows {
        report.push_row(row?);
    }
    let initial = report.column("norm0_hs");
    let ratio = report.column("ratio");
    let decreasing = initial.windows(2).all(|w| w[1] < w[0]);
    let growth = ratio[ratio.len() - 1] / ratio[0];
    report.verdict = if decreasing && growth >= INFLATION_GROWTH { Verdict::Pass } else { Verdict::Fail };
    report.criterion = format!(
        "||u0^h||_Hs strictly decreasing (observed: {decreasing}) and ratio growth >= {INFLATION_GROWTH} \
         (observed {growth:.6})"
    );
    report.notes.push(format!(
        "lower-bound exponent s*delta - theta - 2*sigma*theta*s = {:.6}",
        plan.lower_bound_exponent()
    ));
    Ok(report)
}
