use num_complex::Complex64;

use super::scaling::ScalingPlan;
use crate::error::{Error, Result};
use crate::spectral::{Field, Grid};

/// Nodes required across one unit of the concentration width `h`.
const NODES_PER_WIDTH: f64 = 8.0;
/// `a₀(L/h)` must fall below this at the box edge.
const EDGE_TAIL: f64 = 1e-12;

fn r2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// `amplitude · e^{−|x|²}` sampled on `grid`.
pub fn gaussian_profile(grid: &Grid, amplitude: f64) -> Field {
    Field::from_fn(grid, |x| Complex64::new(amplitude * (-r2(x)).exp(), 0.0))
}

/// Smallest grid centred at the origin that resolves `a₀(x/h)`:
/// `L = 6h`, spacing at most `h/8`.
pub fn concentrated_grid(d: usize, h: f64) -> Result<Grid> {
    let half_length = 6.0 * h;
    let n = ((2.0 * half_length * NODES_PER_WIDTH / h).ceil() as usize).next_power_of_two().max(8);
    Grid::new(d, n, half_length)
}

/// `u₀^h(x) = h^{s−d/2} κ^h a₀(x/h)` with `a₀ = e^{−|x|²}`.
pub fn build_concentrated_data(plan: &ScalingPlan, h: f64, grid: &Grid) -> Result<Field> {
    plan.check_h(h)?;
    if grid.dim() != plan.d {
        return Err(Error::InvalidArgument(format!(
            "grid dimension {} differs from plan dimension {}",
            grid.dim(),
            plan.d
        )));
    }
    let spacing = grid.spacing();
    if spacing > h / NODES_PER_WIDTH {
        let needed = (2.0 * grid.half_length() * NODES_PER_WIDTH / h).ceil() as usize;
        return Err(Error::Resolution(format!(
            "spacing {spacing:e} does not resolve width h = {h:e}; need n >= {}",
            needed.next_power_of_two()
        )));
    }
    let min_half_length = h * (-EDGE_TAIL.ln()).sqrt();
    if grid.half_length() < min_half_length {
        return Err(Error::Resolution(format!(
            "box half-length {} cuts the profile; need L >= {min_half_length:e}",
            grid.half_length()
        )));
    }
    let amplitude = h.powf(plan.s - 0.5 * plan.d as f64) * plan.kappa(h);
    Ok(Field::from_fn(grid, |x| Complex64::new(amplitude * (-r2(x) / (h * h)).exp(), 0.0)))
}

/// Closed-form solution of `iε∂_τφ = λ|φ|^{2σ}φ`, `φ(0) = κ a₀`:
/// `φ(τ, y) = κ a₀(y) exp(−iλ (τ/ε) κ^{2σ} a₀(y)^{2σ})`.
pub fn ode_phase_profile(tau: f64, grid: &Grid, kappa: f64, lambda: f64, sigma: f64, eps: f64) -> Field {
    let rate = lambda * (tau / eps) * kappa.powf(2.0 * sigma);
    Field::from_fn(grid, |y| {
        let a = (-r2(y)).exp();
        Complex64::from_polar(kappa * a, -rate * a.powf(2.0 * sigma))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::SymbolClass;

    fn plan() -> ScalingPlan {
        ScalingPlan::compute(1, 2.0, 0.25, SymbolClass::Bounded { bound: 1.0 }, 1.0, 0.05, 0.1).unwrap()
    }

    #[test]
    fn peak_amplitude_and_symmetry() {
        let h = (-2f64).exp();
        let grid = concentrated_grid(1, h).unwrap();
        let u = build_concentrated_data(&plan(), h, &grid).unwrap();
        let expect = 0.5f64.exp() * 2f64.powf(-0.05);
        assert!((u.max_abs() - expect).abs() < 1e-14 * expect);
        let n = grid.n();
        // x_j and x_{n−j} are mirror images
        for j in 1..n {
            assert!((u.values()[j] - u.values()[n - j]).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_h_at_one_and_coarse_grids() {
        let p = plan();
        let grid = concentrated_grid(1, 0.1).unwrap();
        assert!(build_concentrated_data(&p, 1.0, &grid).is_err());
        let coarse = Grid::new(1, 16, 0.6).unwrap();
        assert!(matches!(build_concentrated_data(&p, 0.1, &coarse), Err(Error::Resolution(_))));
        let small = Grid::new(1, 256, 0.3).unwrap();
        assert!(matches!(build_concentrated_data(&p, 0.1, &small), Err(Error::Resolution(_))));
    }

    #[test]
    fn phase_profile_modulus_is_time_independent() {
        let g = Grid::new(2, 32, 6.0).unwrap();
        let base = ode_phase_profile(0.0, &g, 0.8, 1.0, 2.0, 0.1);
        assert_eq!(base, gaussian_profile(&g, 0.8));
        for tau in [0.01, 0.3, 5.0] {
            let phi = ode_phase_profile(tau, &g, 0.8, 1.0, 2.0, 0.1);
            for (a, b) in base.values().iter().zip(phi.values()) {
                assert!((a.norm() - b.norm()).abs() <= 1e-15);
            }
        }
    }
}
