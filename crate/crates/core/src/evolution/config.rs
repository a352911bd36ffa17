use crate::error::{Error, Result};
use crate::symbol::Symbol;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub symbol: Symbol,
    /// Coupling `λ`.
    pub lambda: f64,
    /// Nonlinearity power `σ > 0`.
    pub sigma: f64,
    pub dt: f64,
    pub final_time: f64,
    /// Semiclassical factor multiplying `i∂ₜ`; 1 for the unscaled equation.
    pub eps: f64,
    /// Steps between stored snapshots; the final state is always stored.
    pub snapshot_every: usize,
    /// Apply the 2/3-rule filter after every nonlinear sub-step.
    pub dealias: bool,
}

impl SolveConfig {
    pub fn new(symbol: Symbol, lambda: f64, sigma: f64, dt: f64, final_time: f64) -> SolveConfig {
        SolveConfig { symbol, lambda, sigma, dt, final_time, eps: 1.0, snapshot_every: 1, dealias: false }
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn with_snapshot_every(mut self, every: usize) -> Self {
        self.snapshot_every = every;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidArgument(format!("time step dt = {} must be positive", self.dt)));
        }
        if !(self.final_time >= 0.0) || !self.final_time.is_finite() {
            return Err(Error::InvalidArgument(format!("final time T = {} must be >= 0", self.final_time)));
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::hypothesis(format!("sigma = {} must be positive", self.sigma), "sigma > 0"));
        }
        if !(self.eps > 0.0 && self.eps <= 1.0) {
            return Err(Error::InvalidArgument(format!("eps = {} must lie in (0, 1]", self.eps)));
        }
        if !self.lambda.is_finite() {
            return Err(Error::InvalidArgument(format!("lambda = {} must be finite", self.lambda)));
        }
        if self.snapshot_every == 0 {
            return Err(Error::InvalidArgument("snapshot_every must be >= 1".into()));
        }
        Ok(())
    }

    /// Whether `σ` meets the smoothness hypothesis of the norm-inflation
    /// construction in dimension `d`.
    pub fn sigma_admissible(&self, d: usize) -> bool {
        sigma_admissible(self.sigma, d)
    }
}

/// `σ` is an integer, or some integer `r` satisfies `2σ ≥ r > d/2`.
pub fn sigma_admissible(sigma: f64, d: usize) -> bool {
    if !(sigma > 0.0) {
        return false;
    }
    if sigma.fract() == 0.0 {
        return true;
    }
    // smallest integer strictly above d/2
    let r = d / 2 + 1;
    2.0 * sigma >= r as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(sigma_admissible(1.0, 3));
        assert!(sigma_admissible(1.5, 1));
        assert!(sigma_admissible(0.5, 1));
        assert!(!sigma_admissible(0.3, 1));
        assert!(!sigma_admissible(0.75, 2));
        assert!(sigma_admissible(1.25, 2));
        assert!(!sigma_admissible(0.0, 1));
    }

    #[test]
    fn validation() {
        let base = SolveConfig::new(Symbol::parse("laplacian").unwrap(), 1.0, 1.0, 1e-3, 1.0);
        assert!(base.validate().is_ok());
        assert!(SolveConfig { dt: 0.0, ..base.clone() }.validate().is_err());
        assert!(SolveConfig { final_time: -1.0, ..base.clone() }.validate().is_err());
        assert!(SolveConfig { sigma: 0.0, ..base.clone() }.validate().is_err());
        assert!(SolveConfig { eps: 1.5, ..base.clone() }.validate().is_err());
        assert!(SolveConfig { eps: 0.0, ..base.clone() }.validate().is_err());
        assert!(SolveConfig { snapshot_every: 0, ..base }.validate().is_err());
    }
}
