//! Exponent bookkeeping for the concentrated data family
//! `u₀^h(x) = h^{s−d/2} κ^h a₀(x/h)` and its rescaling
//! `ψ(τ, y) = h^{d/2−s} u^h(h^{2+α}τ, hy)`, which solves
//!
//! ```text
//! iε∂_τψ + h^{2σ(d/2−s)} P(h⁻¹D_y) ψ = λ|ψ|^{2σ}ψ,    ε = h^{2σ(d/2−s)−2−α}.
//! ```

use crate::error::{Error, Result};
use crate::symbol::{Symbol, SymbolClass};

/// Largest admissible concentration scale: `κ^h = (log 1/h)^{−θ}` needs
/// `log 1/h > 0`, and the family is only used for `h ≤ e^{−1}`.
pub const H_MAX: f64 = 0.367_879_441_171_442_33;

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingPlan {
    pub d: usize,
    pub sigma: f64,
    pub s: f64,
    pub class: SymbolClass,
    /// `ω`, homogeneous case only.
    pub omega: f64,
    pub theta: f64,
    pub delta: f64,
    /// `d/2 − m/(2σ)` (homogeneous) or `d/2` (bounded).
    pub s0: f64,
    /// `2 + α`.
    pub time_exponent: f64,
    /// Exponent of `h` in `ε`: `2σ(d/2−s) − 2 − α`.
    pub eps_exponent: f64,
    /// `β` from the general quotient formula.
    pub beta: f64,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} = {v} must be positive")))
    }
}

impl ScalingPlan {
    pub fn compute(
        d: usize,
        sigma: f64,
        s: f64,
        class: SymbolClass,
        omega: f64,
        theta: f64,
        delta: f64,
    ) -> Result<ScalingPlan> {
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if !(sigma > 0.0) {
            return Err(Error::hypothesis(format!("sigma = {sigma} must be positive"), "sigma > 0"));
        }
        positive("theta", theta)?;
        positive("delta", delta)?;
        if !(s > 0.0) {
            return Err(Error::hypothesis(format!("s = {s} must be positive"), "0 < s"));
        }
        let half_d = 0.5 * d as f64;
        let reach = 2.0 * sigma * (half_d - s);
        let (s0, time_exponent) = match class {
            SymbolClass::Homogeneous { degree: m } => {
                positive("omega", omega)?;
                let s0 = half_d - m / (2.0 * sigma);
                if !(s0 > 0.0) {
                    return Err(Error::hypothesis(
                        format!("scaling index s0 = d/2 - m/(2 sigma) = {s0} must be positive"),
                        "s0 > 0 required",
                    ));
                }
                if !(s < s0) {
                    return Err(Error::hypothesis(
                        format!("s = {s} must satisfy s < s0 = {s0}"),
                        "s < s0 required",
                    ));
                }
                (s0, ((m - 1.0 + omega) * reach + m) / (m + omega))
            }
            SymbolClass::Bounded { .. } => {
                if !(s < half_d) {
                    return Err(Error::hypothesis(
                        format!("s = {s} must satisfy s < d/2 = {half_d} for a bounded symbol"),
                        "s < d/2 required",
                    ));
                }
                (half_d, sigma * (half_d - s))
            }
        };
        let eps_exponent = reach - time_exponent;
        let beta = (2.0 * sigma * (s0 - half_d) + time_exponent) / eps_exponent;
        Ok(ScalingPlan { d, sigma, s, class, omega, theta, delta, s0, time_exponent, eps_exponent, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.time_exponent - 2.0
    }

    /// `β = m − 1 + ω` (homogeneous) or `β = 1` (bounded).
    pub fn beta_closed_form(&self) -> f64 {
        match self.class {
            SymbolClass::Homogeneous { degree } => degree - 1.0 + self.omega,
            SymbolClass::Bounded { .. } => 1.0,
        }
    }

    /// `2σ(d/2 − s)`, the power of `h` in front of the rescaled symbol.
    pub fn symbol_exponent(&self) -> f64 {
        2.0 * self.sigma * (0.5 * self.d as f64 - self.s)
    }

    /// Exponent `sδ − θ − 2σθs` of the lower bound on `‖φ(τ*)‖_{H^s}`.
    pub fn lower_bound_exponent(&self) -> f64 {
        self.s * self.delta - self.theta - 2.0 * self.sigma * self.theta * self.s
    }

    pub fn check_h(&self, h: f64) -> Result<()> {
        if h > 0.0 && h <= H_MAX {
            Ok(())
        } else {
            Err(Error::hypothesis(format!("h = {h} must lie in (0, e^-1]"), "log(1/h) > 0 for kappa^h"))
        }
    }

    /// `κ^h = (log 1/h)^{−θ}`.
    pub fn kappa(&self, h: f64) -> f64 {
        (-h.ln()).powf(-self.theta)
    }

    pub fn eps(&self, h: f64) -> f64 {
        h.powf(self.eps_exponent)
    }

    /// Inverse of [`eps`](Self::eps).
    pub fn h_for_eps(&self, eps: f64) -> f64 {
        eps.powf(1.0 / self.eps_exponent)
    }

    /// End of the ODE window, `ε (log 1/ε)^δ`.
    pub fn tau_star(&self, eps: f64) -> f64 {
        eps * (-eps.ln()).powf(self.delta)
    }

    /// `t^h = h^{2+α} ε (log 1/ε)^δ`.
    pub fn t_h(&self, h: f64) -> f64 {
        h.powf(self.time_exponent) * self.tau_star(self.eps(h))
    }

    /// `t^h = C h^{2σ(d/2−s)} (log 1/h)^δ` with `C = (2σ(d/2−s) − 2 − α)^δ`.
    pub fn t_h_closed_form(&self, h: f64) -> f64 {
        self.eps_exponent.powf(self.delta) * h.powf(self.symbol_exponent()) * (-h.ln()).powf(self.delta)
    }

    /// The rescaled multiplier `ξ ↦ h^{2σ(d/2−s)} P(ξ/h)` of the ψ-equation.
    pub fn psi_symbol(&self, symbol: &Symbol, h: f64) -> Symbol {
        symbol.rescaled(h.powf(self.symbol_exponent()), 1.0 / h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BOUNDED: SymbolClass = SymbolClass::Bounded { bound: 1.0 };
    const LAPLACIAN: SymbolClass = SymbolClass::Homogeneous { degree: 2.0 };

    #[test]
    fn bounded_example() {
        let p = ScalingPlan::compute(1, 2.0, 0.25, BOUNDED, 1.0, 0.05, 0.1).unwrap();
        assert!((p.time_exponent - 0.5).abs() < 1e-15);
        assert!((p.eps_exponent - 0.5).abs() < 1e-15);
        assert_eq!(p.s0, 0.5);
        assert!((p.beta - 1.0).abs() < 1e-15);
    }

    #[test]
    fn homogeneous_example() {
        let p = ScalingPlan::compute(2, 2.0, 0.25, LAPLACIAN, 1.0, 0.05, 0.1).unwrap();
        assert!((p.s0 - 0.5).abs() < 1e-15);
        assert!((p.time_exponent - 8.0 / 3.0).abs() < 1e-15);
        assert!((p.eps_exponent - 1.0 / 3.0).abs() < 1e-15);
        assert!((p.beta - 2.0).abs() < 1e-14);
        let h: f64 = 0.1;
        let lhs = (p.symbol_exponent() - 2.0) * h.ln();
        let rhs = 3.0 * p.eps(h).ln();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn hypothesis_violations() {
        // s >= s0
        assert!(ScalingPlan::compute(2, 2.0, 0.5, LAPLACIAN, 1.0, 0.05, 0.1).is_err());
        // s0 <= 0: d = 1, m = 2, sigma = 1
        assert!(ScalingPlan::compute(1, 1.0, 0.1, LAPLACIAN, 1.0, 0.05, 0.1).is_err());
        // bounded with s >= d/2
        let err = ScalingPlan::compute(1, 2.0, 0.6, BOUNDED, 1.0, 0.05, 0.1).unwrap_err();
        assert!(err.to_string().contains("s < d/2"), "{err}");
        assert!(ScalingPlan::compute(1, 2.0, 0.0, BOUNDED, 1.0, 0.05, 0.1).is_err());
        assert!(ScalingPlan::compute(1, 2.0, 0.2, BOUNDED, 1.0, 0.0, 0.1).is_err());
        assert!(ScalingPlan::compute(1, 2.0, 0.2, BOUNDED, 1.0, 0.05, -0.1).is_err());
        assert!(ScalingPlan::compute(2, 2.0, 0.2, LAPLACIAN, 0.0, 0.05, 0.1).is_err());
    }

    #[test]
    fn h_domain() {
        let p = ScalingPlan::compute(1, 2.0, 0.25, BOUNDED, 1.0, 0.05, 0.1).unwrap();
        assert!(p.check_h(1.0).is_err());
        assert!(p.check_h(0.5).is_err());
        assert!(p.check_h(0.0).is_err());
        assert!(p.check_h(H_MAX).is_ok());
        assert!((H_MAX - (-1f64).exp()).abs() < 1e-17);
        assert!(p.check_h(1e-3).is_ok());
    }

    #[test]
    fn t_h_forms_agree() {
        let p = ScalingPlan::compute(2, 2.0, 0.25, LAPLACIAN, 1.0, 0.05, 0.1).unwrap();
        for h in [1e-1, 1e-3, 1e-8] {
            assert!((p.t_h(h).ln() - p.t_h_closed_form(h).ln()).abs() < 1e-10);
        }
    }
}
