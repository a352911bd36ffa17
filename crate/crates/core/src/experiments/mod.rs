//! Sweep drivers for the scaling constructions.
//!
//! * [`ScalingPlan`]: exponents of the semiclassical rescaling.
//! * [`run_norm_inflation`]: small-data/large-norm family along `h → 0`.
//! * [`run_ode_approx`]: distance between the rescaled solution and the
//!   pointwise phase ODE on logarithmic windows.
//! * [`run_strichartz_probe`]: exponent of `‖S(·)u₀^N‖_{L^p L^q}` in `N`.
//! * [`run_singular_probe`]: radial `Ḣ¹` integrals of log-singular data in
//!   two dimensions and of its ODE evolution.
//!
//! Sweep points are independent jobs dispatched through
//! [`Execution`](crate::par::Execution); reports keep parameter order.

mod data;
mod inflation;
pub(crate) mod ode_approx;
mod report;
mod scaling;
mod singular;
mod strichartz;

pub use data::{build_concentrated_data, concentrated_grid, gaussian_profile, ode_phase_profile};
pub use inflation::{run_norm_inflation, InflationParams};
pub use ode_approx::{run_ode_approx, OdeApproxParams};
pub use report::{fit_power_law, Cell, ExperimentKind, ExperimentReport, PowerFit, Verdict};
pub use scaling::{ScalingPlan, H_MAX};
pub use singular::{chi_cutoff, log_singular_profile, run_singular_probe, RadialSample, SingularParams};
pub use strichartz::{admissible_pair, run_strichartz_probe, StrichartzParams};
