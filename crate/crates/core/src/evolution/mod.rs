//! Time integration of `iε∂ₜu + P(D)u = λ|u|^{2σ}u`.
//!
//! [`evolve`] composes the two exactly solvable sub-flows (free propagation
//! in frequency space, the pointwise phase rotation in physical space) in a
//! Strang splitting. [`picard_solve`] iterates the Duhamel map on a stored
//! time mesh and serves as an independent cross-check.

mod config;
mod picard;
mod split_step;

pub use config::{sigma_admissible, SolveConfig};
pub use picard::{picard_solve, PicardOptions, PicardReport};
pub use split_step::{
    evolve, nonlinear_phase_step, recommended_dt, strang_step, Diagnostics, SplitStep, Trajectory,
};
