//! Pseudospectral laboratory for the nonlinear Schrödinger equation with a
//! modified dispersion relation,
//!
//! ```text
//! i ∂ₜu + P(D) u = λ |u|^{2σ} u,      D = −i∇,
//! ```
//!
//! on periodic boxes in one or two space dimensions.
//!
//! The crate is organised bottom-up:
//!
//! * [`spectral`]: grids, Plancherel-normalised transforms, the free
//!   propagator and all norm evaluators.
//! * [`symbol`]: the catalog of real Fourier multipliers `P`.
//! * [`evolution`]: the exact-phase Strang integrator and an independent
//!   Duhamel/Picard solver used to cross-check it.
//! * [`experiments`]: the scaling bookkeeping and the four sweep drivers
//!   (norm inflation, ODE approximation, Strichartz exponent probe and the
//!   log-singular critical-regularity probe).
//! * [`runner`]: configuration parsing, CSV reports and the CLI.
//!
//! Data-parallel loops go through [`par::Execution`]; with the default
//! `parallel` feature they run on rayon, otherwise sequentially.

// NaN-rejecting guards are written as `!(x > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod evolution;
pub mod experiments;
pub mod par;
pub mod quadrature;
pub mod runner;
pub mod spectral;
pub mod symbol;

pub use error::{Error, Result};
pub use num_complex::Complex64;
