//! Periodic grids, Plancherel-normalised transforms, the free propagator and
//! the norm evaluators.

mod field;
mod grid;
pub(crate) mod norms;
mod propagate;

pub use field::{Field, SpectralField};
pub use grid::Grid;
pub use norms::{
    lebesgue_norm, sobolev_norm, spacetime_norm, spatial_tail_fraction, spectral_tail_fraction, TAIL_TOL,
};
pub use propagate::{free_propagate, SymbolLattice};
