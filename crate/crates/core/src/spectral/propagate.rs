use num_complex::Complex64;

use super::field::{Field, SpectralField};
use super::grid::Grid;
use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// A symbol evaluated once on the frequency lattice of a grid.
///
/// This is the per-(symbol, grid) cache: time stepping only multiplies by
/// `e^{itP(ξ_k)}`, so the lattice values are computed up front and shared.
#[derive(Debug, Clone)]
pub struct SymbolLattice {
    grid: Grid,
    symbol: Symbol,
    values: Vec<f64>,
    max_abs: f64,
}

impl SymbolLattice {
    pub fn new(symbol: &Symbol, grid: &Grid) -> Result<SymbolLattice> {
        if let Some(native) = symbol.native_dim() {
            if native != grid.dim() {
                return Err(Error::Symbol(format!(
                    "`{symbol}` is defined in dimension {native}, grid has dimension {}",
                    grid.dim()
                )));
            }
        }
        let d = grid.dim();
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..grid.len() {
            let xi = &grid.frequency(i)[..d];
            let p = symbol.eval(xi);
            if !p.is_finite() {
                return Err(Error::SymbolNotFinite { name: symbol.to_string(), xi: xi.to_vec() });
            }
            values.push(p);
        }
        let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        Ok(SymbolLattice { grid: grid.clone(), symbol: symbol.clone(), values, max_abs })
    }

    pub fn symbol(&self) -> &Symbol {
        &self.symbol
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `max_k |P(ξ_k)|` over the lattice.
    pub fn max_abs(&self) -> f64 {
        self.max_abs
    }

    /// `c_k ↦ e^{+itP(ξ_k)} c_k`, the exact flow of `i∂ₜu + P(D)u = 0`.
    pub fn propagate_spectral(&self, c: &mut SpectralField, t: f64) {
        if t == 0.0 {
            return;
        }
        let values = &self.values;
        self.grid
            .execution()
            .for_each_mut(c.coeffs_mut(), |i, z| *z *= Complex64::cis(t * values[i]));
    }

    pub fn propagate(&self, f: &Field, t: f64) -> Result<Field> {
        if !t.is_finite() {
            return Err(Error::InvalidArgument(format!("propagation time t = {t} must be finite")));
        }
        if !self.grid.same_as(f.grid()) {
            return Err(Error::GridMismatch);
        }
        if t == 0.0 {
            return Ok(f.clone());
        }
        let mut c = f.transform();
        self.propagate_spectral(&mut c, t);
        Ok(c.inverse_transform())
    }
}

/// `S(t) f` for the free flow `i∂ₜu + P(D)u = 0`.
pub fn free_propagate(f: &Field, symbol: &Symbol, t: f64) -> Result<Field> {
    SymbolLattice::new(symbol, f.grid())?.propagate(f, t)
}
