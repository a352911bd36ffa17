use num_complex::Complex64;

use super::grid::Grid;
use crate::error::{Error, Result};

/// Complex samples on the physical nodes of a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<Complex64>,
}

/// Fourier coefficients on the frequency lattice of a [`Grid`].
///
/// Normalised so that `Σ_k |c_k|²` equals the quadrature `L²` norm squared
/// of the physical field, `Σ_j |u_j|² (2L/n)^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl Field {
    pub fn zeros(grid: &Grid) -> Field {
        Field { grid: grid.clone(), values: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn from_values(grid: &Grid, values: Vec<Complex64>) -> Result<Field> {
        if values.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "field has {} values, grid has {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(Field { grid: grid.clone(), values })
    }

    /// Sample `f(x)` at every node; `x` has `d` components.
    pub fn from_fn(grid: &Grid, f: impl Fn(&[f64]) -> Complex64) -> Field {
        let d = grid.dim();
        let values = (0..grid.len()).map(|i| f(&grid.node(i)[..d])).collect();
        Field { grid: grid.clone(), values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.grid.execution().max(&self.values, |_, z| z.norm())
    }

    pub fn scale(&mut self, factor: Complex64) {
        self.grid.execution().for_each_mut(&mut self.values, |_, z| *z *= factor);
    }

    /// `self − other`, nodewise.
    pub fn sub(&self, other: &Field) -> Result<Field> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch);
        }
        let mut out = self.clone();
        out.grid.execution().for_each_mut(&mut out.values, |i, z| *z -= other.values[i]);
        Ok(out)
    }

    /// Forward transform onto Plancherel-normalised coefficients.
    pub fn transform(&self) -> SpectralField {
        let mut coeffs = self.values.clone();
        self.grid.fft(&mut coeffs, false);
        let d = self.grid.dim() as i32;
        let scale = (2.0 * self.grid.half_length()).powf(0.5 * d as f64) / (self.grid.n() as f64).powi(d);
        self.grid.execution().for_each_mut(&mut coeffs, |_, z| *z *= scale);
        SpectralField { grid: self.grid.clone(), coeffs }
    }
}

impl SpectralField {
    pub fn zeros(grid: &Grid) -> SpectralField {
        SpectralField { grid: grid.clone(), coeffs: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn from_coeffs(grid: &Grid, coeffs: Vec<Complex64>) -> Result<SpectralField> {
        if coeffs.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "spectral field has {} coefficients, grid has {} modes",
                coeffs.len(),
                grid.len()
            )));
        }
        Ok(SpectralField { grid: grid.clone(), coeffs })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// `(Σ_k |c_k|²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        self.grid.execution().sum(&self.coeffs, |_, z| z.norm_sqr()).sqrt()
    }

    pub fn inverse_transform(&self) -> Field {
        let mut values = self.coeffs.clone();
        self.grid.fft(&mut values, true);
        let scale = (2.0 * self.grid.half_length()).powf(-0.5 * self.grid.dim() as f64);
        self.grid.execution().for_each_mut(&mut values, |_, z| *z *= scale);
        Field { grid: self.grid.clone(), values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_field(grid: &Grid, seed: u64) -> Field {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..grid.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        Field::from_values(grid, values).unwrap()
    }

    #[test]
    fn zero_field_has_zero_coefficients() {
        let g = Grid::new(2, 16, 3.0).unwrap();
        assert!(Field::zeros(&g).transform().coeffs().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn single_mode_lands_on_one_coefficient() {
        let g = Grid::new(1, 32, PI).unwrap();
        let f = Field::from_fn(&g, |x| Complex64::from_polar(1.0, x[0]));
        let c = f.transform();
        for (i, z) in c.coeffs().iter().enumerate() {
            if g.wavenumber(i) == 1 {
                assert!(z.norm() > 1.0);
            } else {
                assert!(z.norm() < 1e-14, "mode {} = {z}", g.wavenumber(i));
            }
        }
    }

    #[test]
    fn round_trip_and_plancherel() {
        for (d, n, l) in [(1, 64, 5.0), (2, 32, 2.5)] {
            let g = Grid::new(d, n, l).unwrap();
            let f = random_field(&g, 7);
            let c = f.transform();
            let back = c.inverse_transform();
            let err = back.sub(&f).unwrap().max_abs() / f.max_abs();
            assert!(err < 1e-12, "round trip {err}");
            let quad: f64 = f.values().iter().map(|z| z.norm_sqr()).sum::<f64>() * g.cell_volume();
            assert!((quad.sqrt() - c.l2_norm()).abs() / c.l2_norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_wrong_length() {
        let g = Grid::new(1, 16, 1.0).unwrap();
        assert!(Field::from_values(&g, vec![Complex64::new(0.0, 0.0); 15]).is_err());
        assert!(SpectralField::from_coeffs(&g, vec![]).is_err());
    }
}
