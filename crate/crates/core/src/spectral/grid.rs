use std::fmt;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::par::Execution;

struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

/// Periodic box `[−L, L)^d` with `n` nodes per axis.
///
/// Nodes are `x_j = −L + 2Lj/n`. Frequencies are `ξ_k = (π/L) k` with
/// `k ∈ {−n/2, …, n/2 − 1}`, stored in FFT order (`k = 0, 1, …, n/2 − 1,
/// −n/2, …, −1`). For `d = 2` the flat index is `i₀ n + i₁`.
#[derive(Clone)]
pub struct Grid {
    dim: usize,
    n: usize,
    half_length: f64,
    execution: Execution,
    plans: Arc<Plans>,
}

impl Grid {
    pub fn new(dim: usize, n: usize, half_length: f64) -> Result<Grid> {
        if dim != 1 && dim != 2 {
            return Err(Error::Grid(format!("dimension d = {dim} must be 1 or 2")));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::Grid(format!("n = {n} must be a power of two >= 8")));
        }
        if !(half_length > 0.0) || !half_length.is_finite() {
            return Err(Error::Grid(format!("half-length L = {half_length} must be positive")));
        }
        let mut planner = FftPlanner::new();
        let plans = Plans { forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n) };
        Ok(Grid { dim, n, half_length, execution: Execution::default(), plans: Arc::new(plans) })
    }

    pub fn with_execution(mut self, execution: Execution) -> Grid {
        self.execution = execution;
        self
    }

    pub fn execution(&self) -> Execution {
        self.execution
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    /// Number of nodes, `n^d`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_length / self.n as f64
    }

    /// Quadrature weight `(2L/n)^d`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Frequency lattice spacing `π/L`.
    pub fn dxi(&self) -> f64 {
        std::f64::consts::PI / self.half_length
    }

    /// `(π/L)(n/2)`, the modulus of the Nyquist component.
    pub fn max_frequency(&self) -> f64 {
        self.dxi() * (self.n / 2) as f64
    }

    /// Signed wavenumber of storage slot `i` along one axis.
    pub fn wavenumber(&self, i: usize) -> i64 {
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    pub fn axis_nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| -self.half_length + self.spacing() * j as f64).collect()
    }

    /// Frequencies along one axis in storage order.
    pub fn axis_frequencies(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.dxi() * self.wavenumber(i) as f64).collect()
    }

    fn split(&self, idx: usize) -> [usize; 2] {
        if self.dim == 1 {
            [idx, 0]
        } else {
            [idx / self.n, idx % self.n]
        }
    }

    /// Physical node for flat index `idx`; unused components are zero.
    pub fn node(&self, idx: usize) -> [f64; 2] {
        let [a, b] = self.split(idx);
        let x = |j: usize| -self.half_length + self.spacing() * j as f64;
        if self.dim == 1 {
            [x(a), 0.0]
        } else {
            [x(a), x(b)]
        }
    }

    /// Frequency for flat index `idx`; unused components are zero.
    pub fn frequency(&self, idx: usize) -> [f64; 2] {
        let [a, b] = self.split(idx);
        let xi = |i: usize| self.dxi() * self.wavenumber(i) as f64;
        if self.dim == 1 {
            [xi(a), 0.0]
        } else {
            [xi(a), xi(b)]
        }
    }

    /// Signed wavenumbers for flat index `idx`.
    pub fn wavenumbers(&self, idx: usize) -> [i64; 2] {
        let [a, b] = self.split(idx);
        if self.dim == 1 {
            [self.wavenumber(a), 0]
        } else {
            [self.wavenumber(a), self.wavenumber(b)]
        }
    }

    pub fn same_as(&self, other: &Grid) -> bool {
        self.dim == other.dim && self.n == other.n && self.half_length == other.half_length
    }

    /// Unnormalised DFT along every axis, in place.
    pub(crate) fn fft(&self, data: &mut [num_complex::Complex64], inverse: bool) {
        let plan = if inverse { &self.plans.inverse } else { &self.plans.forward };
        let n = self.n;
        let exec = self.execution;
        let rows = |row: &mut [num_complex::Complex64]| plan.process(row);
        exec.for_each_row(data, n, rows);
        if self.dim == 2 {
            transpose(data, n);
            exec.for_each_row(data, n, rows);
            transpose(data, n);
        }
    }
}

fn transpose<T: Copy>(data: &mut [T], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("dim", &self.dim)
            .field("n", &self.n)
            .field("half_length", &self.half_length)
            .finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn lattice_examples() {
        let g = Grid::new(1, 8, PI).unwrap();
        let mut xi = g.axis_frequencies();
        xi.sort_by(f64::total_cmp);
        assert_eq!(xi, vec![-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);

        let g = Grid::new(1, 16, 2.0 * PI).unwrap();
        let max_pos = g.axis_frequencies().into_iter().fold(f64::MIN, f64::max);
        assert_eq!(max_pos, 3.5);
        assert_eq!(g.max_frequency(), 4.0);

        let g = Grid::new(2, 8, 1.0).unwrap();
        assert_eq!(g.len(), 64);
        assert_eq!(g.dxi(), PI);
        assert_eq!(g.frequency(9), [PI, PI]);
        assert_eq!(g.node(0), [-1.0, -1.0]);
    }

    #[test]
    fn rejects_invalid() {
        assert!(Grid::new(1, 12, 1.0).is_err());
        assert!(Grid::new(1, 4, 1.0).is_err());
        assert!(Grid::new(1, 16, 0.0).is_err());
        assert!(Grid::new(1, 16, -1.0).is_err());
        assert!(Grid::new(3, 16, 1.0).is_err());
        assert!(Grid::new(0, 16, 1.0).is_err());
    }

    #[test]
    fn transpose_is_involution() {
        let mut v: Vec<usize> = (0..64).collect();
        transpose(&mut v, 8);
        assert_eq!(v[1], 8);
        transpose(&mut v, 8);
        assert_eq!(v, (0..64).collect::<Vec<_>>());
    }
}
