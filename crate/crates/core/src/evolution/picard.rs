//! Fixed-point iteration of the Duhamel map
//!
//! ```text
//! Φ(u)(t) = S(t)u₀ − i(λ/ε) ∫₀ᵗ S(t−τ) (|u|^{2σ}u)(τ) dτ,     S(t) = e^{itP(D)/ε},
//! ```
//!
//! on a uniform time mesh. Writing `g(τ) = S(−τ) N(u(τ))` gives
//! `Φ(u)(t_j) = S(t_j)[û₀ − i(λ/ε) ∫₀^{t_j} g]`, so each sweep is one
//! cumulative trapezoid rule in frequency space.

use num_complex::Complex64;

use super::config::SolveConfig;
use crate::error::{Error, Result};
use crate::spectral::{Field, SpectralField, SymbolLattice};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PicardOptions {
    /// Stop when `sup_t ‖u^{n+1}(t) − u^n(t)‖_{H^s} < tol`. Each mesh is
    /// iterated to `tol / 100` so the iteration residual stays below the
    /// mesh-doubling threshold.
    pub tol: f64,
    pub max_iter: usize,
    /// Initial number of mesh intervals on `[0, T]`.
    pub intervals: usize,
    /// The mesh is doubled until the terminal field moves by less than
    /// `tol / 10`, up to this many intervals.
    pub max_intervals: usize,
    /// Sobolev index of the iteration distance.
    pub sobolev_index: f64,
}

impl Default for PicardOptions {
    fn default() -> Self {
        PicardOptions { tol: 1e-10, max_iter: 100, intervals: 64, max_intervals: 1 << 14, sobolev_index: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PicardReport {
    /// Number of applications of `Φ` on the final mesh.
    pub iterations: usize,
    /// `sup_t ‖u^{n+1} − u^n‖_{H^s}` per iteration.
    pub distances: Vec<f64>,
    /// `distances[n] / distances[n−1]`.
    pub ratios: Vec<f64>,
    pub intervals: usize,
    /// Terminal-field change at the last mesh doubling.
    pub mesh_change: f64,
}

struct Mesh<'a> {
    lattice: &'a SymbolLattice,
    cfg: &'a SolveConfig,
    times: Vec<f64>,
}

impl Mesh<'_> {
    fn free(&self, u0: &SpectralField) -> Vec<SpectralField> {
        let eps = self.cfg.eps;
        self.times
            .iter()
            .map(|&t| {
                let mut c = u0.clone();
                self.lattice.propagate_spectral(&mut c, t / eps);
                c
            })
            .collect()
    }

    fn apply(&self, u0: &SpectralField, current: &[SpectralField]) -> Vec<SpectralField> {
        let SolveConfig { lambda, sigma, eps, .. } = *self.cfg;
        let exec = u0.grid().execution();
        // g_j = S(−t_j) N(u(t_j))
        let indexed: Vec<(f64, &SpectralField)> = self.times.iter().copied().zip(current).collect();
        let pulled: Vec<SpectralField> = exec.map(&indexed, |(t, c)| {
            let mut u = c.inverse_transform();
            u.values_mut().iter_mut().for_each(|z| {
                let m2 = z.norm_sqr();
                let w = if sigma == 1.0 { m2 } else { m2.powf(sigma) };
                *z *= w;
            });
            let mut g = u.transform();
            self.lattice.propagate_spectral(&mut g, -t / eps);
            g
        });
        let factor = Complex64::new(0.0, -lambda / eps);
        let mut integral = SpectralField::zeros(u0.grid());
        let mut out = Vec::with_capacity(self.times.len());
        for j in 0..self.times.len() {
            if j > 0 {
                let half = 0.5 * (self.times[j] - self.times[j - 1]);
                let (prev, next) = (pulled[j - 1].coeffs(), pulled[j].coeffs());
                for (k, acc) in integral.coeffs_mut().iter_mut().enumerate() {
                    *acc += (prev[k] + next[k]) * half;
                }
            }
            let mut c = u0.clone();
            for (z, i) in c.coeffs_mut().iter_mut().zip(integral.coeffs()) {
                *z += factor * i;
            }
            self.lattice.propagate_spectral(&mut c, self.times[j] / eps);
            out.push(c);
        }
        out
    }
}

fn distance(a: &[SpectralField], b: &[SpectralField], s: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (x, y) in a.iter().zip(b) {
        let diff: Vec<Complex64> = x.coeffs().iter().zip(y.coeffs()).map(|(p, q)| p - q).collect();
        let d = SpectralField::from_coeffs(x.grid(), diff)?.sobolev_norm(s, false)?;
        worst = worst.max(d);
    }
    Ok(worst)
}

fn solve_on_mesh(
    u0: &SpectralField,
    lattice: &SymbolLattice,
    cfg: &SolveConfig,
    opts: &PicardOptions,
    intervals: usize,
) -> Result<(SpectralField, PicardReport)> {
    let times: Vec<f64> = (0..=intervals).map(|j| cfg.final_time * j as f64 / intervals as f64).collect();
    let mesh = Mesh { lattice, cfg, times };
    let mut current = mesh.free(u0);
    let mut distances = Vec::new();
    let mut ratios = Vec::new();
    for iteration in 1..=opts.max_iter {
        let next = mesh.apply(u0, &current);
        let d = distance(&next, &current, opts.sobolev_index)?;
        if let Some(&prev) = distances.last() {
            ratios.push(if prev > 0.0 { d / prev } else { 0.0 });
        }
        distances.push(d);
        current = next;
        let diverging = !d.is_finite() || (distances.len() > 3 && d > 1e3 * distances[0]);
        if diverging {
            return Err(Error::NoContraction { iterations: iteration, ratios });
        }
        if d < 0.01 * opts.tol {
            let report = PicardReport { iterations: iteration, distances, ratios, intervals, mesh_change: 0.0 };
            return Ok((current.pop().expect("mesh has at least two nodes"), report));
        }
    }
    Err(Error::NoContraction { iterations: opts.max_iter, ratios })
}

/// Solve up to `cfg.final_time` by Picard iteration from `u^{(0)} = S(·)u₀`.
pub fn picard_solve(u0: &Field, cfg: &SolveConfig, opts: &PicardOptions) -> Result<(Field, PicardReport)> {
    cfg.validate()?;
    if opts.intervals == 0 || opts.max_intervals < opts.intervals || !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("invalid Picard options {opts:?}")));
    }
    let lattice = SymbolLattice::new(&cfg.symbol, u0.grid())?;
    let c0 = u0.transform();
    let (mut best, mut report) = solve_on_mesh(&c0, &lattice, cfg, opts, opts.intervals)?;
    let mut intervals = opts.intervals;
    loop {
        if intervals * 2 > opts.max_intervals {
            return Err(Error::Resolution(format!(
                "Duhamel quadrature still moving by {:e} at {intervals} intervals",
                report.mesh_change
            )));
        }
        intervals *= 2;
        let (finer, mut finer_report) = solve_on_mesh(&c0, &lattice, cfg, opts, intervals)?;
        let change = distance(std::slice::from_ref(&finer), std::slice::from_ref(&best), opts.sobolev_index)?;
        finer_report.mesh_change = change;
        best = finer;
        report = finer_report;
        if change < 0.1 * opts.tol {
            return Ok((best.inverse_transform(), report));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::evolve;
    use crate::spectral::{free_propagate, Grid};
    use crate::symbol::Symbol;

    fn gaussian(grid: &Grid, amp: f64) -> Field {
        Field::from_fn(grid, |x| Complex64::new(amp * (-x[0] * x[0]).exp(), 0.0))
    }

    #[test]
    fn linear_case_converges_immediately() {
        let g = Grid::new(1, 64, 8.0).unwrap();
        let u = gaussian(&g, 1.0);
        let lap = Symbol::parse("laplacian").unwrap();
        let cfg = SolveConfig::new(lap.clone(), 0.0, 1.0, 1e-3, 0.3);
        let (out, report) = picard_solve(&u, &cfg, &PicardOptions::default()).unwrap();
        assert_eq!(report.iterations, 1);
        let exact = free_propagate(&u, &lap, 0.3).unwrap();
        assert!(out.sub(&exact).unwrap().max_abs() < 1e-13);
    }

    #[test]
    fn agrees_with_split_step() {
        let g = Grid::new(1, 128, 8.0).unwrap();
        let u = gaussian(&g, 0.5);
        let cfg = SolveConfig::new(Symbol::parse("laplacian").unwrap(), 1.0, 1.0, 1e-4, 0.1);
        let (picard, report) = picard_solve(&u, &cfg, &PicardOptions::default()).unwrap();
        let strang = evolve(&u, &cfg.clone().with_snapshot_every(1000)).unwrap();
        let err = crate::spectral::sobolev_norm(&picard.sub(strang.final_field()).unwrap(), 0.0, false).unwrap();
        assert!(err < 1e-6, "L2 gap {err:e}, report {report:?}");
    }

    #[test]
    fn larger_data_contracts_more_slowly() {
        let g = Grid::new(1, 64, 8.0).unwrap();
        let cfg = SolveConfig::new(Symbol::parse("laplacian").unwrap(), 1.0, 1.0, 1e-3, 0.1);
        let opts = PicardOptions { tol: 1e-8, intervals: 32, max_intervals: 1 << 12, ..PicardOptions::default() };
        let (_, small) = picard_solve(&gaussian(&g, 0.5), &cfg, &opts).unwrap();
        let (_, large) = picard_solve(&gaussian(&g, 1.0), &cfg, &opts).unwrap();
        assert!(large.ratios[0] > small.ratios[0], "{:?} vs {:?}", large.ratios, small.ratios);
    }

    #[test]
    fn divergence_is_reported() {
        let g = Grid::new(1, 32, 4.0).unwrap();
        let cfg = SolveConfig::new(Symbol::parse("laplacian").unwrap(), 5.0, 1.0, 1e-3, 3.0);
        let opts = PicardOptions { max_iter: 20, intervals: 16, ..PicardOptions::default() };
        match picard_solve(&gaussian(&g, 3.0), &cfg, &opts) {
            Err(Error::NoContraction { ratios, .. }) => assert!(!ratios.is_empty()),
            other => panic!("expected NoContraction, got {:?}", other.map(|r| r.1)),
        }
    }
}
