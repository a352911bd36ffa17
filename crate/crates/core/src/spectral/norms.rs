use super::field::{Field, SpectralField};
use crate::error::{Error, Result};

/// Admissible truncation tail: relative `L²` mass allowed outside `|x| ≤ L/2`
/// and in the top frequency octave.
pub const TAIL_TOL: f64 = 1e-8;

impl SpectralField {
    /// `(Σ_k w(ξ_k) |c_k|²)^{1/2}` with `w = (1+|ξ|²)^s`, or `|ξ|^{2s}` when
    /// `homogeneous`.
    pub fn sobolev_norm(&self, s: f64, homogeneous: bool) -> Result<f64> {
        if !s.is_finite() {
            return Err(Error::InvalidArgument(format!("Sobolev index s = {s} must be finite")));
        }
        let grid = self.grid();
        if homogeneous && s < 0.0 {
            let zero = self.coeffs()[0].norm();
            if zero > 1e-14 * self.l2_norm() {
                return Err(Error::InvalidArgument(format!(
                    "homogeneous norm with s = {s} < 0 needs a vanishing zero mode, got |c_0| = {zero:e}"
                )));
            }
        }
        let d = grid.dim();
        let sum = grid.execution().sum(self.coeffs(), |i, c| {
            let xi = grid.frequency(i);
            let r2: f64 = xi[..d].iter().map(|x| x * x).sum();
            let w = if homogeneous {
                if r2 == 0.0 {
                    if s == 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    r2.powf(s)
                }
            } else if s == 0.0 {
                1.0
            } else {
                (1.0 + r2).powf(s)
            };
            w * c.norm_sqr()
        });
        Ok(sum.sqrt())
    }
}

/// `H^s` (or `Ḣ^s`) norm of a physical field.
pub fn sobolev_norm(f: &Field, s: f64, homogeneous: bool) -> Result<f64> {
    f.transform().sobolev_norm(s, homogeneous)
}

/// Quadrature `L^q` norm; `q = ∞` gives the max modulus.
pub fn lebesgue_norm(f: &Field, q: f64) -> Result<f64> {
    if !(q >= 1.0) {
        return Err(Error::InvalidArgument(format!("Lebesgue exponent q = {q} must be >= 1")));
    }
    let peak = f.max_abs();
    if q.is_infinite() || peak == 0.0 {
        return Ok(peak);
    }
    let grid = f.grid();
    let sum = grid.execution().sum(f.values(), |_, z| (z.norm() / peak).powf(q));
    Ok(peak * (sum * grid.cell_volume()).powf(1.0 / q))
}

/// `‖u‖_{L^p(I; L^q)}` by composite trapezoid quadrature in time of
/// `t ↦ ‖u(t)‖_{L^q}^p` over the snapshot times.
pub fn spacetime_norm(snapshots: &[(f64, Field)], p: f64, q: f64) -> Result<f64> {
    if snapshots.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "space-time norm needs at least 2 snapshots, got {}",
            snapshots.len()
        )));
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidArgument(format!("time exponent p = {p} must lie in [1, inf)")));
    }
    if snapshots.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::InvalidArgument("snapshot times must be strictly increasing".into()));
    }
    let values = snapshots
        .iter()
        .map(|(_, f)| lebesgue_norm(f, q).map(|v| v.powf(p)))
        .collect::<Result<Vec<f64>>>()?;
    let times: Vec<f64> = snapshots.iter().map(|(t, _)| *t).collect();
    Ok(trapezoid(&times, &values).powf(1.0 / p))
}

/// Composite trapezoid rule on the (not necessarily uniform) nodes `times`.
pub(crate) fn trapezoid(times: &[f64], values: &[f64]) -> f64 {
    debug_assert_eq!(times.len(), values.len());
    times.windows(2).zip(values.windows(2)).map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1])).sum()
}

/// Fraction of `Σ|c_k|²` carried by the top frequency octave
/// (some wavenumber component with `|k| ≥ n/4`).
pub fn spectral_tail_fraction(c: &SpectralField) -> f64 {
    let grid = c.grid();
    let cut = (grid.n() / 4) as i64;
    let exec = grid.execution();
    let total = exec.sum(c.coeffs(), |_, z| z.norm_sqr());
    if total == 0.0 {
        return 0.0;
    }
    let tail = exec.sum(c.coeffs(), |i, z| {
        let k = grid.wavenumbers(i);
        if k[0].abs() >= cut || k[1].abs() >= cut {
            z.norm_sqr()
        } else {
            0.0
        }
    });
    tail / total
}

/// Fraction of the quadrature `L²` mass outside the ball `|x| ≤ L/2`.
pub fn spatial_tail_fraction(f: &Field) -> f64 {
    let grid = f.grid();
    let d = grid.dim();
    let radius2 = (0.5 * grid.half_length()).powi(2);
    let exec = grid.execution();
    let total = exec.sum(f.values(), |_, z| z.norm_sqr());
    if total == 0.0 {
        return 0.0;
    }
    let tail = exec.sum(f.values(), |i, z| {
        let x = grid.node(i);
        let r2: f64 = x[..d].iter().map(|v| v * v).sum();
        if r2 > radius2 {
            z.norm_sqr()
        } else {
            0.0
        }
    });
    tail / total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn gaussian(grid: &Grid) -> Field {
        Field::from_fn(grid, |x| Complex64::new((-x.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0))
    }

    #[test]
    fn zero_field_norms() {
        let g = Grid::new(1, 16, 1.0).unwrap();
        let z = Field::zeros(&g);
        assert_eq!(sobolev_norm(&z, 1.0, false).unwrap(), 0.0);
        assert_eq!(lebesgue_norm(&z, 4.0).unwrap(), 0.0);
    }

    #[test]
    fn unit_mode_h1() {
        let g = Grid::new(2, 16, PI).unwrap();
        // e^{i x₁} scaled to unit quadrature L² norm
        let amp = 1.0 / (2.0 * PI);
        let f = Field::from_fn(&g, |x| Complex64::from_polar(amp, x[0]));
        assert!((sobolev_norm(&f, 0.0, false).unwrap() - 1.0).abs() < 1e-13);
        assert!((sobolev_norm(&f, 1.0, false).unwrap() - 2f64.sqrt()).abs() < 1e-13);
        assert!((sobolev_norm(&f, 1.0, true).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn gaussian_norms_match_closed_forms() {
        let g = Grid::new(1, 256, 8.0).unwrap();
        let f = gaussian(&g);
        // ∫ e^{−2x²} = √(π/2),  ∫ e^{−4x²} = √π / 2
        let l2 = (PI / 2.0).powf(0.25);
        let l4 = (PI.sqrt() / 2.0).powf(0.25);
        assert!((sobolev_norm(&f, 0.0, false).unwrap() - l2).abs() < 1e-12);
        assert!((l2 - 1.11951).abs() < 1e-5);
        assert!((lebesgue_norm(&f, 4.0).unwrap() - l4).abs() < 1e-12);
        assert!((l4 - 0.970_255_772_349_082_6).abs() < 1e-15);
        assert!((lebesgue_norm(&f, 2.0).unwrap() - sobolev_norm(&f, 0.0, false).unwrap()).abs() < 1e-12);
        assert_eq!(lebesgue_norm(&f, f64::INFINITY).unwrap(), 1.0);
    }

    #[test]
    fn constant_field_lq() {
        for d in [1, 2] {
            let g = Grid::new(d, 16, 1.5).unwrap();
            let f = Field::from_fn(&g, |_| Complex64::new(1.0, 0.0));
            for q in [1.0, 2.0, 3.0, 7.5] {
                let expect = 3f64.powf(d as f64 / q);
                assert!((lebesgue_norm(&f, q).unwrap() - expect).abs() < 1e-12 * expect);
            }
        }
    }

    #[test]
    fn errors() {
        let g = Grid::new(1, 16, 1.0).unwrap();
        let f = Field::from_fn(&g, |_| Complex64::new(1.0, 0.0));
        assert!(lebesgue_norm(&f, 0.5).is_err());
        assert!(sobolev_norm(&f, -1.0, true).is_err());
        assert!(sobolev_norm(&f, -1.0, false).is_ok());
        assert!(spacetime_norm(&[(0.0, f.clone())], 2.0, 2.0).is_err());
        assert!(spacetime_norm(&[(0.0, f.clone()), (0.0, f.clone())], 2.0, 2.0).is_err());
        assert!(spacetime_norm(&[(0.0, f.clone()), (1.0, f)], f64::INFINITY, 2.0).is_err());
    }

    #[test]
    fn spacetime_constant_and_two_point() {
        let g = Grid::new(1, 128, 8.0).unwrap();
        let f = gaussian(&g);
        let snaps: Vec<(f64, Field)> = (0..=10).map(|i| (0.3 * i as f64, f.clone())).collect();
        let lq = lebesgue_norm(&f, 4.0).unwrap();
        let st = spacetime_norm(&snaps, 8.0, 4.0).unwrap();
        assert!((st - 3f64.powf(1.0 / 8.0) * lq).abs() < 1e-12);

        let mut g2 = f.clone();
        g2.scale(Complex64::new(2.0, 0.0));
        let two = spacetime_norm(&[(0.0, f), (0.5, g2)], 1.0, 4.0).unwrap();
        assert!((two - 0.5 * 0.5 * (lq + 2.0 * lq)).abs() < 1e-12);
    }

    #[test]
    fn tails_of_centred_gaussian_are_small() {
        let g = Grid::new(2, 64, 8.0).unwrap();
        let f = gaussian(&g);
        assert!(spatial_tail_fraction(&f) < TAIL_TOL);
        assert!(spectral_tail_fraction(&f.transform()) < TAIL_TOL);
        let wide = Field::from_fn(&g, |x| Complex64::new((-0.05 * x[0] * x[0]).exp(), 0.0));
        assert!(spatial_tail_fraction(&wide) > TAIL_TOL);
    }
}
