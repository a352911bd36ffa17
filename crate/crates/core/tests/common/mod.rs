#![allow(dead_code)]

use modisp::spectral::{Field, Grid};
use modisp::symbol::Symbol;
use modisp::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn sym(text: &str) -> Symbol {
    Symbol::parse(text).unwrap()
}

/// One instance of every catalog entry usable in dimension `d`.
pub fn catalog(d: usize) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = [
        "laplacian",
        "fourth_order",
        "power_m(m=3, mu=0.5)",
        "constant(c=2)",
        "arctan_step(h=1)",
        "regularized_laplacian",
        "wave",
    ]
    .iter()
    .map(|s| sym(s))
    .collect();
    if d == 1 {
        out.push(sym("odd_power_1d(j=1)"));
        out.push(sym("transport(c=1.5)"));
        out.push(sym("directional_m(m=2, c=1)"));
    } else {
        out.push(sym("transport(c1=1, c2=-0.5)"));
        out.push(sym("directional_m(m=2, c1=1, c2=0.5)"));
    }
    out
}

pub fn gaussian(grid: &Grid, amp: f64) -> Field {
    Field::from_fn(grid, |x| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        Complex64::new(amp * (-r2).exp(), 0.0)
    })
}

/// Sum of a few random modulated Gaussians.
pub fn random_smooth(grid: &Grid, seed: u64) -> Field {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bumps: Vec<([f64; 2], [f64; 2], Complex64)> = (0..4)
        .map(|_| {
            (
                [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)],
                [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
        })
        .collect();
    Field::from_fn(grid, |x| {
        bumps
            .iter()
            .map(|(centre, freq, amp)| {
                let mut r2 = 0.0;
                let mut phase = 0.0;
                for (k, xk) in x.iter().enumerate() {
                    r2 += (xk - centre[k]).powi(2);
                    phase += freq[k] * xk;
                }
                amp * Complex64::from_polar((-r2).exp(), phase)
            })
            .sum()
    })
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
