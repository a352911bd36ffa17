//! Catalog of real-valued Fourier multipliers `P(ξ)`.
//!
//! Each symbol carries its class: homogeneous of some degree `m ≥ 1`
//! (`P(μξ) = μ^m P(ξ)` for `μ > 0`) or bounded by an explicit constant.
//! A symbol may also be rescaled as `ξ ↦ a · P(b ξ)`, which is how the
//! semiclassical experiments evaluate `h^{2σ(d/2−s)} P(ξ/h)` directly on a
//! frequency lattice.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Catalog keys accepted by [`Symbol::make`].
pub const CATALOG: [&str; 10] = [
    "laplacian",
    "fourth_order",
    "power_m",
    "odd_power_1d",
    "transport",
    "constant",
    "arctan_step",
    "regularized_laplacian",
    "wave",
    "directional_m",
];

#[derive(Debug, Clone, PartialEq)]
pub enum SymbolKind {
    /// `−|ξ|²`
    Laplacian,
    /// `|ξ|⁴`
    FourthOrder,
    /// `μ |ξ|^m`
    PowerM { mu: f64, m: f64 },
    /// `ξ₁^{2j+1}`, one space dimension.
    OddPower1d { j: u32 },
    /// `c · ξ`
    Transport { c: Vec<f64> },
    /// `c`
    Constant { c: f64 },
    /// `−(1/h) arctan(h |ξ|²)`
    ArctanStep { h: f64 },
    /// `−|ξ|² / (1 + |ξ|²)`, the symbol of `Δ(1 − Δ)⁻¹`.
    RegularizedLaplacian,
    /// `|ξ|`
    Wave,
    /// `|ξ|^{m−1} (c · ξ)`
    DirectionalM { m: f64, c: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolClass {
    Homogeneous { degree: f64 },
    Bounded { bound: f64 },
}

impl SymbolClass {
    pub fn is_bounded(&self) -> bool {
        matches!(self, SymbolClass::Bounded { .. })
    }
}

/// A Fourier multiplier `ξ ↦ amplitude · P(dilation · ξ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    kind: SymbolKind,
    amplitude: f64,
    dilation: f64,
}

fn norm_sq(xi: &[f64]) -> f64 {
    xi.iter().map(|x| x * x).sum()
}

fn dot(c: &[f64], xi: &[f64]) -> f64 {
    c.iter().zip(xi).map(|(a, b)| a * b).sum()
}

impl SymbolKind {
    fn eval(&self, xi: &[f64]) -> f64 {
        match self {
            SymbolKind::Laplacian => -norm_sq(xi),
            SymbolKind::FourthOrder => {
                let r2 = norm_sq(xi);
                r2 * r2
            }
            SymbolKind::PowerM { mu, m } => mu * norm_sq(xi).powf(0.5 * m),
            SymbolKind::OddPower1d { j } => xi[0].powi(2 * *j as i32 + 1),
            SymbolKind::Transport { c } => dot(c, xi),
            SymbolKind::Constant { c } => *c,
            SymbolKind::ArctanStep { h } => -(h * norm_sq(xi)).atan() / h,
            SymbolKind::RegularizedLaplacian => {
                let r2 = norm_sq(xi);
                -r2 / (1.0 + r2)
            }
            SymbolKind::Wave => norm_sq(xi).sqrt(),
            SymbolKind::DirectionalM { m, c } => {
                let r = norm_sq(xi).sqrt();
                let radial = if *m == 1.0 { 1.0 } else { r.powf(m - 1.0) };
                radial * dot(c, xi)
            }
        }
    }

    fn class(&self) -> SymbolClass {
        match self {
            SymbolKind::Laplacian => SymbolClass::Homogeneous { degree: 2.0 },
            SymbolKind::FourthOrder => SymbolClass::Homogeneous { degree: 4.0 },
            SymbolKind::PowerM { m, .. } => SymbolClass::Homogeneous { degree: *m },
            SymbolKind::OddPower1d { j } => SymbolClass::Homogeneous { degree: (2 * j + 1) as f64 },
            SymbolKind::Transport { .. } | SymbolKind::Wave => SymbolClass::Homogeneous { degree: 1.0 },
            SymbolKind::DirectionalM { m, .. } => SymbolClass::Homogeneous { degree: *m },
            SymbolKind::Constant { c } => SymbolClass::Bounded { bound: c.abs() },
            SymbolKind::ArctanStep { h } => SymbolClass::Bounded { bound: FRAC_PI_2 / h },
            SymbolKind::RegularizedLaplacian => SymbolClass::Bounded { bound: 1.0 },
        }
    }

    fn key(&self) -> &'static str {
        match self {
            SymbolKind::Laplacian => "laplacian",
            SymbolKind::FourthOrder => "fourth_order",
            SymbolKind::PowerM { .. } => "power_m",
            SymbolKind::OddPower1d { .. } => "odd_power_1d",
            SymbolKind::Transport { .. } => "transport",
            SymbolKind::Constant { .. } => "constant",
            SymbolKind::ArctanStep { .. } => "arctan_step",
            SymbolKind::RegularizedLaplacian => "regularized_laplacian",
            SymbolKind::Wave => "wave",
            SymbolKind::DirectionalM { .. } => "directional_m",
        }
    }
}

struct Params<'a> {
    key: &'a str,
    items: Vec<(String, f64)>,
}

impl Params<'_> {
    fn take(&mut self, name: &str) -> Option<f64> {
        let pos = self.items.iter().position(|(k, _)| k == name)?;
        Some(self.items.remove(pos).1)
    }

    fn require(&mut self, name: &str) -> Result<f64> {
        self.take(name)
            .ok_or_else(|| Error::Symbol(format!("{} requires parameter `{name}`", self.key)))
    }

    fn vector(&mut self) -> Result<Vec<f64>> {
        if let Some(c) = self.take("c") {
            return Ok(vec![c]);
        }
        let c1 = self.require("c1")?;
        Ok(match self.take("c2") {
            Some(c2) => vec![c1, c2],
            None => vec![c1],
        })
    }

    fn degree(&mut self) -> Result<f64> {
        let m = self.require("m")?;
        if !(m >= 1.0) || !m.is_finite() {
            return Err(Error::Symbol(format!("{}: degree m = {m} must satisfy m >= 1", self.key)));
        }
        Ok(m)
    }

    fn finish(self) -> Result<()> {
        match self.items.first() {
            None => Ok(()),
            Some((k, _)) => Err(Error::Symbol(format!("{}: unknown parameter `{k}`", self.key))),
        }
    }
}

impl Symbol {
    pub fn new(kind: SymbolKind) -> Self {
        Symbol { kind, amplitude: 1.0, dilation: 1.0 }
    }

    /// Build a catalog symbol from its key and named parameters.
    pub fn make(key: &str, params: &[(String, f64)]) -> Result<Symbol> {
        if let Some((k, v)) = params.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Symbol(format!("{key}: parameter `{k}` = {v} is not finite")));
        }
        let mut p = Params { key, items: params.to_vec() };
        let kind = match key {
            "laplacian" => SymbolKind::Laplacian,
            "fourth_order" => SymbolKind::FourthOrder,
            "regularized_laplacian" => SymbolKind::RegularizedLaplacian,
            "wave" => SymbolKind::Wave,
            "power_m" => {
                let m = p.degree()?;
                let mu = p.take("mu").unwrap_or(1.0);
                SymbolKind::PowerM { mu, m }
            }
            "odd_power_1d" => {
                let j = p.require("j")?;
                if j < 0.0 || j.fract() != 0.0 {
                    return Err(Error::Symbol(format!("odd_power_1d: j = {j} must be a nonnegative integer")));
                }
                SymbolKind::OddPower1d { j: j as u32 }
            }
            "transport" => SymbolKind::Transport { c: p.vector()? },
            "constant" => SymbolKind::Constant { c: p.require("c")? },
            "arctan_step" => {
                let h = p.require("h")?;
                if !(h > 0.0) {
                    return Err(Error::Symbol(format!("arctan_step: step h = {h} must be positive")));
                }
                SymbolKind::ArctanStep { h }
            }
            "directional_m" => {
                let m = p.degree()?;
                SymbolKind::DirectionalM { m, c: p.vector()? }
            }
            other => {
                return Err(Error::Symbol(format!(
                    "unknown symbol `{other}`; expected one of {}",
                    CATALOG.join(", ")
                )))
            }
        };
        p.finish()?;
        Ok(Symbol::new(kind))
    }

    /// Parse the config syntax `key(name=value, ...)` or a bare `key`.
    pub fn parse(text: &str) -> Result<Symbol> {
        let text = text.trim();
        let (key, inner) = match text.find('(') {
            Some(open) => {
                let inner = text[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Symbol(format!("unbalanced parentheses in `{text}`")))?;
                (text[..open].trim(), inner)
            }
            None => (text, ""),
        };
        let mut params = Vec::new();
        for item in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Symbol(format!("expected name=value, got `{item}`")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Symbol(format!("parameter `{}` is not a number: `{}`", k.trim(), v.trim())))?;
            params.push((k.trim().to_string(), v));
        }
        Symbol::make(key, &params)
    }

    /// `ξ ↦ amplitude · P(dilation · ξ)`.
    pub fn rescaled(&self, amplitude: f64, dilation: f64) -> Symbol {
        Symbol {
            kind: self.kind.clone(),
            amplitude: self.amplitude * amplitude,
            dilation: self.dilation * dilation,
        }
    }

    pub fn kind(&self) -> &SymbolKind {
        &self.kind
    }

    pub fn key(&self) -> &'static str {
        self.kind.key()
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn dilation(&self) -> f64 {
        self.dilation
    }

    pub fn class(&self) -> SymbolClass {
        match self.kind.class() {
            SymbolClass::Bounded { bound } => SymbolClass::Bounded { bound: bound * self.amplitude.abs() },
            SymbolClass::Homogeneous { .. } if self.amplitude == 0.0 => SymbolClass::Bounded { bound: 0.0 },
            homogeneous => homogeneous,
        }
    }

    /// The dimension the symbol's parameters pin down, if any.
    pub fn native_dim(&self) -> Option<usize> {
        match &self.kind {
            SymbolKind::OddPower1d { .. } => Some(1),
            SymbolKind::Transport { c } | SymbolKind::DirectionalM { c, .. } => Some(c.len()),
            _ => None,
        }
    }

    /// Evaluate at `ξ ∈ R^d`. Real-valued by construction.
    pub fn eval(&self, xi: &[f64]) -> f64 {
        if self.dilation == 1.0 {
            return self.amplitude * self.kind.eval(xi);
        }
        let mut scaled = [0.0; 2];
        let scaled = &mut scaled[..xi.len().min(2)];
        for (s, x) in scaled.iter_mut().zip(xi) {
            *s = self.dilation * x;
        }
        self.amplitude * self.kind.eval(scaled)
    }

    pub fn is_zero(&self) -> bool {
        self.amplitude == 0.0 || matches!(self.kind, SymbolKind::Constant { c } if c == 0.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vector = |c: &[f64]| -> String {
            if c.len() == 1 {
                format!("c={}", c[0])
            } else {
                c.iter().enumerate().map(|(i, v)| format!("c{}={v}", i + 1)).collect::<Vec<_>>().join(",")
            }
        };
        let base = match &self.kind {
            SymbolKind::PowerM { mu, m } => format!("power_m(m={m},mu={mu})"),
            SymbolKind::OddPower1d { j } => format!("odd_power_1d(j={j})"),
            SymbolKind::Transport { c } => format!("transport({})", vector(c)),
            SymbolKind::Constant { c } => format!("constant(c={c})"),
            SymbolKind::ArctanStep { h } => format!("arctan_step(h={h})"),
            SymbolKind::DirectionalM { m, c } => format!("directional_m(m={m},{})", vector(c)),
            other => other.key().to_string(),
        };
        if self.amplitude == 1.0 && self.dilation == 1.0 {
            f.write_str(&base)
        } else {
            write!(f, "{:e}*{base}[{:e}*xi]", self.amplitude, self.dilation)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneityReport {
    pub degree: f64,
    pub max_relative_deviation: f64,
    pub passed: bool,
}

/// Relative tolerance for declaring `P(μξ) = μ^m P(ξ)`.
pub const HOMOGENEITY_TOL: f64 = 1e-10;

/// Sample `P(μξ)` against `μ^m P(ξ)` for `μ ∈ {0.5, 2, 3}` and one random
/// dilation per trial, on random `ξ`.
pub fn verify_homogeneity(symbol: &Symbol, degree: f64, trials: usize, seed: u64) -> HomogeneityReport {
    let dim = symbol.native_dim().unwrap_or(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let xi: Vec<f64> = (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let base = symbol.eval(&xi);
        let random_mu = rng.gen_range(0.1..10.0);
        for mu in [0.5, 2.0, 3.0, random_mu] {
            let scaled: Vec<f64> = xi.iter().map(|x| mu * x).collect();
            let lhs = symbol.eval(&scaled);
            let rhs = mu.powf(degree) * base;
            let scale = lhs.abs().max(rhs.abs());
            if scale > 0.0 {
                worst = worst.max((lhs - rhs).abs() / scale);
            }
        }
    }
    HomogeneityReport { degree, max_relative_deviation: worst, passed: worst <= HOMOGENEITY_TOL }
}
