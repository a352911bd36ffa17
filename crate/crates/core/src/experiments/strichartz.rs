use num_complex::Complex64;

use super::report::{fit_power_law, Cell, ExperimentKind, ExperimentReport, Verdict};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::spectral::norms::trapezoid;
use crate::spectral::{lebesgue_norm, Field, Grid, SymbolLattice};
use crate::symbol::Symbol;

/// Tolerance on `2/p = d(1/2 − 1/q)`.
const ADMISSIBILITY_TOL: f64 = 1e-12;
/// Slack allowed below `d/2 − d/q` for bounded symbols.
pub const STRICHARTZ_SLACK: f64 = 0.1;
/// Frequency band `|ξ − N e₁| ≤ BAND·N` sampled for the group velocity.
const BAND: f64 = 7.0;
/// The grid must resolve `|ξ| ≤ RESOLVE·N`.
const RESOLVE: f64 = 15.0;
/// Initial bump half-width in units of `1/N`.
const BUMP_WIDTH: f64 = 5.0;

/// `p, q ≥ 2`, `(p, q) ≠ (2, ∞)` and `2/p = d(1/2 − 1/q)`.
pub fn admissible_pair(p: f64, q: f64, d: usize) -> bool {
    if !(p >= 2.0 && q >= 2.0) || (p == 2.0 && q.is_infinite()) {
        return false;
    }
    let lhs = if p.is_infinite() { 0.0 } else { 2.0 / p };
    let rhs = d as f64 * (0.5 - if q.is_infinite() { 0.0 } else { 1.0 / q });
    (lhs - rhs).abs() < ADMISSIBILITY_TOL
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrichartzParams {
    pub d: usize,
    pub p: f64,
    pub q: f64,
    /// Regularity indices at which `‖u₀^N‖_{H^k}` is reported.
    pub k_grid: Vec<f64>,
    /// Increasing dyadic frequencies.
    pub n_list: Vec<usize>,
    /// Time interval `[a, b]`, `0 ≤ a < b`.
    pub interval: (f64, f64),
    /// Ceiling on the total node count `n^d` of the auto-selected grid.
    pub n_max: usize,
    /// Ratio of consecutive time offsets in the geometric time mesh.
    pub time_ratio: f64,
    /// Run the laplacian contrast alongside the probed symbol.
    pub contrast: bool,
    pub execution: Execution,
}

impl Default for StrichartzParams {
    fn default() -> Self {
        StrichartzParams {
            d: 1,
            p: 8.0,
            q: 4.0,
            k_grid: vec![0.0, 0.25, 0.5],
            n_list: vec![8, 16, 32, 64],
            interval: (0.0, 1.0),
            n_max: 1 << 22,
            time_ratio: 1.05,
            contrast: true,
            execution: Execution::default(),
        }
    }
}

impl StrichartzParams {
    pub fn validate(&self) -> Result<()> {
        if !(1..=2).contains(&self.d) {
            return Err(Error::InvalidArgument(format!("dimension d = {} must be 1 or 2", self.d)));
        }
        if !admissible_pair(self.p, self.q, self.d) {
            return Err(Error::hypothesis(
                format!("(p, q) = ({}, {}) is not admissible in d = {}", self.p, self.q, self.d),
                "(p, q) admissible: p, q >= 2, (p, q) != (2, inf), 2/p = d(1/2 - 1/q)",
            ));
        }
        if self.n_list.len() < 2 {
            return Err(Error::InvalidArgument("N list needs at least two entries".into()));
        }
        let dyadic = self.n_list.iter().all(|n| n.is_power_of_two())
            && self.n_list.windows(2).all(|w| w[1] == 2 * w[0]);
        if !dyadic {
            return Err(Error::InvalidArgument(format!("N list {:?} must be increasing dyadic", self.n_list)));
        }
        let (a, b) = self.interval;
        if !(a >= 0.0 && b > a && b.is_finite()) {
            return Err(Error::InvalidArgument(format!("interval [{a}, {b}] must satisfy 0 <= a < b")));
        }
        if !(self.time_ratio > 1.0) {
            return Err(Error::InvalidArgument(format!("time ratio {} must exceed 1", self.time_ratio)));
        }
        if self.k_grid.iter().any(|k| !k.is_finite()) {
            return Err(Error::InvalidArgument("k grid entries must be finite".into()));
        }
        Ok(())
    }

    /// `d/2 − d/q`, the loss forced on bounded symbols.
    pub fn critical_loss(&self) -> f64 {
        let d = self.d as f64;
        0.5 * d - if self.q.is_infinite() { 0.0 } else { d / self.q }
    }
}

/// Largest `|∇P|` over the band `|ξ − N e₁| ≤ 7N`, by central differences
/// on a sample lattice.
fn max_group_velocity(symbol: &Symbol, d: usize, freq: f64) -> f64 {
    let radius = BAND * freq;
    let samples = if d == 1 { 4001 } else { 201 };
    let coord = |j: usize| -radius + 2.0 * radius * j as f64 / (samples - 1) as f64;
    let speed = |xi: &[f64]| -> f64 {
        let mut g2 = 0.0;
        for axis in 0..d {
            let step = 1e-5 * (1.0 + xi[axis].abs());
            let mut plus = xi.to_vec();
            let mut minus = xi.to_vec();
            plus[axis] += step;
            minus[axis] -= step;
            let g = (symbol.eval(&plus) - symbol.eval(&minus)) / (2.0 * step);
            g2 += g * g;
        }
        g2.sqrt()
    };
    let mut vmax: f64 = 0.0;
    if d == 1 {
        for j in 0..samples {
            vmax = vmax.max(speed(&[freq + coord(j)]));
        }
    } else {
        for j in 0..samples {
            for k in 0..samples {
                let (a, b) = (coord(j), coord(k));
                if a * a + b * b <= radius * radius {
                    vmax = vmax.max(speed(&[freq + a, b]));
                }
            }
        }
    }
    vmax
}

/// Box large enough to hold the bump over `[0, t_end]` and fine enough to
/// resolve `|ξ| ≤ 15N`.
fn probe_grid(symbol: &Symbol, params: &StrichartzParams, freq: usize) -> Result<(Grid, f64)> {
    let d = params.d;
    let nf = freq as f64;
    let vmax = max_group_velocity(symbol, d, nf);
    if !vmax.is_finite() {
        return Err(Error::Symbol(format!("group velocity of `{symbol}` is not finite near N = {freq}")));
    }
    let half_length = 2.0 * (vmax * params.interval.1 + BUMP_WIDTH / nf);
    let n = ((2.0 * half_length * RESOLVE * nf / std::f64::consts::PI).ceil() as usize).next_power_of_two().max(16);
    let total = n.checked_pow(d as u32).unwrap_or(usize::MAX);
    if total > params.n_max {
        return Err(Error::Resolution(format!(
            "N = {freq} with `{symbol}` needs n = {n} per axis ({total} nodes, L = {half_length:.4e}); \
             ceiling n_max = {}",
            params.n_max
        )));
    }
    Ok((Grid::new(d, n, half_length)?.with_execution(params.execution), vmax))
}

/// `{a} ∪ {a + t_min r^j}` up to `b`, with `t_min = 10⁻³/N²` and the last
/// node at `b`.
fn time_mesh(params: &StrichartzParams, freq: usize) -> Vec<f64> {
    let (a, b) = params.interval;
    let span = b - a;
    let mut offset = (1e-3 / (freq * freq) as f64).min(0.5 * span);
    let mut times = vec![a];
    while offset < span {
        times.push(a + offset);
        offset *= params.time_ratio;
    }
    times.push(b);
    times
}

/// `u₀^N(x) = N^{d/2} e^{−N²|x|²} e^{iN x₁}`.
pub fn modulated_bump(grid: &Grid, freq: usize) -> Field {
    let nf = freq as f64;
    let amp = nf.powf(0.5 * grid.dim() as f64);
    Field::from_fn(grid, |x| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        Complex64::from_polar(amp * (-nf * nf * r2).exp(), nf * x[0])
    })
}

struct ProbeRow {
    freq: usize,
    n: usize,
    half_length: f64,
    vmax: f64,
    times: usize,
    q_norm: f64,
    hk: Vec<f64>,
}

fn probe_one(symbol: &Symbol, params: &StrichartzParams, freq: usize) -> Result<ProbeRow> {
    let (grid, vmax) = probe_grid(symbol, params, freq)?;
    let lattice = SymbolLattice::new(symbol, &grid)?;
    let c0 = modulated_bump(&grid, freq).transform();
    let hk = params
        .k_grid
        .iter()
        .map(|&k| c0.sobolev_norm(k, false))
        .collect::<Result<Vec<f64>>>()?;
    let times = time_mesh(params, freq);
    let mut values = Vec::with_capacity(times.len());
    for &t in &times {
        let mut c = c0.clone();
        lattice.propagate_spectral(&mut c, t);
        values.push(lebesgue_norm(&c.inverse_transform(), params.q)?.powf(params.p));
    }
    let q_norm = trapezoid(&times, &values).powf(1.0 / params.p);
    Ok(ProbeRow { freq, n: grid.n(), half_length: grid.half_length(), vmax, times: times.len(), q_norm, hk })
}

fn hk_column(k: f64) -> String {
    format!("h{k}_norm")
}

/// Fit `log Q(N) = k̂ log N + c` for the free flow of `symbol` with data
/// `u₀^N`, where `Q(N) = ‖S(·)u₀^N‖_{L^p(I; L^q)}`. The laplacian contrast
/// and the `P = 0` calibration are run on the same `N` list.
pub fn run_strichartz_probe(symbol: &Symbol, params: &StrichartzParams) -> Result<ExperimentReport> {
    params.validate()?;
    if let Some(native) = symbol.native_dim() {
        if native != params.d {
            return Err(Error::InvalidArgument(format!(
                "symbol `{symbol}` lives in dimension {native}, probe runs in d = {}",
                params.d
            )));
        }
    }

    let laplacian = Symbol::make("laplacian", &[])?;
    let zero = Symbol::make("constant", &[("c".to_string(), 0.0)])?;
    let mut runs: Vec<(&str, &Symbol)> = vec![("primary", symbol)];
    if params.contrast && *symbol != laplacian {
        runs.push(("laplacian", &laplacian));
    }
    runs.push(("calibration", &zero));

    let jobs: Vec<(usize, usize)> =
        (0..runs.len()).flat_map(|r| params.n_list.iter().map(move |&f| (r, f))).collect();
    let results = params.execution.map(&jobs, |&(r, f)| probe_one(runs[r].1, params, f));

    let mut columns = vec!["run", "symbol", "N", "n", "half_length", "max_group_velocity", "time_nodes", "q_norm"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    columns.extend(params.k_grid.iter().map(|&k| hk_column(k)));
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut report = ExperimentReport::new(ExperimentKind::Strichartz, &column_refs);

    let freqs: Vec<f64> = params.n_list.iter().map(|&f| f as f64).collect();
    let mut slopes = Vec::new();
    let mut results = results.into_iter();
    for (label, sym) in &runs {
        let mut q_values = Vec::new();
        let mut hk_values: Vec<Vec<f64>> = vec![Vec::new(); params.k_grid.len()];
        for _ in &params.n_list {
            let row = results.next().expect("one result per job")?;
            q_values.push(row.q_norm);
            for (acc, v) in hk_values.iter_mut().zip(&row.hk) {
                acc.push(*v);
            }
            let mut cells: Vec<Cell> = vec![
                (*label).into(),
                sym.to_string().as_str().into(),
                row.freq.into(),
                row.n.into(),
                row.half_length.into(),
                row.vmax.into(),
                row.times.into(),
                row.q_norm.into(),
            ];
            cells.extend(row.hk.iter().map(|&v| Cell::from(v)));
            report.push_row(cells);
        }
        let fit = fit_power_law(&format!("khat_{label}"), &freqs, &q_values);
        slopes.push((*label, fit.slope));
        report.fitted.push(fit);
        if *label == "primary" {
            for (k, values) in params.k_grid.iter().zip(&hk_values) {
                report.fitted.push(fit_power_law(&format!("hk_slope_{k}"), &freqs, values));
            }
        }
    }

    let khat = slopes[0].1;
    let threshold = params.critical_loss() - STRICHARTZ_SLACK;
    if symbol.class().is_bounded() {
        report.verdict = if khat >= threshold { Verdict::Pass } else { Verdict::Fail };
        report.criterion = format!("bounded symbol: khat >= d/2 - d/q - {STRICHARTZ_SLACK} = {threshold:.6}; observed {khat:.6}");
    } else {
        report.verdict = Verdict::Inconclusive;
        report.criterion =
            format!("unbounded symbol: no loss is forced; observed khat = {khat:.6} (bounded threshold {threshold:.6})");
    }
    for (label, slope) in &slopes[1..] {
        report.notes.push(format!("khat_{label} = {slope:.6}"));
    }
    report.notes.push(format!(
        "(p, q) = ({}, {}), d = {}, I = [{}, {}], d/2 - d/q = {:.6}",
        params.p,
        params.q,
        params.d,
        params.interval.0,
        params.interval.1,
        params.critical_loss()
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(admissible_pair(8.0, 4.0, 1));
        assert!(admissible_pair(4.0, f64::INFINITY, 1));
        assert!(admissible_pair(f64::INFINITY, 2.0, 2));
        assert!(admissible_pair(4.0, 4.0, 2));
        assert!(!admissible_pair(2.0, f64::INFINITY, 2));
        assert!(!admissible_pair(4.0, 4.0, 1));
        assert!(!admissible_pair(1.0, 2.0, 1));
    }

    #[test]
    fn rejects_bad_inputs() {
        let sym = Symbol::make("regularized_laplacian", &[]).unwrap();
        let bad_pair = StrichartzParams { q: 3.0, ..Default::default() };
        assert!(matches!(run_strichartz_probe(&sym, &bad_pair), Err(Error::Hypothesis { .. })));
        let not_dyadic = StrichartzParams { n_list: vec![8, 24], ..Default::default() };
        assert!(run_strichartz_probe(&sym, &not_dyadic).is_err());
        let tiny = StrichartzParams { n_max: 64, ..Default::default() };
        assert!(matches!(run_strichartz_probe(&sym, &tiny), Err(Error::Resolution(_))));
    }

    #[test]
    fn time_mesh_shape() {
        let params = StrichartzParams::default();
        let t = time_mesh(&params, 8);
        assert_eq!(t[0], 0.0);
        assert_eq!(*t.last().unwrap(), 1.0);
        assert!(t.windows(2).all(|w| w[1] > w[0]));
        assert!((t[1] - 1e-3 / 64.0).abs() < 1e-18);
    }

    #[test]
    fn laplacian_group_velocity() {
        let lap = Symbol::make("laplacian", &[]).unwrap();
        let v = max_group_velocity(&lap, 1, 8.0);
        assert!((v - 128.0).abs() < 1e-4, "{v}");
    }

    #[test]
    fn calibration_is_pure_scaling() {
        let zero = Symbol::make("constant", &[("c".to_string(), 0.0)]).unwrap();
        let params = StrichartzParams { n_list: vec![8, 16, 32], contrast: false, ..Default::default() };
        let report = run_strichartz_probe(&zero, &params).unwrap();
        // Q(N) = |I|^{1/p} ‖u₀^N‖_{L⁴} = (√π/2)^{1/4} N^{1/4}.
        let q = report.column("q_norm");
        let expect = (std::f64::consts::PI.sqrt() / 2.0).powf(0.25);
        for (v, n) in q.iter().zip([8.0f64, 16.0, 32.0]) {
            assert!((v / n.powf(0.25) - expect).abs() < 1e-10, "{v}");
        }
        assert!((report.fit("khat_primary").unwrap().slope - 0.25).abs() < 1e-10);
        assert_eq!(report.verdict, Verdict::Pass);
    }
}
