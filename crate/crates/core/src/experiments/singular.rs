use std::f64::consts::PI;

use super::report::{Cell, ExperimentKind, ExperimentReport, Verdict};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::quadrature::integrate;

/// `χ ≡ 1` for `z = r² ≤ 1/4`.
const CHI_INNER: f64 = 0.25;
/// `χ ≡ 0` for `z = r² ≥ 9/16`.
const CHI_OUTER: f64 = 0.5625;
/// Final `I₀` increment must fall below this fraction of `I₀`.
pub const CAUCHY_FRACTION: f64 = 0.01;
/// Admissible range of consecutive `I_v` increment ratios.
pub const RATIO_RANGE: (f64, f64) = (0.5, 1.0);

fn bump(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Smooth cutoff in `z = r²` and its derivative `dχ/dz`.
fn chi_with_derivative(z: f64) -> (f64, f64) {
    if z <= CHI_INNER {
        return (1.0, 0.0);
    }
    if z >= CHI_OUTER {
        return (0.0, 0.0);
    }
    let width = CHI_OUTER - CHI_INNER;
    let s = (z - CHI_INNER) / width;
    let a = bump(1.0 - s);
    let b = bump(s);
    let da = -a / ((1.0 - s) * (1.0 - s));
    let db = b / (s * s);
    let sum = a + b;
    (a / sum, (da * b - a * db) / (sum * sum) / width)
}

/// `χ(z)`: equal to 1 on `[0, 1/4]`, 0 on `[9/16, ∞)`, smooth in between.
pub fn chi_cutoff(z: f64) -> f64 {
    chi_with_derivative(z).0
}

/// `α = 1/(4σ+2)`.
pub fn critical_alpha(sigma: f64) -> f64 {
    1.0 / (4.0 * sigma + 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSample {
    pub r: f64,
    pub u0: f64,
    /// `∂_r u₀`.
    pub du0: f64,
}

/// Radial profile `u₀(r) = δ (log 1/r)^α χ(r²)`: returns `(u₀, r ∂_r u₀)`.
fn profile(delta_amp: f64, alpha: f64, r: f64) -> (f64, f64) {
    let z = r * r;
    let (chi, dchi) = chi_with_derivative(z);
    if chi == 0.0 && dchi == 0.0 {
        return (0.0, 0.0);
    }
    let ell = -r.ln();
    let pow = ell.powf(alpha);
    let u0 = delta_amp * pow * chi;
    let r_du0 = delta_amp * (-alpha * pow / ell * chi + pow * dchi * 2.0 * z);
    (u0, r_du0)
}

/// Exact samples of `u₀` and `∂_r u₀` at radii in `(0, 1)`.
pub fn log_singular_profile(delta_amp: f64, sigma: f64, r_values: &[f64]) -> Result<Vec<RadialSample>> {
    if !(sigma > 0.0) {
        return Err(Error::hypothesis(format!("sigma = {sigma} must be positive"), "sigma > 0"));
    }
    let alpha = critical_alpha(sigma);
    r_values
        .iter()
        .map(|&r| {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::InvalidArgument(format!("radius {r} must lie in (0, 1)")));
            }
            let (u0, r_du0) = profile(delta_amp, alpha, r);
            Ok(RadialSample { r, u0, du0: r_du0 / r })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularParams {
    pub sigma: f64,
    pub lambda: f64,
    pub t: f64,
    pub delta_amp: f64,
    /// Strictly decreasing radii in `(0, 1)`.
    pub rho_list: Vec<f64>,
    pub rel_tol: f64,
    pub execution: Execution,
}

impl Default for SingularParams {
    fn default() -> Self {
        SingularParams {
            sigma: 1.0,
            lambda: 1.0,
            t: 1.0,
            delta_amp: 1.0,
            rho_list: (3..=12).map(|k| 10f64.powi(-k)).collect(),
            rel_tol: 1e-9,
            execution: Execution::default(),
        }
    }
}

impl SingularParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0) {
            return Err(Error::hypothesis(format!("sigma = {} must be positive", self.sigma), "sigma > 0"));
        }
        if !(self.t >= 0.0) || !self.t.is_finite() {
            return Err(Error::InvalidArgument(format!("time t = {} must be finite and >= 0", self.t)));
        }
        if !self.lambda.is_finite() || !self.delta_amp.is_finite() {
            return Err(Error::InvalidArgument("lambda and delta must be finite".into()));
        }
        if self.rho_list.len() < 3 {
            return Err(Error::InvalidArgument("rho list needs at least three radii".into()));
        }
        if self.rho_list.iter().any(|&r| !(r > 0.0 && r < 1.0)) || self.rho_list.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(Error::InvalidArgument(format!(
                "rho list {:?} must decrease strictly within (0, 1)",
                self.rho_list
            )));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument(format!("quadrature tolerance {} must be positive", self.rel_tol)));
        }
        Ok(())
    }
}

/// In `u = log(1/r)`: `∫_ρ^1 |f(r)|² r dr = ∫_0^{log 1/ρ} |r f(r)|² du`.
/// Returns `(|r ∂_r u₀|², |r ∂_r v|²)` where `v = u₀ e^{−iλt|u₀|^{2σ}}` so
/// `|∂_r v|² = |∂_r u₀|² (1 + (2σλt|u₀|^{2σ})²)`.
fn integrands(params: &SingularParams, alpha: f64, u: f64) -> (f64, f64) {
    let r = (-u).exp();
    let (u0, r_du0) = profile(params.delta_amp, alpha, r);
    let base = r_du0 * r_du0;
    let g = 2.0 * params.sigma * params.lambda * params.t * u0.abs().powf(2.0 * params.sigma);
    (base, base * (1.0 + g * g))
}

fn segment(params: &SingularParams, alpha: f64, a: f64, b: f64, which: usize) -> Result<f64> {
    let f = |u: f64| {
        let (i0, iv) = integrands(params, alpha, u);
        if which == 0 {
            i0
        } else {
            iv
        }
    };
    integrate(f, a, b, params.rel_tol, 0.0).map(|q| 2.0 * PI * q.value).map_err(|e| match e {
        Error::Quadrature { a, b, error, evaluations } => {
            Error::Quadrature { a: (-b).exp(), b: (-a).exp(), error, evaluations }
        }
        other => other,
    })
}

/// `I₀(ρ) = 2π∫_ρ^1 |∂_r u₀|² r dr` and `I_v(ρ) = 2π∫_ρ^1 |∂_r v(t)|² r dr`
/// for each `ρ`, by adaptive quadrature of the exact radial integrands.
pub fn run_singular_probe(params: &SingularParams) -> Result<ExperimentReport> {
    params.validate()?;
    let alpha = critical_alpha(params.sigma);

    let mut breaks = vec![0.0, (4.0f64 / 3.0).ln(), 2f64.ln()];
    let targets: Vec<f64> = params.rho_list.iter().map(|r| -r.ln()).collect();
    breaks.extend(targets.iter().copied());
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let pieces: Vec<(f64, f64, usize)> =
        breaks.windows(2).flat_map(|w| [(w[0], w[1], 0), (w[0], w[1], 1)]).collect();
    let values = params
        .execution
        .map(&pieces, |&(a, b, which)| segment(params, alpha, a, b, which))
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;

    let mut cumulative = [0.0f64; 2];
    let mut upto = Vec::with_capacity(breaks.len());
    upto.push(cumulative);
    for (piece, value) in pieces.iter().zip(&values) {
        cumulative[piece.2] += value;
        if piece.2 == 1 {
            upto.push(cumulative);
        }
    }

    let mut report = ExperimentReport::new(
        ExperimentKind::Singular,
        &["rho", "log_inv_rho", "I0", "Iv", "dI0", "dIv", "dIv_ratio"],
    );
    let mut prev: Option<[f64; 2]> = None;
    let mut prev_div: Option<f64> = None;
    for (&rho, &u) in params.rho_list.iter().zip(&targets) {
        let idx = breaks.iter().position(|&b| b == u).expect("target is a breakpoint");
        let [i0, iv] = upto[idx];
        let (d0, dv) = match prev {
            Some([p0, pv]) => (i0 - p0, iv - pv),
            None => (f64::NAN, f64::NAN),
        };
        let ratio = match prev_div {
            Some(p) => dv / p,
            None => f64::NAN,
        };
        report.push_row(vec![
            rho.into(),
            u.into(),
            i0.into(),
            iv.into(),
            Cell::from(d0),
            Cell::from(dv),
            Cell::from(ratio),
        ]);
        if prev.is_some() {
            prev_div = Some(dv);
        }
        prev = Some([i0, iv]);
    }

    let i0 = report.column("I0");
    let d0 = &report.column("dI0")[1..];
    let dv = &report.column("dIv")[1..];
    let log_inv = report.column("log_inv_rho");
    let widths: Vec<f64> = log_inv.windows(2).map(|w| w[1] - w[0]).collect();
    let total = i0[i0.len() - 1];
    let last = d0[d0.len() - 1];
    let cauchy = d0.windows(2).all(|w| w[1] < w[0]) && last < CAUCHY_FRACTION * total;

    let positive = dv.iter().all(|&v| v > 0.0);
    let ratios: Vec<f64> = dv.windows(2).map(|w| w[1] / w[0]).collect();
    let ratios_ok = ratios.iter().all(|&q| q >= RATIO_RANGE.0 && q <= RATIO_RANGE.1);
    // Δ_k log(1/ρ_k) per unit of log-width stays bounded below.
    let harmonic: Vec<f64> = dv.iter().zip(&widths).zip(&log_inv[1..]).map(|((d, w), l)| d / w * l).collect();
    let harmonic_ok = harmonic.iter().all(|&h| h >= 0.5 * harmonic[0]);
    let diverges = positive && ratios_ok && harmonic_ok;

    report.verdict = if cauchy && diverges { Verdict::Pass } else { Verdict::Fail };
    report.criterion = format!(
        "I0 converges: increments decreasing and last {last:.3e} < {CAUCHY_FRACTION} * {total:.6e} (observed {cauchy}); \
         Iv diverges: increments positive (observed {positive}), consecutive ratios in [{}, {}] (observed {ratios_ok}), \
         decay no faster than 1/log(1/rho) (observed {harmonic_ok})",
        RATIO_RANGE.0, RATIO_RANGE.1
    );
    report.notes.push(format!(
        "sigma = {}, alpha = {alpha:.6}, lambda = {}, t = {}, delta = {}, rel tol = {:e}",
        params.sigma, params.lambda, params.t, params.delta_amp, params.rel_tol
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff_plateaus_and_derivative() {
        assert_eq!(chi_cutoff(0.0), 1.0);
        assert_eq!(chi_cutoff(0.25), 1.0);
        assert_eq!(chi_cutoff(0.5625), 0.0);
        assert_eq!(chi_cutoff(0.9), 0.0);
        let mid = 0.5 * (CHI_INNER + CHI_OUTER);
        assert!((chi_cutoff(mid) - 0.5).abs() < 1e-15);
        for z in [0.3, 0.4, 0.5, 0.55] {
            let h = 1e-6;
            let fd = (chi_cutoff(z + h) - chi_cutoff(z - h)) / (2.0 * h);
            assert!((fd - chi_with_derivative(z).1).abs() < 1e-6, "z = {z}");
        }
    }

    #[test]
    fn profile_examples() {
        assert_eq!(critical_alpha(1.0), 1.0 / 6.0);
        let s = log_singular_profile(1.0, 1.0, &[(-1f64).exp(), (-4f64).exp()]).unwrap();
        assert!((s[0].u0 - 1.0).abs() < 1e-15);
        let expect = -(1.0 / 6.0) * 4f64.exp() * 4f64.powf(-5.0 / 6.0);
        assert!(((s[1].du0 - expect) / expect).abs() < 1e-14);
        assert!(log_singular_profile(1.0, 1.0, &[1.0]).is_err());
        assert!(log_singular_profile(1.0, 1.0, &[0.0]).is_err());
    }

    #[test]
    fn controls_match_exactly() {
        for params in [
            SingularParams { t: 0.0, ..Default::default() },
            SingularParams { lambda: 0.0, ..Default::default() },
        ] {
            let report = run_singular_probe(&params).unwrap();
            assert_eq!(report.column("I0"), report.column("Iv"));
            assert_eq!(report.verdict, Verdict::Fail);
        }
    }

    #[test]
    fn plateau_increments_match_closed_form() {
        // Inside χ ≡ 1 with σ = 1: |r u₀'|² = δ²α² u^{2α−2} and the extra
        // factor is (2λt δ² u^{2α})², so both increments are elementary.
        let params = SingularParams::default();
        let report = run_singular_probe(&params).unwrap();
        let a = critical_alpha(1.0);
        let u = report.column("log_inv_rho");
        let d0 = report.column("dI0");
        let dv = report.column("dIv");
        for k in 1..u.len() {
            let p = 2.0 * a - 1.0;
            let i0 = 2.0 * PI * a * a * (u[k].powf(p) - u[k - 1].powf(p)) / p;
            let extra = 2.0 * PI * a * a * 4.0 * (u[k] / u[k - 1]).ln();
            assert!(((d0[k] - i0) / i0).abs() < 1e-8, "k = {k}");
            assert!(((dv[k] - i0 - extra) / (i0 + extra)).abs() < 1e-8, "k = {k}");
        }
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn rejects_bad_radii() {
        let params = SingularParams { rho_list: vec![1e-3, 1e-2, 1e-4], ..Default::default() };
        assert!(run_singular_probe(&params).is_err());
    }
}
