use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Simulate,
    Inflate,
    OdeApprox,
    Strichartz,
    Singular,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Simulate => "simulate",
            ExperimentKind::Inflate => "inflate",
            ExperimentKind::OdeApprox => "ode-approx",
            ExperimentKind::Strichartz => "strichartz",
            ExperimentKind::Singular => "singular",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// No criterion is defined for this configuration.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            Cell::Text(_) => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Least-squares fit `log y = slope · log x + intercept`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerFit {
    pub name: String,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
}

pub fn fit_power_law(name: &str, x: &[f64], y: &[f64]) -> PowerFit {
    assert_eq!(x.len(), y.len());
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual =
        (lx.iter().zip(&ly).map(|(a, b)| (b - slope * a - intercept).powi(2)).sum::<f64>() / n).sqrt();
    PowerFit { name: name.to_string(), slope, intercept, residual }
}

/// One row per sweep point plus fitted exponents and the verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub kind: ExperimentKind,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub fitted: Vec<PowerFit>,
    pub verdict: Verdict,
    /// Human-readable statement of the criterion and its tolerances.
    pub criterion: String,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(kind: ExperimentKind, columns: &[&str]) -> ExperimentReport {
        ExperimentReport {
            kind,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            fitted: Vec::new(),
            verdict: Verdict::Inconclusive,
            criterion: String::new(),
            notes: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Numeric values of one column; non-numeric cells become NaN.
    pub fn column(&self, name: &str) -> Vec<f64> {
        let Some(idx) = self.columns.iter().position(|c| c == name) else {
            panic!("no column `{name}` in {:?}", self.columns);
        };
        self.rows.iter().map(|r| r[idx].as_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn fit(&self, name: &str) -> Option<&PowerFit> {
        self.fitted.iter().find(|f| f.name == name)
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let x = [8.0, 16.0, 32.0, 64.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(0.25)).collect();
        let fit = fit_power_law("q", &x, &y);
        assert!((fit.slope - 0.25).abs() < 1e-14);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-13);
        assert!(fit.residual < 1e-14);
    }
}
