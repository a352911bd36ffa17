use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::config::RunConfig;
use crate::error::Result;
use crate::experiments::{Cell, ExperimentReport};

/// Scientific notation with 17 significant digits, enough to round-trip
/// any `f64`.
pub fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "NaN".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

fn cell_text(cell: &Cell) -> String {
    match cell {
        Cell::Num(v) => format_number(*v),
        Cell::Int(v) => v.to_string(),
        Cell::Text(s) => s.clone(),
    }
}

pub fn write_report_csv(path: &Path, report: &ExperimentReport) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(&report.columns)?;
    for row in &report.rows {
        writer.write_record(row.iter().map(cell_text))?;
    }
    writer.flush()?;
    Ok(())
}

pub fn summary_text(report: &ExperimentReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "experiment: {}", report.kind.name());
    let _ = writeln!(out, "verdict: {}", report.verdict);
    let _ = writeln!(out, "criterion: {}", report.criterion);
    let _ = writeln!(out, "rows: {}", report.rows.len());
    for fit in &report.fitted {
        let _ = writeln!(
            out,
            "fit {}: slope = {}, intercept = {}, residual = {}",
            fit.name,
            format_number(fit.slope),
            format_number(fit.intercept),
            format_number(fit.residual)
        );
    }
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

pub fn write_summary(path: &Path, report: &ExperimentReport) -> Result<()> {
    fs::write(path, summary_text(report))?;
    Ok(())
}

/// Write `report.csv`, `summary.txt` and `resolved.cfg` into `dir`.
pub fn write_outputs(dir: &Path, cfg: &RunConfig, report: &ExperimentReport) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_report_csv(&dir.join("report.csv"), report)?;
    write_summary(&dir.join("summary.txt"), report)?;
    fs::write(dir.join("resolved.cfg"), cfg.to_config_string())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            let s = format_number(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
        }
    }
}
