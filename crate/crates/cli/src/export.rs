//! CSV plot data for break flows.
//!
//! One row per direction and grid point. `rho_v` runs linearly from 0 to
//! the window's `v(ρ₀)` (to 1 when the window reaches ρ = 0); `b_j_v` is
//! `v(b_j(ρ))`. All cells are exact rationals written as strings. The exact
//! pieces behind each column are the `flows` of the matching direction in
//! the JSON report.

use annuli_harmonicity::{Direction, DirectionData};
use valuation_core::logvalue::fmt_v;
use valuation_core::{fmt_rational, int, rat, LogValue, Rational};

use crate::CliError;

pub fn direction_label(d: &Direction) -> String {
    match d {
        Direction::Residue { center } => fmt_rational(center),
        Direction::Infinity => "inf".into(),
        Direction::Generic => "generic".into(),
    }
}

fn grid_points(window_lo: &LogValue, grid: usize) -> Vec<Rational> {
    let top = window_lo.v().cloned().unwrap_or_else(|| int(1));
    let last = (grid - 1) as i64;
    (0..=last).map(|k| &top * rat(k, last)).collect()
}

/// Samples every flow of every direction on `grid` points of its window.
pub fn export_flows(data: &[DirectionData], grid: usize) -> Result<String, CliError> {
    if data.is_empty() {
        return Err(CliError::EmptyData);
    }
    if grid < 2 {
        return Err(CliError::Grid(grid));
    }
    let width = data.iter().map(|d| d.flows.flows.len()).max().unwrap_or(0);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["direction".to_string(), "rho_v".to_string()];
    header.extend((1..=width).map(|j| format!("b_{j}_v")));
    w.write_record(&header)?;
    for d in data {
        let label = direction_label(&d.direction);
        for x in grid_points(&d.flows.window_lo, grid) {
            let rho = LogValue::from_v(x.clone());
            let mut row = vec![label.clone(), fmt_rational(&x)];
            for j in 0..width {
                row.push(match d.flows.flows.get(j) {
                    Some(b) => fmt_v(&b.eval(&rho).map_err(|e| CliError::Schema(e.to_string()))?),
                    None => String::new(),
                });
            }
            w.write_record(&row)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv of ASCII strings"))
}
