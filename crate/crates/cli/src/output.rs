//! CSV and JSON emission helpers.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{io_error, CliResult};

/// Floats print with 9 significant digits in scientific notation, so
/// re-parsing and re-printing a value is stable. NaN (infeasible sweep
/// rows) prints as `nan`.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{:.8e}", x)
    }
}

pub fn write_csv(dir: &Path, name: &str, header: &str, rows: &[String]) -> CliResult<PathBuf> {
    let mut text = String::with_capacity(rows.len() * 64 + header.len() + 1);
    text.push_str(header);
    text.push('\n');
    for row in rows {
        text.push_str(row);
        text.push('\n');
    }
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| io_error(&path, e))?;
    Ok(path)
}

pub fn write_json<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> CliResult<PathBuf> {
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| crate::error::CliError::usage(format!("{}: {e}", path.display())))?;
    text.push('\n');
    fs::write(&path, text).map_err(|e| io_error(&path, e))?;
    Ok(path)
}

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))
}

/// Sample instants at a fixed rate, always ending exactly on `total`.
pub fn sample_times(total: f64, rate_hz: f64) -> Vec<f64> {
    let mut times: Vec<f64> = (0..)
        .map(|i| i as f64 / rate_hz)
        .take_while(|t| *t < total)
        .collect();
    times.push(total);
    times
}
