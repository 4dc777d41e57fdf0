//! Relative-difference metrics used in reports.

use crate::{Error, Result};

/// `100 * (val1 - val2) / val2`.
pub fn metric_dev(val1: f64, val2: f64) -> Result<f64> {
    percent(val1, val2)
}

/// `100 * (mean_new - mean_base) / mean_base`, on unrounded means.
pub fn metric_diff(mean_new: f64, mean_base: f64) -> Result<f64> {
    percent(mean_new, mean_base)
}

fn percent(a: f64, b: f64) -> Result<f64> {
    if b == 0.0 {
        return Err(Error::Domain("relative difference against zero".into()));
    }
    Ok(100.0 * (a - b) / b)
}

/// Arithmetic mean; `None` for an empty slice.
pub fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}
