//! Uniform sampling grids.

use crate::error::{invalid, Result};

/// `n` evenly spaced points from `start` to `end` inclusive.
///
/// Points are computed as `start + i * step` so that no rounding error
/// accumulates along the grid, and the last point is exactly `end`.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (n - 1) as f64;
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        end
                    } else {
                        start + i as f64 * step
                    }
                })
                .collect()
        }
    }
}

/// Points `start, start + step, ...` up to and including `end` (with a
/// relative slack of 1e-9 steps for the final point).
pub fn arange_inclusive(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(invalid(format!("grid step must be positive, got {step}")));
    }
    if end < start {
        return Err(invalid(format!("grid end {end} is below start {start}")));
    }
    let n = ((end - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| start + i as f64 * step).collect())
}

/// Checks that `xs` is strictly increasing with constant spacing (relative
/// tolerance `rel_tol` on each step). Returns the spacing.
pub fn uniform_spacing(xs: &[f64], rel_tol: f64) -> Result<f64> {
    if xs.len() < 2 {
        return Err(invalid("grid needs at least two points"));
    }
    let h = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
    if !(h > 0.0) {
        return Err(invalid("grid must be strictly increasing"));
    }
    for (i, w) in xs.windows(2).enumerate() {
        let d = w[1] - w[0];
        if !(d > 0.0) || ((d - h) / h).abs() > rel_tol {
            return Err(invalid(format!(
                "grid is not uniform at index {i}: step {d} vs mean step {h}"
            )));
        }
    }
    Ok(h)
}
