use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple (one predictor) least-squares fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionReport {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// `1 - (1 - R²)(n - 1)/(n - 2)`.
    pub adj_r_squared: f64,
    /// `sqrt(sum((y - ŷ)²) / n)` over the fitted values.
    pub rmse: f64,
    pub n_valid: usize,
    /// Pairs dropped because either value was missing (non-finite).
    pub n_dropped: usize,
}

impl RegressionReport {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

/// Regress `y` on `x`. Pairs where either value is NaN or infinite are
/// dropped and counted.
pub fn ols_fit(x: &[f64], y: &[f64]) -> Result<RegressionReport> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = x
        .iter()
        .zip(y)
        .filter(|(a, b)| a.is_finite() && b.is_finite())
        .map(|(a, b)| (*a, *b))
        .unzip();
    let n = xs.len();
    if n < 3 {
        return Err(Error::InsufficientData(format!(
            "regression needs at least 3 complete pairs, found {n}"
        )));
    }
    let nf = n as f64;
    let mean_x = xs.iter().sum::<f64>() / nf;
    let mean_y = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|v| (v - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(a, b)| (a - mean_x) * (b - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;

    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(a, b)| (b - (intercept + slope * a)).powi(2))
        .sum();
    let ss_tot: f64 = ys.iter().map(|b| (b - mean_y).powi(2)).sum();
    // a constant outcome is fitted exactly by the flat line
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    let adj_r_squared = 1.0 - (1.0 - r_squared) * (nf - 1.0) / (nf - 2.0);

    Ok(RegressionReport {
        slope,
        intercept,
        r_squared,
        adj_r_squared,
        rmse: (ss_res / nf).sqrt(),
        n_valid: n,
        n_dropped: x.len() - n,
    })
}
