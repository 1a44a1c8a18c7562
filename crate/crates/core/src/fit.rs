//! Power-law exponent fitting on log-log data.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FitError {
    #[error("power-law fit needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("power-law fit needs positive values; y[{index}] = {value}")]
    NonPositiveValue { index: usize, value: f64 },
    #[error("power-law fit needs positive abscissae; x[{index}] = {value}")]
    NonPositiveAbscissa { index: usize, value: f64 },
    #[error("abscissae are degenerate (zero variance in ln x)")]
    DegenerateAbscissae,
}

#[derive(Debug, Clone, Copy)]
pub struct PowerLawFit {
    /// Least-squares slope of ln y vs ln x.
    pub exponent: f64,
    /// Standard error of the slope (OLS, n − 2 degrees of freedom).
    pub stderr: f64,
    pub points: usize,
}

/// Least-squares power-law fit y ~ x^p over the given points.
pub fn fit_power_law(x: &[f64], y: &[f64]) -> Result<PowerLawFit, FitError> {
    let n = x.len().min(y.len());
    if n < 3 {
        return Err(FitError::TooFewPoints(n));
    }
    let mut lx = Vec::with_capacity(n);
    let mut ly = Vec::with_capacity(n);
    for i in 0..n {
        if !(x[i] > 0.0) {
            return Err(FitError::NonPositiveAbscissa {
                index: i,
                value: x[i],
            });
        }
        if !(y[i] > 0.0) {
            return Err(FitError::NonPositiveValue {
                index: i,
                value: y[i],
            });
        }
        lx.push(x[i].ln());
        ly.push(y[i].ln());
    }
    let mean_x = lx.iter().sum::<f64>() / n as f64;
    let mean_y = ly.iter().sum::<f64>() / n as f64;
    let sxx: f64 = lx.iter().map(|v| (v - mean_x) * (v - mean_x)).sum();
    if sxx == 0.0 {
        return Err(FitError::DegenerateAbscissae);
    }
    let sxy: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(a, b)| (a - mean_x) * (b - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(a, b)| {
            let r = b - (intercept + slope * a);
            r * r
        })
        .sum();
    let stderr = if n > 2 {
        (ss_res / (n as f64 - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(PowerLawFit {
        exponent: slope,
        stderr,
        points: n,
    })
}

/// Pointwise logarithmic slope d ln y / d ln x by centered differences;
/// one-sided at the ends. Entries are NaN where a value is non-positive.
pub fn local_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len().min(y.len());
    let mut out = vec![f64::NAN; n];
    if n < 2 {
        return out;
    }
    let slope = |i: usize, j: usize| -> f64 {
        if x[i] > 0.0 && x[j] > 0.0 && y[i] > 0.0 && y[j] > 0.0 {
            (y[j].ln() - y[i].ln()) / (x[j].ln() - x[i].ln())
        } else {
            f64::NAN
        }
    };
    out[0] = slope(0, 1);
    out[n - 1] = slope(n - 2, n - 1);
    for i in 1..n - 1 {
        out[i] = slope(i - 1, i + 1);
    }
    out
}
