//! Log-log slope fits and exponent reports.

use crate::{Error, Result};

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Standard error of the slope.
    pub stderr: f64,
    pub points: Vec<(f64, f64)>,
}

/// Ordinary least squares in log-log coordinates.
///
/// Needs at least three points with positive coordinates and strictly
/// increasing `x`.
pub fn loglog_fit(points: &[(f64, f64)]) -> Result<SlopeFit> {
    if points.len() < 3 {
        return Err(Error::Domain(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(Error::Domain(format!("non-positive data point ({x}, {y})")));
    }
    if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::Domain("abscissae must be strictly increasing".into()));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = logs
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { (1.0 - sse / syy).clamp(0.0, 1.0) };
    let stderr = (sse / (k - 2.0) / sxx).sqrt();
    Ok(SlopeFit {
        slope,
        intercept,
        r_squared,
        stderr,
        points: logs,
    })
}

/// A measured slope against a predicted exponent.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ExponentReport {
    pub axis: String,
    pub slope: f64,
    pub stderr: f64,
    pub predicted: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub fit: SlopeFit,
}

impl ExponentReport {
    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

impl std::fmt::Display for ExponentReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "slope={:.4}±{:.4}, predicted={:.4}, {}",
            self.slope,
            self.stderr,
            self.predicted,
            self.verdict()
        )
    }
}

/// Minimum ratio between the largest and smallest swept parameter.
pub const MIN_RANGE: f64 = 8.0;

/// Fits `points` and compares the slope with `predicted`. The sweep range
/// is judged on the abscissae themselves.
pub fn exponent_report(
    axis: &str,
    points: &[(f64, f64)],
    predicted: f64,
    tolerance: f64,
) -> Result<ExponentReport> {
    let lo = points.first().map_or(f64::NAN, |p| p.0);
    let hi = points.last().map_or(f64::NAN, |p| p.0);
    exponent_report_over(axis, (lo, hi), points, predicted, tolerance)
}

/// As [`exponent_report`], for abscissae that are a shift of the swept
/// parameter (`ℓ + n/2` for `ℓ`, say); `span` is the parameter's range.
pub fn exponent_report_over(
    axis: &str,
    span: (f64, f64),
    points: &[(f64, f64)],
    predicted: f64,
    tolerance: f64,
) -> Result<ExponentReport> {
    let fit = loglog_fit(points)?;
    let ratio = span.1 / span.0;
    if !(ratio >= MIN_RANGE) {
        return Err(Error::InsufficientRange {
            ratio,
            required: MIN_RANGE,
        });
    }
    Ok(ExponentReport {
        axis: axis.to_string(),
        slope: fit.slope,
        stderr: fit.stderr,
        predicted,
        tolerance,
        pass: (fit.slope - predicted).abs() <= tolerance,
        fit,
    })
}
