//! Least-squares slope of `log abs_err` against `log M`.

use serde::Serialize;

use super::sweep::SweepRecord;
use crate::error::{Error, Result};

/// Points with a nominal depth below this are left out of slope fits.
pub const SLOPE_MIN_M: f64 = 20.0;
pub const SLOPE_MIN_POINTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFit {
    pub n: usize,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Ordinary least squares on `(x, y)` pairs: `(slope, intercept, r^2)`.
pub fn least_squares(points: &[(f64, f64)]) -> Result<(f64, f64, f64)> {
    if points.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: points.len(),
        });
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParams(
            "slope fit needs at least two distinct depths".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    Ok((slope, intercept, r_squared))
}

/// Fit over the records of order `n` with `M >= 20` and a positive error,
/// using the effective depth as abscissa.
pub fn fit_slope(records: &[SweepRecord], n: usize) -> Result<SlopeFit> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.n == n && r.m >= SLOPE_MIN_M && r.abs_err > 0.0 && r.abs_err.is_finite())
        .map(|r| (r.m_eff.ln(), r.abs_err.ln()))
        .collect();
    if pts.len() < SLOPE_MIN_POINTS {
        return Err(Error::InsufficientData {
            needed: SLOPE_MIN_POINTS,
            got: pts.len(),
        });
    }
    let (slope, intercept, r_squared) = least_squares(&pts)?;
    Ok(SlopeFit {
        n,
        slope,
        intercept,
        r_squared,
        points: pts.len(),
    })
}

#[cfg(test)]
pub(crate) fn synthetic_record(m: f64, n: usize, abs_err: f64) -> SweepRecord {
    use super::sweep::OracleMethod;
    SweepRecord {
        m,
        m_eff: m,
        n,
        method: OracleMethod::Em,
        oracle: rug::Complex::new(64),
        asym: rug::Complex::new(64),
        abs_err,
        rel_err: abs_err,
        log2_terms: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let recs: Vec<SweepRecord> = [21.0, 41.0, 81.0, 161.0, 321.0]
            .iter()
            .map(|&m: &f64| synthetic_record(m, 1, m.powi(-2)))
            .collect();
        let fit = fit_slope(&recs, 1).unwrap();
        assert!((fit.slope + 2.0).abs() < 1e-6);
        assert!(fit.intercept.abs() < 1e-9);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.points, 5);
    }

    #[test]
    fn too_few_points() {
        let recs: Vec<SweepRecord> = [10.0, 15.0, 21.0, 41.0, 81.0]
            .iter()
            .map(|&m: &f64| synthetic_record(m, 0, 1.0 / m))
            .collect();
        // only three depths reach M >= 20
        assert!(matches!(
            fit_slope(&recs, 0),
            Err(Error::InsufficientData { needed: 4, got: 3 })
        ));
        assert!(matches!(
            fit_slope(&recs, 2),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn noisy_fit_has_lower_r_squared() {
        let pts = [(0.0, 0.0), (1.0, 1.5), (2.0, 1.5), (3.0, 3.5)];
        let (slope, _, r2) = least_squares(&pts).unwrap();
        assert!(slope > 0.9 && slope < 1.2);
        assert!(r2 < 0.95 && r2 > 0.5);
    }
}
