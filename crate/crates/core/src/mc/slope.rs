use serde::{Deserialize, Serialize};

use crate::error::{DmtError, Result};
use crate::mc::outage::OutageEstimate;

/// Diversity slope fitted on a log-log SNR grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlopeFit {
    pub snr_grid_db: Vec<f64>,
    pub outage_estimates: Vec<OutageEstimate>,
    pub slope: f64,
    pub slope_stderr: f64,
}

/// Wilson score interval for a Bernoulli proportion.
pub fn wilson_interval(successes: u64, n: u64, confidence: f64) -> (f64, f64) {
    assert!(n > 0, "empty sample");
    assert!((0.0..1.0).contains(&(1.0 - confidence)), "confidence in (0, 1)");
    // Two-sided normal quantile; 0.95 is the only level used in anger.
    let z = match confidence {
        c if (c - 0.95).abs() < 1e-12 => 1.959_963_984_540_054,
        c => inverse_normal_cdf(0.5 + c / 2.0),
    };
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = p + z2 / (2.0 * nf);
    let spread = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
    (((center - spread) / denom).max(0.0), ((center + spread) / denom).min(1.0))
}

/// Acklam's rational approximation, good to ~1e-9; only exercised for
/// non-default confidence levels.
fn inverse_normal_cdf(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.38357751867269e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    let p_low = 0.02425;
    if p < p_low {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - p_low {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -inverse_normal_cdf(1.0 - p)
    }
}

/// Least-squares slope of -log10(p) against log10(SNR) with its standard
/// error, from (snr_db, probability) points.
pub fn fit_slope_loglog(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 3 {
        return Err(DmtError::Estimation(format!(
            "slope fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|&(snr_db, p)| {
            if !(p > 0.0 && p <= 1.0) {
                return Err(DmtError::Estimation(format!("probability out of (0, 1]: {p}")));
            }
            // log10(SNR) = snr_db / 10.
            Ok((snr_db / 10.0, -p.log10()))
        })
        .collect::<Result<_>>()?;
    let n = xy.len() as f64;
    let mean_x = xy.iter().map(|&(x, _)| x).sum::<f64>() / n;
    let mean_y = xy.iter().map(|&(_, y)| y).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|&(x, _)| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(DmtError::Estimation("SNR grid points coincide".into()));
    }
    let sxy: f64 = xy.iter().map(|&(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let rss: f64 = xy
        .iter()
        .map(|&(x, y)| (y - (mean_y + slope * (x - mean_x))).powi(2))
        .sum();
    let stderr = (rss / (n - 2.0) / sxx).sqrt();
    Ok((slope, stderr))
}

/// Fits the diversity slope from Monte Carlo estimates, using only grid
/// points with at least `min_events` outage events (variance control).
pub fn fit_diversity(estimates: &[OutageEstimate], min_events: u64) -> Result<SlopeFit> {
    let reliable: Vec<&OutageEstimate> =
        estimates.iter().filter(|e| e.outages >= min_events).collect();
    let points: Vec<(f64, f64)> = reliable.iter().map(|e| (e.snr_db, e.p_hat)).collect();
    let (slope, slope_stderr) = fit_slope_loglog(&points)?;
    Ok(SlopeFit {
        snr_grid_db: reliable.iter().map(|e| e.snr_db).collect(),
        outage_estimates: reliable.into_iter().cloned().collect(),
        slope,
        slope_stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exact_power_law_recovered() {
        let points: Vec<(f64, f64)> = [10.0, 20.0, 30.0, 40.0]
            .iter()
            .map(|&db| {
                let snr = 10f64.powf(db / 10.0);
                (db, snr.powf(-2.0))
            })
            .collect();
        let (slope, stderr) = fit_slope_loglog(&points).unwrap();
        assert_abs_diff_eq!(slope, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(stderr, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn constant_factor_absorbed_by_intercept() {
        for c in [0.3, 7.0] {
            let points: Vec<(f64, f64)> = [15.0, 25.0, 35.0]
                .iter()
                .map(|&db| {
                    let snr = 10f64.powf(db / 10.0);
                    (db, (c / snr).min(1.0))
                })
                .collect();
            let (slope, _) = fit_slope_loglog(&points).unwrap();
            assert_abs_diff_eq!(slope, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn too_few_points_rejected() {
        assert!(fit_slope_loglog(&[(10.0, 0.1), (20.0, 0.01)]).is_err());
        assert!(fit_slope_loglog(&[(10.0, 0.0), (20.0, 0.1), (30.0, 0.1)]).is_err());
    }

    #[test]
    fn wilson_basic_properties() {
        let (lo, hi) = wilson_interval(50, 100, 0.95);
        assert!(lo < 0.5 && 0.5 < hi);
        assert!(hi - lo < 0.25);
        let (lo, hi) = wilson_interval(0, 100, 0.95);
        assert!(lo.abs() < 1e-12);
        assert!(hi > 0.0);
        let (lo, hi) = wilson_interval(100, 100, 0.95);
        assert!(lo < 1.0);
        assert!(hi > 1.0 - 1e-12);
    }

    #[test]
    fn inverse_normal_quantiles() {
        assert_abs_diff_eq!(inverse_normal_cdf(0.975), 1.959964, epsilon = 1e-5);
        assert_abs_diff_eq!(inverse_normal_cdf(0.5), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(inverse_normal_cdf(0.995), 2.575829, epsilon = 1e-5);
    }
}
