//! vDF: fDF with the time split optimized per multiplexing gain.
//!
//! At the optimum the two hop diversities are equal, so the allocation is the
//! root of d_{M1,M2}(r/a) - d_{M2,M3}(r/(1-a)); the first term is
//! nondecreasing and the second nonincreasing in a, which makes bisection
//! reliable. For (M1, 1, M3) hops the root is also available in closed form.

use crate::config::AntennaConfig;
use crate::curve::{pp_dmt, Polyline};
use crate::error::{DmtError, Result};
use crate::protocols::max_multiplexing;
use crate::Rational;

const RESIDUAL_TOL: f64 = 1e-9;

fn hop_curves(config: &AntennaConfig) -> (Polyline<f64>, Polyline<f64>) {
    let d12 = pp_dmt::<Rational>(config.m1(), config.m2()).expect("positive counts");
    let d23 = pp_dmt::<Rational>(config.m2(), config.m3()).expect("positive counts");
    (d12.to_f64(), d23.to_f64())
}

/// Optimal time allocation a(r) equalizing the two hop diversities,
/// for 0 < r < M1* M2* / (M1* + M2*).
pub fn vdf_allocation(config: &AntennaConfig, r: f64) -> Result<f64> {
    let max_r = rational_to_f64(max_multiplexing(config));
    if !(r > 0.0 && r < max_r) {
        return Err(DmtError::Domain(format!(
            "vdf allocation needs 0 < r < {max_r}, got {r}"
        )));
    }
    if config.m1() == config.m3() {
        // Identical hop curves: the split is even for every r.
        return Ok(0.5);
    }
    let (d12, d23) = hop_curves(config);
    let gap = |a: f64| {
        d12.eval(&(r / a)).expect("positive argument") - d23.eval(&(r / (1.0 - a))).expect("positive argument")
    };
    let mut lo = r / f64::from(config.m1_star());
    let mut hi = 1.0 - r / f64::from(config.m2_star());
    // gap(lo) <= 0 <= gap(hi); gap is nondecreasing in a.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let g = gap(mid);
        if g == 0.0 {
            return Ok(mid);
        }
        if g < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    let a = 0.5 * (lo + hi);
    if gap(a).abs() > RESIDUAL_TOL {
        return Err(DmtError::Numerical(format!(
            "vdf bisection residual {} above tolerance at r = {r}",
            gap(a).abs()
        )));
    }
    Ok(a)
}

/// Closed-form allocation for (M1, 1, M3) chains, where both hop curves are
/// straight lines m (1 - x).
///
/// With A = m1 / m3 and B = 1 - r - A (1 + r), the equalizer is a root of
/// (A - 1) a^2 + B a + A r = 0. Both roots are tried; the one inside (0, 1)
/// whose equalization residual vanishes is returned.
pub fn vdf_allocation_closed_form(m1: u32, m3: u32, r: f64) -> Result<f64> {
    if m1 == 0 || m3 == 0 {
        return Err(DmtError::Domain("antenna counts must be positive".into()));
    }
    if !(r > 0.0 && r < 0.5) {
        return Err(DmtError::Domain(format!(
            "closed-form allocation needs 0 < r < 1/2, got {r}"
        )));
    }
    if m1 == m3 {
        return Ok(0.5);
    }
    let a_ratio = f64::from(m1) / f64::from(m3);
    let b = 1.0 - r - a_ratio * (1.0 + r);
    let disc = b * b - 4.0 * a_ratio * (a_ratio - 1.0) * r;
    if disc < 0.0 {
        return Err(DmtError::Infeasible(format!(
            "no real allocation root for m1 = {m1}, m3 = {m3}, r = {r}"
        )));
    }
    let sq = disc.sqrt();
    let denom = 2.0 * (a_ratio - 1.0);
    let residual = |a: f64| {
        let h1 = f64::from(m1) * (1.0 - r / a);
        let h2 = f64::from(m3) * (1.0 - r / (1.0 - a));
        (h1.max(0.0) - h2.max(0.0)).abs()
    };
    for root in [(-b - sq) / denom, (-b + sq) / denom] {
        if root > 0.0 && root < 1.0 && residual(root) <= 1e-6 {
            return Ok(root);
        }
    }
    Err(DmtError::Infeasible(format!(
        "no equalizing root in (0, 1) for m1 = {m1}, m3 = {m3}, r = {r}"
    )))
}

/// Diversity gain of vDF at multiplexing gain r.
pub fn vdf_dmt(config: &AntennaConfig, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(DmtError::Domain(format!("multiplexing gain must be >= 0, got {r}")));
    }
    let max_r = rational_to_f64(max_multiplexing(config));
    if r >= max_r {
        return Ok(0.0);
    }
    let (d12, d23) = hop_curves(config);
    if r == 0.0 {
        // Both hop terms are constants here; the exponent is their min.
        return Ok(d12.eval(&0.0)?.min(d23.eval(&0.0)?));
    }
    let a = vdf_allocation(config, r)?;
    d12.eval(&(r / a))
}

fn rational_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg(m1: u32, m2: u32, m3: u32) -> AntennaConfig {
        AntennaConfig::new(m1, m2, m3).unwrap()
    }

    #[test]
    fn symmetric_chain_splits_evenly() {
        for r in [0.1, 0.25, 0.4] {
            assert_eq!(vdf_allocation(&cfg(3, 1, 3), r).unwrap(), 0.5);
            assert_eq!(vdf_allocation(&cfg(2, 2, 2), r * 2.0).unwrap(), 0.5);
            assert_eq!(vdf_allocation_closed_form(3, 3, r).unwrap(), 0.5);
        }
    }

    #[test]
    fn allocation_413_at_quarter() {
        let a = vdf_allocation(&cfg(4, 1, 3), 0.25).unwrap();
        // Root of a^2 - 2.75 a + 1 in (0, 1): (2.75 - sqrt(3.5625)) / 2.
        assert_abs_diff_eq!(a, 0.431_270_695_591_156_3, epsilon = 1e-8);
        let closed = vdf_allocation_closed_form(4, 3, 0.25).unwrap();
        assert_abs_diff_eq!(a, closed, epsilon = 1e-6);
    }

    #[test]
    fn allocation_tends_to_zero_for_small_r() {
        let mut prev = 1.0;
        for r in [0.1, 0.01, 0.001, 0.0001] {
            let a = vdf_allocation_closed_form(4, 3, r).unwrap();
            assert!(a < prev);
            prev = a;
        }
        assert!(prev < 0.01);
    }

    #[test]
    fn residual_below_tolerance() {
        let config = cfg(4, 1, 3);
        let (d12, d23) = hop_curves(&config);
        for i in 1..=42 {
            let r = i as f64 * 0.01;
            let a = vdf_allocation(&config, r).unwrap();
            let gap = d12.eval(&(r / a)).unwrap() - d23.eval(&(r / (1.0 - a))).unwrap();
            assert!(gap.abs() <= 1e-9, "residual {} at r = {r}", gap.abs());
        }
    }

    #[test]
    fn dmt_values() {
        assert_abs_diff_eq!(vdf_dmt(&cfg(4, 1, 3), 0.25).unwrap(), 1.6813, epsilon = 1e-3);
        assert_eq!(vdf_dmt(&cfg(4, 2, 3), 0.0).unwrap(), 6.0);
        assert_eq!(vdf_dmt(&cfg(2, 2, 2), 0.0).unwrap(), 4.0);
        assert_eq!(vdf_dmt(&cfg(2, 2, 2), 1.0).unwrap(), 0.0);
        assert_eq!(vdf_dmt(&cfg(4, 1, 3), 0.5).unwrap(), 0.0);
        assert!(vdf_dmt(&cfg(2, 2, 2), -0.1).is_err());
    }

    #[test]
    fn allocation_domain_checks() {
        assert!(vdf_allocation(&cfg(4, 1, 3), 0.0).is_err());
        assert!(vdf_allocation(&cfg(4, 1, 3), 0.5).is_err());
        assert!(vdf_allocation_closed_form(4, 3, 0.6).is_err());
    }
}
