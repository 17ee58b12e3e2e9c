use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::AntennaConfig;
use crate::error::{DmtError, Result};
use crate::mc::capacity::{cutset_capacity, hop_capacity};
use crate::mc::channel::sample_channel;
use crate::mc::slope::wilson_interval;
use crate::protocols::vdf_allocation;

/// Relaying protocol whose outage event is simulated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "protocol")]
pub enum Protocol {
    FullDuplex,
    Fdf { a: f64 },
    Vdf { a: f64 },
    Ddf,
    Cutset,
}

impl Protocol {
    pub fn name(&self) -> &'static str {
        match self {
            Protocol::FullDuplex => "full_duplex",
            Protocol::Fdf { .. } => "fdf",
            Protocol::Vdf { .. } => "vdf",
            Protocol::Ddf => "ddf",
            Protocol::Cutset => "cutset",
        }
    }
}

/// A simulatable outage event: chain, protocol, and the rate rule
/// R(SNR) = r log2 SNR, optionally overridden by a fixed rate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutageSpec {
    pub config: AntennaConfig,
    #[serde(flatten)]
    pub protocol: Protocol,
    pub r: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_rate: Option<f64>,
}

impl OutageSpec {
    pub fn new(config: AntennaConfig, protocol: Protocol, r: f64) -> Result<Self> {
        if !(r >= 0.0) {
            return Err(DmtError::Domain(format!("multiplexing gain must be >= 0, got {r}")));
        }
        if let Protocol::Fdf { a } | Protocol::Vdf { a } = protocol {
            if !(a > 0.0 && a < 1.0) {
                return Err(DmtError::Domain(format!("time allocation must lie in (0, 1), got {a}")));
            }
        }
        Ok(Self { config, protocol, r, fixed_rate: None })
    }

    /// vDF spec with the high-SNR-optimal allocation for this r. (The
    /// finite-SNR-optimal split differs; the asymptotic one is what the
    /// slope targets assume.)
    pub fn vdf(config: AntennaConfig, r: f64) -> Result<Self> {
        let a = vdf_allocation(&config, r)?;
        Self::new(config, Protocol::Vdf { a }, r)
    }

    /// Fixes the rate in bits per channel use, independent of SNR.
    pub fn with_fixed_rate(mut self, rate: f64) -> Result<Self> {
        if !(rate > 0.0) {
            return Err(DmtError::Domain(format!("fixed rate must be positive, got {rate}")));
        }
        self.fixed_rate = Some(rate);
        Ok(self)
    }

    /// Target rate at the given linear SNR.
    pub fn rate_at(&self, snr: f64) -> f64 {
        self.fixed_rate.unwrap_or_else(|| self.r * snr.log2())
    }
}

/// Whether the protocol is in outage given the two hop capacities and the
/// target rate.
///
/// The DDF comparison is closed (>=); its boundary has measure zero under
/// Rayleigh fading. A dead hop (capacity 0) is an outage for any positive
/// rate under DDF and the cut-set bound.
pub fn outage_event(spec: &OutageSpec, c1: f64, c2: f64, rate: f64) -> Result<bool> {
    if c1 < 0.0 || c2 < 0.0 {
        return Err(DmtError::Domain(format!("capacities must be nonnegative, got {c1}, {c2}")));
    }
    Ok(match spec.protocol {
        Protocol::FullDuplex => rate > c1.min(c2),
        Protocol::Fdf { a } | Protocol::Vdf { a } => rate > (a * c1).min((1.0 - a) * c2),
        Protocol::Ddf => {
            if c1 == 0.0 || c2 == 0.0 {
                rate > 0.0
            } else {
                rate >= c1 * c2 / (c1 + c2)
            }
        }
        Protocol::Cutset => {
            if c1 == 0.0 || c2 == 0.0 {
                rate > 0.0
            } else {
                rate > c1 * c2 / (c1 + c2)
            }
        }
    })
}

/// One Monte Carlo outage estimate with its Wilson 95% interval.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutageEstimate {
    pub snr_db: f64,
    pub rate_bits: f64,
    pub n_samples: u64,
    pub outages: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

/// Estimates the outage probability at one SNR point.
///
/// Samples are drawn by index through the counter-based generator and
/// counted as integers, so the estimate does not depend on how rayon
/// partitions the range.
pub fn estimate_outage(
    spec: &OutageSpec,
    snr_db: f64,
    n_samples: u64,
    seed: u64,
) -> Result<OutageEstimate> {
    if n_samples == 0 {
        return Err(DmtError::Estimation("need at least one sample".into()));
    }
    let snr = 10f64.powf(snr_db / 10.0);
    let rate = spec.rate_at(snr);
    let m1 = spec.config.m1() as usize;
    let m2 = spec.config.m2() as usize;
    let cutset = matches!(spec.protocol, Protocol::Cutset);

    const CHUNK: u64 = 1 << 14;
    let n_chunks = n_samples.div_ceil(CHUNK);
    let outages: u64 = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(n_samples);
            let mut count = 0u64;
            for index in lo..hi {
                let sample = sample_channel(&spec.config, seed, index);
                let (c1, c2) = if cutset {
                    (
                        cutset_capacity(&sample.h1, snr).expect("finite Gaussian draw"),
                        cutset_capacity(&sample.h2, snr).expect("finite Gaussian draw"),
                    )
                } else {
                    (
                        hop_capacity(&sample.h1, snr, m1).expect("finite Gaussian draw"),
                        hop_capacity(&sample.h2, snr, m2).expect("finite Gaussian draw"),
                    )
                };
                if outage_event(spec, c1, c2, rate).expect("capacities are nonnegative") {
                    count += 1;
                }
            }
            count
        })
        .sum();

    let (ci_low, ci_high) = wilson_interval(outages, n_samples, 0.95);
    Ok(OutageEstimate {
        snr_db,
        rate_bits: rate,
        n_samples,
        outages,
        p_hat: outages as f64 / n_samples as f64,
        ci_low,
        ci_high,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m1: u32, m2: u32, m3: u32) -> AntennaConfig {
        AntennaConfig::new(m1, m2, m3).unwrap()
    }

    fn spec(protocol: Protocol) -> OutageSpec {
        OutageSpec::new(cfg(1, 1, 1), protocol, 0.25).unwrap()
    }

    #[test]
    fn ddf_event_arithmetic() {
        let s = spec(Protocol::Ddf);
        // Harmonic-mean term is 1, closed comparison.
        assert!(outage_event(&s, 2.0, 2.0, 1.5).unwrap());
        assert!(outage_event(&s, 2.0, 2.0, 1.0).unwrap());
        assert!(!outage_event(&s, 2.0, 2.0, 0.9).unwrap());
        assert!(outage_event(&s, 0.0, 5.0, 0.1).unwrap());
        assert!(outage_event(&s, 5.0, 0.0, 0.1).unwrap());
        assert!(outage_event(&s, -0.1, 2.0, 1.0).is_err());
    }

    #[test]
    fn fdf_event_arithmetic() {
        let s = spec(Protocol::Fdf { a: 0.5 });
        assert!(outage_event(&s, 4.0, 2.0, 1.2).unwrap());
        assert!(!outage_event(&s, 4.0, 2.0, 0.9).unwrap());
    }

    #[test]
    fn full_duplex_event() {
        let s = spec(Protocol::FullDuplex);
        assert!(outage_event(&s, 1.0, 3.0, 1.5).unwrap());
        assert!(!outage_event(&s, 2.0, 3.0, 1.5).unwrap());
    }

    #[test]
    fn spec_validation() {
        assert!(OutageSpec::new(cfg(1, 1, 1), Protocol::Fdf { a: 0.0 }, 0.1).is_err());
        assert!(OutageSpec::new(cfg(1, 1, 1), Protocol::Ddf, -0.1).is_err());
        assert!(spec(Protocol::Ddf).with_fixed_rate(0.0).is_err());
    }

    #[test]
    fn estimate_is_deterministic() {
        let s = spec(Protocol::Ddf);
        let a = estimate_outage(&s, 10.0, 20_000, 3).unwrap();
        let b = estimate_outage(&s, 10.0, 20_000, 3).unwrap();
        assert_eq!(a.outages, b.outages);
        assert!(a.ci_low <= a.p_hat && a.p_hat <= a.ci_high);
        assert!(estimate_outage(&s, 10.0, 0, 3).is_err());
    }

    #[test]
    fn rate_rule() {
        let s = spec(Protocol::Ddf);
        assert!((s.rate_at(1024.0) - 2.5).abs() < 1e-12);
        let s = s.with_fixed_rate(1.0).unwrap();
        assert_eq!(s.rate_at(1024.0), 1.0);
    }
}
