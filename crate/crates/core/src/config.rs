use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{DmtError, Result};

/// Antenna counts (M1, M2, M3) of the source, relay and destination.
///
/// The per-hop ranks `M1* = min(M1, M2)` and `M2* = min(M2, M3)` are always
/// derived from the stored counts, never cached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AntennaConfig {
    m1: u32,
    m2: u32,
    m3: u32,
}

impl AntennaConfig {
    pub fn new(m1: u32, m2: u32, m3: u32) -> Result<Self> {
        if m1 == 0 || m2 == 0 || m3 == 0 {
            return Err(DmtError::InvalidConfig(format!(
                "antenna counts must be positive, got ({m1},{m2},{m3})"
            )));
        }
        Ok(Self { m1, m2, m3 })
    }

    pub fn m1(&self) -> u32 {
        self.m1
    }

    pub fn m2(&self) -> u32 {
        self.m2
    }

    pub fn m3(&self) -> u32 {
        self.m3
    }

    /// Rank of the source-relay hop, min(M1, M2).
    pub fn m1_star(&self) -> u32 {
        self.m1.min(self.m2)
    }

    /// Rank of the relay-destination hop, min(M2, M3).
    pub fn m2_star(&self) -> u32 {
        self.m2.min(self.m3)
    }
}

impl fmt::Display for AntennaConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m1, self.m2, self.m3)
    }
}

impl FromStr for AntennaConfig {
    type Err = DmtError;

    /// Parses `"4,2,3"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(DmtError::InvalidConfig(format!(
                "expected three comma-separated antenna counts, got {s:?}"
            )));
        }
        let mut counts = [0u32; 3];
        for (slot, part) in counts.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| {
                DmtError::InvalidConfig(format!("bad antenna count {part:?} in {s:?}"))
            })?;
        }
        Self::new(counts[0], counts[1], counts[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stars_are_derived() {
        let cfg = AntennaConfig::new(4, 2, 3).unwrap();
        assert_eq!(cfg.m1_star(), 2);
        assert_eq!(cfg.m2_star(), 2);
        let cfg = AntennaConfig::new(1, 4, 2).unwrap();
        assert_eq!(cfg.m1_star(), 1);
        assert_eq!(cfg.m2_star(), 2);
    }

    #[test]
    fn zero_antennas_rejected() {
        assert!(AntennaConfig::new(0, 1, 1).is_err());
        assert!("2,0,2".parse::<AntennaConfig>().is_err());
    }

    #[test]
    fn parses_from_str() {
        let cfg: AntennaConfig = "4, 2,3".parse().unwrap();
        assert_eq!((cfg.m1(), cfg.m2(), cfg.m3()), (4, 2, 3));
        assert!("4,2".parse::<AntennaConfig>().is_err());
        assert!("a,b,c".parse::<AntennaConfig>().is_err());
    }
}
