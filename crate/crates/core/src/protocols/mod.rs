//! Tradeoff curves of the relaying protocols.
//!
//! Full-duplex and fDF curves are exact rational polylines; vDF and DDF are
//! pointwise solvers in `f64` (their curves are not piecewise linear).

mod ddf;
mod search;
mod vdf;

pub use ddf::{
    ddf_alpha_grid_oracle, ddf_closed_form_222, ddf_closed_form_miso, ddf_dmt, DdfProblem,
    ExponentVector,
};
pub use vdf::{vdf_allocation, vdf_allocation_closed_form, vdf_dmt};

use crate::config::AntennaConfig;
use crate::curve::pp_dmt;
use crate::error::{DmtError, Result};
use crate::{Rational, RationalPolyline};

/// DMT with a full-duplex relay: the worse of the two hop curves.
pub fn full_duplex_dmt(config: &AntennaConfig) -> RationalPolyline {
    let hop1 = pp_dmt::<Rational>(config.m1(), config.m2()).expect("positive antenna counts");
    let hop2 = pp_dmt::<Rational>(config.m2(), config.m3()).expect("positive antenna counts");
    hop1.pointwise_min(&hop2)
}

/// DMT of the half-duplex fDF protocol with fixed source time fraction `a`:
/// min of the hop curves with arguments stretched by 1/a and 1/(1-a).
pub fn fdf_dmt(config: &AntennaConfig, a: Rational) -> Result<RationalPolyline> {
    if !(a > Rational::from_integer(0) && a < Rational::from_integer(1)) {
        return Err(DmtError::Domain(format!("time allocation must lie in (0, 1), got {a}")));
    }
    let hop1 = pp_dmt::<Rational>(config.m1(), config.m2())?.scale_arg(&a)?;
    let hop2 = pp_dmt::<Rational>(config.m2(), config.m3())?
        .scale_arg(&(Rational::from_integer(1) - a))?;
    Ok(hop1.pointwise_min(&hop2))
}

/// Degrees of freedom of the half-duplex channel: M1* M2* / (M1* + M2*).
pub fn max_multiplexing(config: &AntennaConfig) -> Rational {
    let m1s = i64::from(config.m1_star());
    let m2s = i64::from(config.m2_star());
    Rational::new(m1s * m2s, m1s + m2s)
}

/// Maximal diversity gain of the chain: M2 * min(M1, M3).
pub fn max_diversity(config: &AntennaConfig) -> u32 {
    config.m2() * config.m1().min(config.m3())
}
