//! Monte Carlo outage estimation over i.i.d. Rayleigh MIMO hops.
//!
//! Channel draws are keyed by (seed, sample index) through a counter-based
//! stream split, so estimates are bit-identical however the sample range is
//! partitioned across workers. Outage counts accumulate as integers; no
//! floating-point reduction order enters the estimate.

mod capacity;
mod channel;
mod outage;
mod slope;

pub use capacity::{cutset_capacity, hop_capacity};
pub use channel::{sample_channel, ChannelSample};
pub use outage::{estimate_outage, outage_event, OutageEstimate, OutageSpec, Protocol};
pub use slope::{fit_diversity, fit_slope_loglog, wilson_interval, SlopeFit};
