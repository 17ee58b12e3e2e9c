//! Diversity-multiplexing tradeoff (DMT) analysis for MIMO multi-hop relay
//! channels.
//!
//! The crate computes the tradeoff curve d(r) between multiplexing gain r and
//! diversity gain d for a source-relay-destination chain with (M1, M2, M3)
//! antennas and no direct source-destination link, under several relaying
//! protocols:
//!
//! * full-duplex decode-and-forward (the min of the two hop curves),
//! * fDF: half-duplex with a fixed time split `a` between the hops,
//! * vDF: fDF with the split optimized per multiplexing gain,
//! * DDF: dynamic decode-and-forward, where the relay listens exactly until
//!   it can decode and then forwards,
//! * the half-duplex cut-set bound (simulation only; its outage exponent
//!   coincides with DDF).
//!
//! Curve algebra ([`curve`]) is generic over the scalar type and is used with
//! exact rationals so that breakpoints and intersections carry no rounding;
//! the solvers ([`protocols`]) convert to `f64` at the boundary. The
//! [`mc`] module estimates finite-SNR outage probabilities by Monte Carlo
//! over i.i.d. Rayleigh hops and fits the diversity slope on a log-log grid.

// `!(x >= 0)` is used deliberately as a NaN-rejecting domain guard.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod curve;
pub mod error;
pub mod mc;
pub mod protocols;

pub use config::AntennaConfig;
pub use error::{DmtError, Result};

/// Exact scalar used for curve algebra.
pub type Rational = num_rational::Rational64;

/// Tradeoff curve with exact rational breakpoints.
pub type RationalPolyline = curve::Polyline<Rational>;

/// Tradeoff curve in floating point, for the solver side.
pub type FloatPolyline = curve::Polyline<f64>;
