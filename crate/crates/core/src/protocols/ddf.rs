//! Dynamic decode-and-forward: the relay listens exactly until it can decode,
//! then forwards for the rest of the slot.
//!
//! The diversity gain at multiplexing gain r is the infimum of the weighted
//! exponent sum over the outage region in eigenvalue-exponent space: vectors
//! alpha with alpha_{i,1} >= ... >= alpha_{i,Mi*} >= 0 whose hop exponents
//! S_i = sum_j (1 - alpha_{i,j})^+ satisfy S1 S2 / (S1 + S2) < r. The weight
//! of alpha_{i,j} is 2j - 1 + |M_i - M_{i+1}|.
//!
//! [`ddf_dmt`] reduces this to one dimension: for fixed hop exponents
//! (S1, S2), the cheapest alpha vector costs exactly the point-to-point curve
//! d_{Mi,Mi+1}(S_i), and since both costs fall as the S_i grow, the optimum
//! sits on the constraint boundary S2 = r S1 / (S1 - r) (clamped to the hop
//! rank). The reduction is validated against [`ddf_alpha_grid_oracle`], a
//! direct discretized search over the full exponent region.

use num_traits::ToPrimitive;

use crate::config::AntennaConfig;
use crate::curve::{pp_dmt, Polyline};
use crate::error::{DmtError, Result};
use crate::protocols::{max_multiplexing, search::golden_section};
use crate::Rational;

/// Outer 1-D grid step over S1; kinks are then pinned down by golden-section
/// refinement of the best bracket.
const OUTER_STEP: f64 = 1e-4;

/// One DDF exponent-optimization instance.
#[derive(Debug, Clone)]
pub struct DdfProblem {
    config: AntennaConfig,
    r: f64,
}

impl DdfProblem {
    pub fn new(config: AntennaConfig, r: f64) -> Result<Self> {
        if !(r >= 0.0) {
            return Err(DmtError::Domain(format!("multiplexing gain must be >= 0, got {r}")));
        }
        Ok(Self { config, r })
    }

    pub fn config(&self) -> &AntennaConfig {
        &self.config
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Objective weights 2j - 1 + |M_i - M_{i+1}| for hop `i` (0 or 1),
    /// strictly increasing in j.
    pub fn weights(&self, hop: usize) -> Vec<f64> {
        let (rank, gap) = match hop {
            0 => (self.config.m1_star(), self.config.m1().abs_diff(self.config.m2())),
            1 => (self.config.m2_star(), self.config.m2().abs_diff(self.config.m3())),
            _ => panic!("hop index must be 0 or 1"),
        };
        (1..=rank).map(|j| f64::from(2 * j - 1 + gap)).collect()
    }
}

/// Ordered eigenvalue exponents, one list per hop.
#[derive(Debug, Clone)]
pub struct ExponentVector {
    alpha1: Vec<f64>,
    alpha2: Vec<f64>,
}

impl ExponentVector {
    pub fn new(alpha1: Vec<f64>, alpha2: Vec<f64>) -> Result<Self> {
        for alpha in [&alpha1, &alpha2] {
            if alpha.is_empty() {
                return Err(DmtError::Domain("empty exponent list".into()));
            }
            for pair in alpha.windows(2) {
                if pair[1] > pair[0] {
                    return Err(DmtError::Domain("exponents must be nonincreasing".into()));
                }
            }
            if *alpha.last().unwrap() < 0.0 {
                return Err(DmtError::Domain("exponents must be nonnegative".into()));
            }
        }
        Ok(Self { alpha1, alpha2 })
    }

    fn s(alpha: &[f64]) -> f64 {
        alpha.iter().map(|a| (1.0 - a).max(0.0)).sum()
    }

    /// Hop capacity exponent S_1.
    pub fn s1(&self) -> f64 {
        Self::s(&self.alpha1)
    }

    /// Hop capacity exponent S_2.
    pub fn s2(&self) -> f64 {
        Self::s(&self.alpha2)
    }

    /// Weighted exponent sum for the given problem.
    pub fn objective(&self, problem: &DdfProblem) -> f64 {
        let dot = |alpha: &[f64], w: &[f64]| -> f64 {
            alpha.iter().zip(w).map(|(a, w)| a * w).sum()
        };
        dot(&self.alpha1, &problem.weights(0)) + dot(&self.alpha2, &problem.weights(1))
    }
}

/// Diversity gain of DDF at multiplexing gain r.
pub fn ddf_dmt(config: &AntennaConfig, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(DmtError::Domain(format!("multiplexing gain must be >= 0, got {r}")));
    }
    let max_r = rational_to_f64(max_multiplexing(config));
    if r >= max_r {
        return Ok(0.0);
    }
    let d12 = pp_dmt::<Rational>(config.m1(), config.m2())?.to_f64();
    let d23 = pp_dmt::<Rational>(config.m2(), config.m3())?.to_f64();
    if r == 0.0 {
        // Outage needs one hop fully collapsed; the cheaper hop decides.
        return Ok(d12.eval(&0.0)?.min(d23.eval(&0.0)?));
    }
    let m1s = f64::from(config.m1_star());
    let m2s = f64::from(config.m2_star());
    let cost = |s1: f64| boundary_cost(&d12, &d23, r, m2s, s1);

    let steps = (m1s / OUTER_STEP).round() as usize;
    let mut best_s1 = 0.0;
    let mut best = cost(0.0);
    for i in 1..=steps {
        let s1 = if i == steps { m1s } else { i as f64 * OUTER_STEP };
        let c = cost(s1);
        if c < best {
            best = c;
            best_s1 = s1;
        }
    }
    let lo = (best_s1 - OUTER_STEP).max(0.0);
    let hi = (best_s1 + OUTER_STEP).min(m1s);
    let (_, refined) = golden_section(cost, lo, hi, 1e-12);
    Ok(best.min(refined).max(0.0))
}

/// Cost of the cheapest outage point with first-hop exponent `s1`: the second
/// hop sits on the constraint boundary, clamped to its rank.
fn boundary_cost(d12: &Polyline<f64>, d23: &Polyline<f64>, r: f64, m2s: f64, s1: f64) -> f64 {
    let s2 = if s1 <= r {
        m2s
    } else {
        (r * s1 / (s1 - r)).min(m2s)
    };
    d12.eval(&s1).expect("s1 >= 0") + d23.eval(&s2).expect("s2 >= 0")
}

/// Brute-force discretized search over the exponent region.
///
/// Enumerates every nonincreasing per-hop grid vector over [0, 1.5] and
/// minimizes the weighted sum subject to S1 S2 / (S1 + S2) <= r. The result
/// upper-bounds the true infimum within O(grid_step * sum of weights).
/// Refuses chains with M1* + M2* > 6; the enumeration is exponential in the
/// hop ranks.
pub fn ddf_alpha_grid_oracle(problem: &DdfProblem, grid_step: f64) -> Result<f64> {
    if !(grid_step > 0.0 && grid_step <= 0.1) {
        return Err(DmtError::Domain(format!("grid step must lie in (0, 0.1], got {grid_step}")));
    }
    let config = problem.config();
    if config.m1_star() + config.m2_star() > 6 {
        return Err(DmtError::OracleScale(format!(
            "hop ranks {} + {} exceed the oracle limit of 6",
            config.m1_star(),
            config.m2_star()
        )));
    }
    let r = problem.r();
    let hop1 = enumerate_hop(config.m1_star() as usize, &problem.weights(0), grid_step);
    let mut hop2 = enumerate_hop(config.m2_star() as usize, &problem.weights(1), grid_step);

    // Sort hop 2 by S and keep the running minimum cost over S2 <= threshold,
    // so each hop-1 candidate is matched against the cheapest compatible
    // partner without walking the full cross product.
    hop2.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite exponents"));
    let mut prefix_min = Vec::with_capacity(hop2.len());
    let mut running = f64::INFINITY;
    for &(_, c) in &hop2 {
        running = running.min(c);
        prefix_min.push(running);
    }
    let s2_values: Vec<f64> = hop2.iter().map(|&(s, _)| s).collect();

    let mut best = f64::INFINITY;
    for &(s1, c1) in &hop1 {
        if c1 >= best {
            continue;
        }
        let bound = if s1 <= r {
            f64::INFINITY
        } else {
            r * s1 / (s1 - r)
        };
        let idx = s2_values.partition_point(|&s2| s2 <= bound + 1e-12);
        if idx == 0 {
            continue;
        }
        best = best.min(c1 + prefix_min[idx - 1]);
    }
    if best.is_infinite() {
        return Err(DmtError::Infeasible(format!("no feasible grid point at r = {r}")));
    }
    Ok(best)
}

/// All nonincreasing grid vectors of the given length over [0, 1.5], as
/// (S, cost) pairs.
fn enumerate_hop(rank: usize, weights: &[f64], step: f64) -> Vec<(f64, f64)> {
    let levels = (1.5 / step).floor() as usize;
    let mut out = Vec::new();
    let mut indices = vec![0usize; rank];
    fn recurse(
        pos: usize,
        max_level: usize,
        indices: &mut Vec<usize>,
        weights: &[f64],
        step: f64,
        out: &mut Vec<(f64, f64)>,
    ) {
        if pos == indices.len() {
            let mut s = 0.0;
            let mut cost = 0.0;
            for (j, &k) in indices.iter().enumerate() {
                let alpha = k as f64 * step;
                s += (1.0 - alpha).max(0.0);
                cost += weights[j] * alpha;
            }
            out.push((s, cost));
            return;
        }
        for k in 0..=max_level {
            indices[pos] = k;
            recurse(pos + 1, k, indices, weights, step, out);
        }
    }
    recurse(0, levels, &mut indices, weights, step, &mut out);
    out
}

/// Closed-form DDF tradeoff of an (M1, 1, M3) chain:
/// min(M1, M3) (1 - 2r) / (1 - r) on [0, 1/2], 0 past it.
pub fn ddf_closed_form_miso(m1: u32, m3: u32, r: f64) -> Result<f64> {
    if m1 == 0 || m3 == 0 {
        return Err(DmtError::Domain("antenna counts must be positive".into()));
    }
    if !(r >= 0.0) {
        return Err(DmtError::Domain(format!("multiplexing gain must be >= 0, got {r}")));
    }
    if r >= 0.5 {
        return Ok(0.0);
    }
    Ok(f64::from(m1.min(m3)) * (1.0 - 2.0 * r) / (1.0 - r))
}

/// Closed-form DDF tradeoff of the (2, 2, 2) chain.
///
/// The minimizing exponent keeps one hop at full rank all the way to the
/// degrees-of-freedom limit of the other branch, so the curve has exactly two
/// pieces: 2(4 - 5r)/(2 - r) up to r = 2/3 and 4(1 - r)/(2 - r) after
/// (cross-checked against the grid oracle).
pub fn ddf_closed_form_222(r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(DmtError::Domain(format!("multiplexing gain must be >= 0, got {r}")));
    }
    if r > 1.0 {
        return Ok(0.0);
    }
    if r <= 2.0 / 3.0 {
        Ok(2.0 * (4.0 - 5.0 * r) / (2.0 - r))
    } else {
        Ok(4.0 * (1.0 - r) / (2.0 - r))
    }
}

fn rational_to_f64(r: Rational) -> f64 {
    r.to_f64().expect("small rational fits in f64")
}
