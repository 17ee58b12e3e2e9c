//! Exact algebra of nonincreasing piecewise-linear tradeoff curves.
//!
//! A [`Polyline`] stores the ordered breakpoints of a curve d(r) that starts
//! at r = 0, is nonincreasing, ends at d = 0 and evaluates to 0 past its last
//! breakpoint. The algebra is generic over the scalar type; the rest of the
//! crate instantiates it with `Rational64` so that pointwise minima and
//! segment intersections are exact, and converts to `f64` only at the solver
//! boundary.

use num_traits::{FromPrimitive, Num, ToPrimitive};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{DmtError, Result};
use crate::Rational;

/// Scalar types usable as curve coordinates.
pub trait CurveScalar: Clone + PartialOrd + Num + FromPrimitive {}

impl<T: Clone + PartialOrd + Num + FromPrimitive> CurveScalar for T {}

/// Nonincreasing piecewise-linear curve d(r), as ordered breakpoints.
///
/// Invariants (enforced on construction):
/// * r-coordinates strictly increasing, first r = 0;
/// * d-coordinates nonincreasing, last d = 0;
/// * no breakpoint is collinear with its neighbors, and no trailing zero
///   segments, so equal functions have equal breakpoint lists.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline<T> {
    breakpoints: Vec<(T, T)>,
}

impl<T: CurveScalar> Polyline<T> {
    /// Builds a curve from breakpoints, validating the invariants and
    /// canonicalizing collinear and trailing-zero points away.
    pub fn new(breakpoints: Vec<(T, T)>) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(DmtError::InvalidCurve("no breakpoints".into()));
        }
        if breakpoints[0].0 != T::zero() {
            return Err(DmtError::InvalidCurve("first breakpoint must be at r = 0".into()));
        }
        for pair in breakpoints.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(DmtError::InvalidCurve("r-coordinates must be strictly increasing".into()));
            }
            if pair[1].1 > pair[0].1 {
                return Err(DmtError::InvalidCurve("d-coordinates must be nonincreasing".into()));
            }
        }
        if breakpoints.last().unwrap().1 != T::zero() {
            return Err(DmtError::InvalidCurve("last d-coordinate must be 0".into()));
        }
        Ok(Self { breakpoints: canonicalize(breakpoints) })
    }

    pub fn breakpoints(&self) -> &[(T, T)] {
        &self.breakpoints
    }

    /// Evaluates the curve at `r` by linear interpolation; 0 past the last
    /// breakpoint.
    pub fn eval(&self, r: &T) -> Result<T> {
        if !(*r >= T::zero()) {
            return Err(DmtError::Domain("eval requires r >= 0".into()));
        }
        let last = self.breakpoints.last().unwrap();
        if *r >= last.0 {
            return Ok(if *r == last.0 { last.1.clone() } else { T::zero() });
        }
        for pair in self.breakpoints.windows(2) {
            let (r1, d1) = &pair[0];
            let (r2, d2) = &pair[1];
            if *r >= *r1 && *r < *r2 {
                let t = (r.clone() - r1.clone()) / (r2.clone() - r1.clone());
                return Ok(d1.clone() + (d2.clone() - d1.clone()) * t);
            }
        }
        unreachable!("breakpoint intervals cover [0, last)");
    }

    /// Exact pointwise minimum of two curves.
    ///
    /// The result's breakpoints are the input breakpoints plus every segment
    /// intersection, truncated at the first zero of the minimum.
    pub fn pointwise_min(&self, other: &Self) -> Self {
        let mut candidates: Vec<T> = Vec::new();
        for (r, _) in self.breakpoints.iter().chain(other.breakpoints.iter()) {
            candidates.push(r.clone());
        }
        for sa in self.breakpoints.windows(2) {
            for sb in other.breakpoints.windows(2) {
                if let Some(r) = segment_intersection(&sa[0], &sa[1], &sb[0], &sb[1]) {
                    candidates.push(r);
                }
            }
        }
        candidates.sort_by(|a, b| a.partial_cmp(b).expect("curve scalars are ordered"));
        candidates.dedup();

        let mut points = Vec::with_capacity(candidates.len());
        for r in candidates {
            let da = self.eval(&r).expect("candidate r >= 0");
            let db = other.eval(&r).expect("candidate r >= 0");
            let d = if da <= db { da } else { db };
            let is_zero = d == T::zero();
            points.push((r, d));
            if is_zero {
                break;
            }
        }
        Self::new(points).expect("pointwise minimum preserves the invariants")
    }

    /// Returns the curve r -> d(r / a), i.e. breakpoints with r scaled by `a`.
    pub fn scale_arg(&self, a: &T) -> Result<Self> {
        if !(*a > T::zero() && *a <= T::one()) {
            return Err(DmtError::Domain("scale factor must lie in (0, 1]".into()));
        }
        let scaled = self
            .breakpoints
            .iter()
            .map(|(r, d)| (r.clone() * a.clone(), d.clone()))
            .collect();
        Self::new(scaled)
    }

    /// Smallest r with d(r) = 0 (the curve's maximum multiplexing gain).
    pub fn first_zero(&self) -> T {
        self.breakpoints
            .iter()
            .find(|(_, d)| *d == T::zero())
            .map(|(r, _)| r.clone())
            .expect("last d-coordinate is 0")
    }
}

impl<T: CurveScalar + ToPrimitive> Polyline<T> {
    /// Converts breakpoints to `f64` for the solver side.
    pub fn to_f64(&self) -> Polyline<f64> {
        let points = self
            .breakpoints
            .iter()
            .map(|(r, d)| {
                (
                    r.to_f64().expect("breakpoint fits in f64"),
                    d.to_f64().expect("breakpoint fits in f64"),
                )
            })
            .collect();
        Polyline::new(points).expect("conversion preserves the invariants")
    }

    /// Renders `r,d` CSV rows sampled on the given grid.
    pub fn sample_csv(&self, grid: &[f64]) -> Result<String> {
        let curve = self.to_f64();
        let mut out = String::from("r,d\n");
        for &r in grid {
            let d = curve.eval(&r)?;
            out.push_str(&format!("{},{}\n", fmt_sig15(r), fmt_sig15(d)));
        }
        Ok(out)
    }
}

/// Optimal point-to-point MIMO tradeoff curve for an m x n link: the
/// piecewise-linear curve through (k, (m-k)(n-k)) for k = 0..min(m,n).
pub fn pp_dmt<T: CurveScalar>(m: u32, n: u32) -> Result<Polyline<T>> {
    if m == 0 || n == 0 {
        return Err(DmtError::Domain("antenna counts must be positive".into()));
    }
    let points = (0..=m.min(n))
        .map(|k| {
            let d = u64::from(m - k) * u64::from(n - k);
            (
                T::from_u32(k).expect("small integer fits the scalar"),
                T::from_u64(d).expect("small integer fits the scalar"),
            )
        })
        .collect();
    Polyline::new(points)
}

/// Formats with 15 significant digits, stable across platforms.
pub fn fmt_sig15(x: f64) -> String {
    let s = format!("{x:.14e}");
    // Keep plain decimal notation for the magnitudes that occur here.
    match s.parse::<f64>() {
        Ok(v) => format!("{v}"),
        Err(_) => s,
    }
}

fn canonicalize<T: CurveScalar>(points: Vec<(T, T)>) -> Vec<(T, T)> {
    // Trim everything after the first zero, then drop interior collinear points.
    let mut trimmed = Vec::with_capacity(points.len());
    for (r, d) in points {
        let stop = d == T::zero();
        trimmed.push((r, d));
        if stop {
            break;
        }
    }
    let mut out: Vec<(T, T)> = Vec::with_capacity(trimmed.len());
    for p in trimmed {
        while out.len() >= 2 {
            let a = &out[out.len() - 2];
            let b = &out[out.len() - 1];
            let lhs = (b.1.clone() - a.1.clone()) * (p.0.clone() - b.0.clone());
            let rhs = (p.1.clone() - b.1.clone()) * (b.0.clone() - a.0.clone());
            if lhs == rhs {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

/// Intersection of segments a1-a2 and b1-b2, strictly inside their common
/// r-interval. Endpoints are already breakpoint candidates.
fn segment_intersection<T: CurveScalar>(
    a1: &(T, T),
    a2: &(T, T),
    b1: &(T, T),
    b2: &(T, T),
) -> Option<T> {
    let lo = if a1.0 >= b1.0 { a1.0.clone() } else { b1.0.clone() };
    let hi = if a2.0 <= b2.0 { a2.0.clone() } else { b2.0.clone() };
    if hi <= lo {
        return None;
    }
    let da = a2.0.clone() - a1.0.clone();
    let db = b2.0.clone() - b1.0.clone();
    let sa = (a2.1.clone() - a1.1.clone()) / da;
    let sb = (b2.1.clone() - b1.1.clone()) / db;
    if sa == sb {
        return None;
    }
    // a1.d + sa (r - a1.r) = b1.d + sb (r - b1.r)
    let num = b1.1.clone() - a1.1.clone() + sa.clone() * a1.0.clone() - sb.clone() * b1.0.clone();
    let r = num / (sa - sb);
    if r > lo && r < hi {
        Some(r)
    } else {
        None
    }
}

#[derive(Serialize, Deserialize)]
struct PolylineWire {
    breakpoints: Vec<[i64; 4]>,
}

impl Serialize for Polyline<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = PolylineWire {
            breakpoints: self
                .breakpoints
                .iter()
                .map(|(r, d)| [*r.numer(), *r.denom(), *d.numer(), *d.denom()])
                .collect(),
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polyline<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = PolylineWire::deserialize(deserializer)?;
        let points = wire
            .breakpoints
            .into_iter()
            .map(|[rn, rd, dn, dd]| {
                if rd == 0 || dd == 0 {
                    return Err(D::Error::custom("zero denominator in breakpoint"));
                }
                Ok((Rational::new(rn, rd), Rational::new(dn, dd)))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Polyline::new(points).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RationalPolyline;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn bp(points: &[(i64, i64)]) -> RationalPolyline {
        Polyline::new(
            points
                .iter()
                .map(|&(r, d)| (Rational::from_integer(r), Rational::from_integer(d)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn pp_dmt_breakpoints() {
        assert_eq!(pp_dmt::<Rational>(4, 2).unwrap(), bp(&[(0, 8), (1, 3), (2, 0)]));
        assert_eq!(pp_dmt::<Rational>(2, 3).unwrap(), bp(&[(0, 6), (1, 2), (2, 0)]));
        assert_eq!(pp_dmt::<Rational>(1, 1).unwrap(), bp(&[(0, 1), (1, 0)]));
        assert!(pp_dmt::<Rational>(0, 2).is_err());
    }

    #[test]
    fn pp_dmt_symmetric() {
        for m in 1..=4 {
            for n in 1..=4 {
                assert_eq!(pp_dmt::<Rational>(m, n).unwrap(), pp_dmt::<Rational>(n, m).unwrap());
            }
        }
    }

    #[test]
    fn eval_interpolates_and_extends() {
        let d22 = pp_dmt::<Rational>(2, 2).unwrap();
        assert_eq!(d22.eval(&rat(1, 2)).unwrap(), rat(5, 2));
        let d42 = pp_dmt::<Rational>(4, 2).unwrap();
        assert_eq!(d42.eval(&rat(3, 2)).unwrap(), rat(3, 2));
        assert_eq!(d42.eval(&rat(3, 1)).unwrap(), rat(0, 1));
        assert!(d42.eval(&rat(-1, 2)).is_err());
    }

    #[test]
    fn min_of_pp_curves() {
        let d42 = pp_dmt::<Rational>(4, 2).unwrap();
        let d23 = pp_dmt::<Rational>(2, 3).unwrap();
        assert_eq!(d42.pointwise_min(&d23), d23);
        assert_eq!(d23.pointwise_min(&d23), d23);
        let d11 = pp_dmt::<Rational>(1, 1).unwrap();
        let d22 = pp_dmt::<Rational>(2, 2).unwrap();
        assert_eq!(d11.pointwise_min(&d22), bp(&[(0, 1), (1, 0)]));
    }

    #[test]
    fn min_finds_interior_crossings() {
        // 4 - 4r crosses the (0,3),(3,0) line 3 - r at r = 1/3.
        let a = Polyline::new(vec![(rat(0, 1), rat(4, 1)), (rat(1, 1), rat(0, 1))]).unwrap();
        let b = Polyline::new(vec![(rat(0, 1), rat(3, 1)), (rat(3, 1), rat(0, 1))]).unwrap();
        let m = a.pointwise_min(&b);
        assert_eq!(
            m.breakpoints(),
            &[
                (rat(0, 1), rat(3, 1)),
                (rat(1, 3), rat(8, 3)),
                (rat(1, 1), rat(0, 1))
            ]
        );
        for k in 0..=30 {
            let r = rat(k, 10);
            let expect = a.eval(&r).unwrap().min(b.eval(&r).unwrap());
            assert_eq!(m.eval(&r).unwrap(), expect);
        }
    }

    #[test]
    fn scale_arg_scales_breakpoints() {
        let d42 = pp_dmt::<Rational>(4, 2).unwrap();
        let scaled = d42.scale_arg(&rat(3, 10)).unwrap();
        assert_eq!(
            scaled.breakpoints(),
            &[
                (rat(0, 1), rat(8, 1)),
                (rat(3, 10), rat(3, 1)),
                (rat(3, 5), rat(0, 1))
            ]
        );
        assert_eq!(d42.scale_arg(&rat(1, 1)).unwrap(), d42);
        let d11 = pp_dmt::<Rational>(1, 1).unwrap();
        let half = d11.scale_arg(&rat(1, 2)).unwrap();
        assert_eq!(half.eval(&rat(1, 4)).unwrap(), rat(1, 2));
        assert!(d42.scale_arg(&rat(0, 1)).is_err());
        assert!(d42.scale_arg(&rat(3, 2)).is_err());
    }

    #[test]
    fn scale_composition() {
        let d42 = pp_dmt::<Rational>(4, 2).unwrap();
        let ab = d42.scale_arg(&rat(1, 2)).unwrap().scale_arg(&rat(2, 3)).unwrap();
        assert_eq!(ab, d42.scale_arg(&rat(1, 3)).unwrap());
    }

    #[test]
    fn first_zero_values() {
        assert_eq!(pp_dmt::<Rational>(4, 2).unwrap().first_zero(), rat(2, 1));
        assert_eq!(pp_dmt::<Rational>(1, 1).unwrap().first_zero(), rat(1, 1));
    }

    #[test]
    fn canonicalization_removes_collinear_and_trailing() {
        let p = Polyline::new(vec![
            (rat(0, 1), rat(4, 1)),
            (rat(1, 2), rat(2, 1)),
            (rat(1, 1), rat(0, 1)),
            (rat(2, 1), rat(0, 1)),
        ])
        .unwrap();
        assert_eq!(p.breakpoints(), &[(rat(0, 1), rat(4, 1)), (rat(1, 1), rat(0, 1))]);
    }

    #[test]
    fn invalid_curves_rejected() {
        assert!(Polyline::new(vec![(rat(1, 1), rat(0, 1))]).is_err());
        assert!(Polyline::new(vec![(rat(0, 1), rat(1, 1))]).is_err());
        assert!(
            Polyline::new(vec![(rat(0, 1), rat(1, 1)), (rat(1, 1), rat(2, 1))]).is_err()
        );
        assert!(Polyline::<Rational>::new(vec![]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let curve = pp_dmt::<Rational>(4, 2).unwrap().scale_arg(&rat(3, 10)).unwrap();
        let json = serde_json::to_string(&curve).unwrap();
        assert!(json.contains("breakpoints"));
        let back: RationalPolyline = serde_json::from_str(&json).unwrap();
        assert_eq!(back, curve);
    }

    #[test]
    fn csv_sampling() {
        let d11 = pp_dmt::<Rational>(1, 1).unwrap();
        let csv = d11.sample_csv(&[0.0, 0.5, 2.0]).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "r,d");
        assert_eq!(lines[1], "0,1");
        assert_eq!(lines[2], "0.5,0.5");
        assert_eq!(lines[3], "2,0");
    }
}
