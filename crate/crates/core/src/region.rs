//! Two-user rate regions represented by their Pareto frontier, plus the
//! additive and multiplicative distances between an outer and an inner region.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{linspace, positive_part};
use crate::triple::BoundTriple;

/// Frontier samples used by the gap metrics unless told otherwise.
pub const DEFAULT_FRONTIER_SAMPLES: usize = 512;

/// Bisection tolerance of the gap metrics (bits for the additive gap).
pub const DEFAULT_GAP_TOL: f64 = 1e-6;

/// Slack applied to membership tests inside the gap metrics so that points
/// computed on a frontier are not rejected by the last ulp.
const MEMBERSHIP_SLACK: f64 = 1e-12;

/// Two points closer than this (L-infinity) are merged.
const MERGE_EPS: f64 = 1e-12;

/// Largest multiplicative factor probed before declaring the gap unbounded.
const MAX_FACTOR: f64 = 1e12;

/// Downward-closed rate region in the nonnegative quadrant.
///
/// `vertices` is a strict Pareto set sorted by `r1` ascending (so `r2`
/// strictly descending). When `convexified` the region is the downward
/// closure of the convex hull of the vertices (time sharing); otherwise it is
/// the union of the rectangles `[0, r1] x [0, r2]` anchored at each vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion {
    vertices: Vec<(f64, f64)>,
    convexified: bool,
}

impl RateRegion {
    /// The region `{(0, 0)}`.
    pub fn origin() -> Self {
        Self {
            vertices: vec![(0.0, 0.0)],
            convexified: true,
        }
    }

    /// Union of the triples' polytopes, Pareto-pruned and optionally hulled.
    pub fn from_triples(triples: &[BoundTriple], convexify: bool) -> Self {
        let points: Vec<(f64, f64)> = triples.iter().flat_map(|t| t.corner_points()).collect();
        Self::from_points(&points, convexify)
    }

    /// Region generated by a set of achievable points. Non-finite or negative
    /// coordinates are dropped; coordinates within the merge distance of zero
    /// become zero.
    pub fn from_points(points: &[(f64, f64)], convexify: bool) -> Self {
        let snap = |v: f64| if v <= MERGE_EPS { 0.0 } else { v };
        let mut pts: Vec<(f64, f64)> = points
            .iter()
            .copied()
            .filter(|(x, y)| x.is_finite() && y.is_finite() && *x >= 0.0 && *y >= 0.0)
            .map(|(x, y)| (snap(x), snap(y)))
            .collect();
        // Descending r1, ties broken by descending r2.
        pts.sort_by(|p, q| q.0.total_cmp(&p.0).then(q.1.total_cmp(&p.1)));
        let mut pareto: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
        for p in pts {
            if let Some(last) = pareto.last().copied() {
                if p.1 <= last.1 + MERGE_EPS {
                    continue;
                }
                if last.0 - p.0 <= MERGE_EPS {
                    pareto.pop();
                }
            }
            pareto.push(p);
        }
        pareto.reverse();
        if pareto.is_empty() {
            return Self::origin();
        }
        let vertices = if convexify {
            upper_hull(&pareto)
        } else {
            pareto
        };
        Self {
            vertices,
            convexified: convexify,
        }
    }

    /// Convex hull (time sharing) of this region.
    pub fn convexified(&self) -> Self {
        Self::from_points(&self.vertices, true)
    }

    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    pub fn is_convexified(&self) -> bool {
        self.convexified
    }

    pub fn is_origin_only(&self) -> bool {
        self.vertices.iter().all(|(x, y)| *x == 0.0 && *y == 0.0)
    }

    pub fn max_r1(&self) -> f64 {
        self.vertices.last().map_or(0.0, |v| v.0)
    }

    pub fn max_r2(&self) -> f64 {
        self.vertices.first().map_or(0.0, |v| v.1)
    }

    /// Both coordinates multiplied by `factor >= 0`.
    pub fn scaled(&self, factor: f64) -> Self {
        let pts: Vec<_> = self
            .vertices
            .iter()
            .map(|(x, y)| (x * factor, y * factor))
            .collect();
        Self::from_points(&pts, self.convexified)
    }

    /// Largest `r2` in the region at abscissa `r1`, `None` beyond the region.
    pub fn frontier_at(&self, r1: f64) -> Option<f64> {
        let v = &self.vertices;
        if r1 < 0.0 || r1 > self.max_r1() {
            return None;
        }
        if r1 <= v[0].0 {
            return Some(v[0].1);
        }
        // First vertex with abscissa >= r1; exists and is > 0 by the checks above.
        let i = v.partition_point(|p| p.0 < r1);
        let (x0, y0) = v[i - 1];
        let (x1, y1) = v[i];
        if r1 == x1 || !self.convexified {
            return Some(y1);
        }
        Some(y0 + (y1 - y0) * (r1 - x0) / (x1 - x0))
    }

    /// Whether `(r1, r2)` lies within L-infinity distance `tol` of the region.
    pub fn contains(&self, r1: f64, r2: f64, tol: f64) -> bool {
        if r1 < -tol || r2 < -tol {
            return false;
        }
        let x = positive_part(r1 - tol);
        let y = positive_part(r2 - tol);
        self.frontier_at(x).is_some_and(|f| y <= f)
    }

    /// Closed boundary polyline from the `r2` axis to the `r1` axis, including
    /// the staircase corners of a non-convexified region.
    pub fn boundary(&self) -> Vec<(f64, f64)> {
        let v = &self.vertices;
        let mut out = Vec::with_capacity(2 * v.len() + 2);
        if v[0].0 > 0.0 {
            out.push((0.0, v[0].1));
        }
        for (i, p) in v.iter().enumerate() {
            if i > 0 && !self.convexified {
                out.push((v[i - 1].0, p.1));
            }
            out.push(*p);
        }
        let last = v[v.len() - 1];
        if last.1 > 0.0 {
            out.push((last.0, 0.0));
        }
        out
    }

    /// Frontier points used by the gap metrics: the boundary polyline plus
    /// `n` points at evenly spaced abscissae.
    pub fn frontier_samples(&self, n: usize) -> Vec<(f64, f64)> {
        let mut out = self.boundary();
        let xmax = self.max_r1();
        out.extend(linspace(0.0, xmax, n).filter_map(|x| self.frontier_at(x).map(|y| (x, y))));
        out
    }
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Upper concave envelope of a Pareto set sorted by `r1` ascending.
fn upper_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &p in points {
        while hull.len() >= 2 {
            let n = hull.len();
            let scale = 1.0 + p.0.abs().max(p.1.abs());
            if cross(hull[n - 2], hull[n - 1], p) >= -MERGE_EPS * scale {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn bisect(mut lo: f64, mut hi: f64, tol: f64, ok: impl Fn(f64) -> bool) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Smallest `g >= 0` (to within `tol`) such that every sampled outer
/// frontier point, shifted down by `g` in both coordinates and clamped at the
/// axes, lies in `inner`.
pub fn additive_gap(outer: &RateRegion, inner: &RateRegion, samples: usize, tol: f64) -> f64 {
    let pts = outer.frontier_samples(samples);
    let ok = |g: f64| {
        pts.iter().all(|(x, y)| {
            inner.contains(positive_part(x - g), positive_part(y - g), MEMBERSHIP_SLACK)
        })
    };
    if ok(0.0) {
        return 0.0;
    }
    let hi = pts.iter().fold(0.0f64, |m, (x, y)| m.max(*x).max(*y));
    bisect(0.0, hi, tol, ok)
}

/// Smallest `M >= 1` (to within `tol`) such that every sampled outer frontier
/// point scaled by `1/M` lies in `inner`; `f64::INFINITY` when no finite
/// factor works.
pub fn multiplicative_gap(outer: &RateRegion, inner: &RateRegion, samples: usize, tol: f64) -> f64 {
    let pts = outer.frontier_samples(samples);
    let ok = |m: f64| {
        pts.iter()
            .all(|(x, y)| inner.contains(x / m, y / m, MEMBERSHIP_SLACK))
    };
    if ok(1.0) {
        return 1.0;
    }
    let mut hi = 2.0;
    while !ok(hi) {
        hi *= 2.0;
        if hi > MAX_FACTOR {
            return f64::INFINITY;
        }
    }
    bisect(1.0, hi, tol, ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: f64 = f64::INFINITY;

    fn triple(a: f64, b: f64, c: f64) -> BoundTriple {
        BoundTriple {
            r1_max: a,
            r2_max: b,
            sum_max: c,
        }
    }

    #[test]
    fn single_triple_vertices() {
        let r = RateRegion::from_triples(&[triple(1.0, INF, 2.585)], true);
        assert_eq!(r.vertices().len(), 2);
        assert_eq!(r.vertices()[0], (0.0, 2.585));
        assert!((r.vertices()[1].0 - 1.0).abs() < 1e-15);
        assert!((r.vertices()[1].1 - 1.585).abs() < 1e-12);
        assert!(r.contains(1.0, 0.0, 0.0));
    }

    #[test]
    fn zero_triple_and_empty_input() {
        assert!(RateRegion::from_triples(&[BoundTriple::ORIGIN], true).is_origin_only());
        assert_eq!(RateRegion::from_triples(&[], true), RateRegion::origin());
    }

    #[test]
    fn two_triple_hull() {
        let r = RateRegion::from_triples(&[triple(1.0, INF, 1.0), triple(0.5, INF, 1.2)], true);
        // Pareto set {(0,1.2), (0.5,0.7), (1,0)}; (0.5,0.7) lies above the chord.
        assert_eq!(r.vertices(), &[(0.0, 1.2), (0.5, 0.7), (1.0, 0.0)]);
        let raw = RateRegion::from_triples(&[triple(1.0, INF, 1.0), triple(0.5, INF, 1.2)], false);
        assert_eq!(raw.vertices(), r.vertices());
        assert!(r.contains(0.25, 0.95, 0.0));
        assert!(!raw.contains(0.25, 0.95, 0.0));
    }

    #[test]
    fn membership() {
        let r = RateRegion::from_triples(&[triple(1.0, INF, 2.585)], true);
        assert!(r.contains(0.0, 0.0, 0.0));
        let v = r.vertices()[1];
        assert!(r.contains(v.0, v.1, 0.0));
        assert!(!r.contains(1.0, 1.586, 1e-6));
        assert!(!r.contains(1.1, 0.0, 1e-6));
        assert!(r.contains(1.1, 0.0, 0.1 + 1e-12));
    }

    #[test]
    fn gap_examples() {
        let outer = RateRegion::from_triples(&[triple(1.0, INF, 2.585)], true);
        assert_eq!(additive_gap(&outer, &outer, 512, 1e-6), 0.0);
        assert_eq!(multiplicative_gap(&outer, &outer, 512, 1e-6), 1.0);

        let inner = RateRegion::from_triples(&[triple(0.6, INF, 2.185)], true);
        let g = additive_gap(&outer, &inner, 512, 1e-6);
        assert!((g - 0.4).abs() <= 1e-6, "{g}");

        let half = outer.scaled(0.5);
        let m = multiplicative_gap(&outer, &half, 512, 1e-6);
        assert!((m - 2.0).abs() <= 1e-6, "{m}");

        assert_eq!(
            multiplicative_gap(&outer, &RateRegion::origin(), 512, 1e-6),
            INF
        );

        let bigger = RateRegion::from_triples(&[triple(2.0, INF, 3.0)], true);
        assert_eq!(additive_gap(&outer, &bigger, 512, 1e-6), 0.0);
    }

    #[test]
    fn boundary_polyline() {
        let raw = RateRegion::from_points(&[(1.0, 2.0), (2.0, 1.0)], false);
        assert_eq!(
            raw.boundary(),
            vec![(0.0, 2.0), (1.0, 2.0), (1.0, 1.0), (2.0, 1.0), (2.0, 0.0)]
        );
        assert_eq!(RateRegion::origin().boundary(), vec![(0.0, 0.0)]);
    }
}
