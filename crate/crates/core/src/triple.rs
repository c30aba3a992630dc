use alloc::vec;
use alloc::vec::Vec;

/// The polytope `{(R1, R2) >= 0 : R1 <= r1_max, R2 <= r2_max, R1 + R2 <= sum_max}`.
///
/// `r2_max` is `f64::INFINITY` when a bound has no standalone `R2` constraint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundTriple {
    pub r1_max: f64,
    pub r2_max: f64,
    pub sum_max: f64,
}

impl BoundTriple {
    /// Builds a triple with every component clamped at zero.
    pub fn clamped(r1_max: f64, r2_max: f64, sum_max: f64) -> Self {
        Self {
            r1_max: r1_max.max(0.0),
            r2_max: r2_max.max(0.0),
            sum_max: sum_max.max(0.0),
        }
    }

    pub const ORIGIN: BoundTriple = BoundTriple {
        r1_max: 0.0,
        r2_max: 0.0,
        sum_max: 0.0,
    };

    pub fn contains(&self, r1: f64, r2: f64, tol: f64) -> bool {
        r1 >= -tol
            && r2 >= -tol
            && r1 <= self.r1_max + tol
            && r2 <= self.r2_max + tol
            && r1 + r2 <= self.sum_max + tol
    }

    /// Largest absolute componentwise difference; infinite components must
    /// match exactly.
    pub fn max_abs_diff(&self, other: &BoundTriple) -> f64 {
        let diff = |x: f64, y: f64| {
            if x == y {
                0.0
            } else {
                (x - y).abs()
            }
        };
        diff(self.r1_max, other.r1_max)
            .max(diff(self.r2_max, other.r2_max))
            .max(diff(self.sum_max, other.sum_max))
    }

    /// Corner points of the polytope (unsorted, possibly repeated).
    pub fn corner_points(&self) -> Vec<(f64, f64)> {
        let a = self.r1_max.min(self.sum_max).max(0.0);
        let b = self.r2_max.min(self.sum_max).max(0.0);
        let c = self.sum_max.max(0.0);
        vec![
            (0.0, b),
            (a, 0.0),
            (a, b.min(c - a).max(0.0)),
            (a.min(c - b).max(0.0), b),
        ]
    }
}
