//! Enumeration and pseudo-random sampling of joint distributions.
//!
//! The unions "over all distributions" in the capacity formulas are
//! approximated either by a rational grid on the probability simplex or by a
//! seeded stream of uniformly distributed simplex points (flat Dirichlet).

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::info::{JointDist, Var};
use crate::math::ln;

/// Default cap on the number of cells of a sampled table.
pub const DEFAULT_SAMPLE_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sampler {
    /// Every table whose entries are integer multiples of `1 / denominator`.
    Grid { denominator: u32 },
    /// Unbounded stream of flat-Dirichlet tables, reproducible per seed.
    Dirichlet { seed: u64 },
}

/// Uniform draw from the probability simplex with `cells` coordinates.
pub fn random_simplex<R: RngCore + ?Sized>(rng: &mut R, cells: usize) -> Vec<f64> {
    let mut weights: Vec<f64> = (0..cells).map(|_| -ln(open_unit(rng))).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    weights
}

/// Uniform draw from `(0, 1]`.
fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Stream of joint distributions over `axes`.
pub fn sample_joint(axes: &[(Var, usize)], sampler: Sampler, cap: usize) -> Result<JointSamples> {
    let cells = axes
        .iter()
        .try_fold(1usize, |acc, (_, c)| acc.checked_mul(*c))
        .unwrap_or(usize::MAX);
    if cells > cap {
        return Err(Error::CapExceeded { size: cells, cap });
    }
    // Validates the axis list once up front.
    JointDist::uniform(axes.to_vec())?;
    let source = match sampler {
        Sampler::Grid { denominator } => {
            if denominator == 0 {
                return Err(Error::OutOfRange {
                    name: "grid denominator",
                    value: 0.0,
                });
            }
            Source::Grid(SimplexGrid::new(cells, denominator))
        }
        Sampler::Dirichlet { seed } => {
            Source::Dirichlet(Box::new(ChaCha8Rng::seed_from_u64(seed)), cells)
        }
    };
    Ok(JointSamples {
        axes: axes.to_vec(),
        source,
    })
}

pub struct JointSamples {
    axes: Vec<(Var, usize)>,
    source: Source,
}

enum Source {
    Grid(SimplexGrid),
    Dirichlet(Box<ChaCha8Rng>, usize),
}

impl Iterator for JointSamples {
    type Item = JointDist;

    fn next(&mut self) -> Option<JointDist> {
        let table = match &mut self.source {
            Source::Grid(grid) => grid.next()?,
            Source::Dirichlet(rng, cells) => random_simplex(rng, *cells),
        };
        // Entries come from a normalized simplex point, so this cannot fail.
        JointDist::new(self.axes.clone(), table).ok()
    }
}

/// Compositions of `denominator` into `cells` nonnegative parts, first part
/// descending.
pub struct SimplexGrid {
    parts: Vec<u32>,
    denominator: u32,
    done: bool,
}

impl SimplexGrid {
    pub fn new(cells: usize, denominator: u32) -> Self {
        let mut parts = vec![0; cells];
        if let Some(first) = parts.first_mut() {
            *first = denominator;
        }
        Self {
            parts,
            denominator,
            done: cells == 0,
        }
    }

    fn advance(&mut self) {
        let n = self.parts.len();
        let tail = core::mem::take(&mut self.parts[n - 1]);
        match self.parts[..n - 1].iter().rposition(|p| *p > 0) {
            Some(j) => {
                self.parts[j] -= 1;
                self.parts[j + 1] = tail + 1;
            }
            None => self.done = true,
        }
    }
}

impl Iterator for SimplexGrid {
    type Item = Vec<f64>;

    fn next(&mut self) -> Option<Vec<f64>> {
        if self.done {
            return None;
        }
        let k = f64::from(self.denominator);
        let point = self.parts.iter().map(|p| f64::from(*p) / k).collect();
        self.advance();
        Some(point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts() {
        let one: Vec<_> = SimplexGrid::new(2, 1).collect();
        assert_eq!(one, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);

        let two: Vec<_> = SimplexGrid::new(2, 2).collect();
        assert_eq!(two, vec![vec![1.0, 0.0], vec![0.5, 0.5], vec![0.0, 1.0]]);

        // C(k + n - 1, n - 1)
        assert_eq!(SimplexGrid::new(4, 4).count(), 35);
        assert_eq!(SimplexGrid::new(1, 7).count(), 1);
    }

    #[test]
    fn dirichlet_is_reproducible() {
        let axes = [(Var::X1, 2), (Var::X2, 3)];
        let a: Vec<_> = sample_joint(&axes, Sampler::Dirichlet { seed: 7 }, DEFAULT_SAMPLE_CAP)
            .unwrap()
            .take(2)
            .collect();
        let b: Vec<_> = sample_joint(&axes, Sampler::Dirichlet { seed: 7 }, DEFAULT_SAMPLE_CAP)
            .unwrap()
            .take(2)
            .collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
        let c = sample_joint(&axes, Sampler::Dirichlet { seed: 8 }, DEFAULT_SAMPLE_CAP)
            .unwrap()
            .next()
            .unwrap();
        assert_ne!(a[0], c);
    }

    #[test]
    fn cap_enforced() {
        let axes = [(Var::U, 64), (Var::X1, 8), (Var::X2, 9)];
        assert!(matches!(
            sample_joint(&axes, Sampler::Grid { denominator: 1 }, DEFAULT_SAMPLE_CAP),
            Err(Error::CapExceeded {
                size: 4608,
                cap: 4096
            })
        ));
    }

    #[test]
    fn grid_yields_valid_dists() {
        let axes = [(Var::X1, 2), (Var::X2, 2)];
        let all: Vec<_> = sample_joint(&axes, Sampler::Grid { denominator: 4 }, DEFAULT_SAMPLE_CAP)
            .unwrap()
            .collect();
        assert_eq!(all.len(), 35);
        assert!(all.iter().any(|d| d.table() == [0.25; 4]));
    }
}
