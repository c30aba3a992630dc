//! Bounds for discrete memoryless channels with `Y1 = f1(X1, X2)`.
//!
//! For a distribution `P(U, X1, X2)` (or `P(U1, U2, X1, X2)` for the binning
//! region) every evaluator pushes the inputs through the channel and reads the
//! three constraints of one polytope off the resulting joint table:
//!
//! | family   | `R1 <=`                    | `R2 <=`        | `R1 + R2 <=`                              |
//! |----------|----------------------------|----------------|-------------------------------------------|
//! | capacity | `H(Y1|X2)`                 | `I(Y2;U,X2)`   | `I(Y2;U,X2) + H(Y1|U,X2)`                 |
//! | outer    | `I(Y1;X1|X2)`              | `I(Y2;U,X2)`   | `I(Y2;U,X2) + I(Y1;X1|X2,U)`              |
//! | binning  | `I(Y1;U1) - I(U1;X2)`      | `I(Y2;U2,X2)`  | `R1 bound + R2 bound - I(U1;U2|X2)`       |
//! | both det.| `H(Y1|X2)`                 | `H(Y2)`        | `H(Y2) + H(Y1|Y2,X2)`                     |

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::channel::DmChannel;
use crate::error::{Error, Result};
use crate::info::{JointDist, Var};
use crate::region::RateRegion;
use crate::sample::{sample_joint, Sampler};
use crate::triple::BoundTriple;

use Var::*;

fn require_axes(dist: &JointDist, vars: &[Var]) -> Result<()> {
    match vars.iter().find(|v| !dist.has(**v)) {
        Some(v) => Err(Error::UnknownAxis(*v)),
        None => Ok(()),
    }
}

fn require_deterministic(ch: &DmChannel) -> Result<()> {
    if ch.is_deterministic() {
        Ok(())
    } else {
        Err(Error::NotDeterministic)
    }
}

/// Capacity region constraints for one `P(U, X1, X2)`.
pub fn thm1_inner_triple(dist: &JointDist, ch: &DmChannel) -> Result<BoundTriple> {
    require_axes(dist, &[U, X1, X2])?;
    let joint = dist.push_through(ch)?;
    let r1 = joint.entropy(&[Y1], &[X2])?;
    let r2 = joint.mutual_information(&[Y2], &[U, X2], &[])?;
    let extra = joint.entropy(&[Y1], &[U, X2])?;
    Ok(BoundTriple::clamped(r1, r2, r2 + extra))
}

/// General outer bound for one `P(U, X1, X2)`; needs no determinism.
pub fn dm_outer_triple(dist: &JointDist, ch: &DmChannel) -> Result<BoundTriple> {
    require_axes(dist, &[U, X1, X2])?;
    let joint = dist.push_through(ch)?;
    let r1 = joint.mutual_information(&[Y1], &[X1], &[X2])?;
    let r2 = joint.mutual_information(&[Y2], &[U, X2], &[])?;
    let extra = joint.mutual_information(&[Y1], &[X1], &[X2, U])?;
    Ok(BoundTriple::clamped(r1, r2, r2 + extra))
}

/// Binning region for one `P(U1, U2, X1, X2)`, before and after clamping.
///
/// The unclamped values describe the exact polytope (empty when `r1_raw < 0`);
/// [`RtdBounds::triple`] is the clamped version used for region building.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RtdBounds {
    pub r1_raw: f64,
    pub r2: f64,
    pub sum_raw: f64,
    /// `I(U1; U2 | X2)`.
    pub binning_penalty: f64,
}

impl RtdBounds {
    pub fn triple(&self) -> BoundTriple {
        BoundTriple::clamped(self.r1_raw, self.r2, self.sum_raw)
    }

    /// Membership in the unclamped polytope, inflated by `tol`.
    pub fn contains(&self, r1: f64, r2: f64, tol: f64) -> bool {
        r1 >= -tol
            && r2 >= -tol
            && r1 <= self.r1_raw + tol
            && r2 <= self.r2 + tol
            && r1 + r2 <= self.sum_raw + tol
    }

    /// Distance from `(r1, r2)` to the nearest constraint hyperplane.
    pub fn boundary_distance(&self, r1: f64, r2: f64) -> f64 {
        (r1 - self.r1_raw)
            .abs()
            .min((r2 - self.r2).abs())
            .min((r1 + r2 - self.sum_raw).abs())
            .min(r1.abs())
            .min(r2.abs())
    }
}

pub fn rtd_inner_triple(dist: &JointDist, ch: &DmChannel) -> Result<RtdBounds> {
    let c = BinningConstraints::evaluate(dist, ch)?;
    let r1_raw = c.rx1 - c.cover1;
    let binning_penalty = c.cover12 - c.cover1;
    Ok(RtdBounds {
        r1_raw,
        r2: c.rx2,
        sum_raw: r1_raw + c.rx2 - binning_penalty,
        binning_penalty,
    })
}

/// Right-hand sides of the four rate constraints with binning rates
/// `R1'`, `R2'`:
///
/// ```text
/// R1'       >= I(U1; X2)        (cover1)
/// R1' + R2' >= I(U1; U2, X2)    (cover12)
/// R2 + R2'  <= I(Y2; U2, X2)    (rx2)
/// R1 + R1'  <= I(Y1; U1)        (rx1)
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinningConstraints {
    pub cover1: f64,
    pub cover12: f64,
    pub rx2: f64,
    pub rx1: f64,
}

impl BinningConstraints {
    pub fn evaluate(dist: &JointDist, ch: &DmChannel) -> Result<Self> {
        require_axes(dist, &[U1, U2, X1, X2])?;
        let joint = dist.push_through(ch)?;
        Ok(Self {
            cover1: joint.mutual_information(&[U1], &[X2], &[])?,
            cover12: joint.mutual_information(&[U1], &[U2, X2], &[])?,
            rx2: joint.mutual_information(&[Y2], &[U2, X2], &[])?,
            rx1: joint.mutual_information(&[Y1], &[U1], &[])?,
        })
    }

    /// Whether some `R1', R2' >= 0` satisfy all four constraints.
    ///
    /// For fixed `R1'` the admissible `R2'` form the interval
    /// `[max(0, cover12 - R1'), rx2 - R2]`, so the system is feasible iff
    /// `R2 <= rx2` and `R1'` can be chosen in
    /// `[max(0, cover1, cover12 - rx2 + R2), rx1 - R1]`.
    pub fn feasible(&self, r1: f64, r2: f64) -> bool {
        if r1 < 0.0 || r2 < 0.0 || r2 > self.rx2 {
            return false;
        }
        let lo = self.cover1.max(self.cover12 - self.rx2 + r2).max(0.0);
        lo <= self.rx1 - r1
    }
}

/// Rate pair `(r1, r2)` is achievable with some nonnegative binning rates.
pub fn fm_feasible(r1: f64, r2: f64, dist: &JointDist, ch: &DmChannel) -> Result<bool> {
    Ok(BinningConstraints::evaluate(dist, ch)?.feasible(r1, r2))
}

fn inputs_only(dist: &JointDist) -> Result<JointDist> {
    require_axes(dist, &[X1, X2])?;
    dist.marginal(&[X1, X2])
}

/// Capacity region when both outputs are deterministic, for `P(X1, X2)`.
pub fn thm2_triple(dist: &JointDist, ch: &DmChannel) -> Result<BoundTriple> {
    require_deterministic(ch)?;
    let joint = inputs_only(dist)?.push_through(ch)?;
    let r1 = joint.entropy(&[Y1], &[X2])?;
    let r2 = joint.entropy(&[Y2], &[])?;
    let extra = joint.entropy(&[Y1], &[Y2, X2])?;
    Ok(BoundTriple::clamped(r1, r2, r2 + extra))
}

/// `I(X1, X2; Y2) + I(Y1; X1 | Y2, X2)` for a deterministic channel.
pub fn sumrate_outer_det(dist: &JointDist, ch: &DmChannel) -> Result<f64> {
    require_deterministic(ch)?;
    let joint = inputs_only(dist)?.push_through(ch)?;
    Ok(joint.mutual_information(&[X1, X2], &[Y2], &[])?
        + joint.mutual_information(&[Y1], &[X1], &[Y2, X2])?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Substitution {
    /// Replace the auxiliary `U` by a copy of `Y2 = f2(X1, X2)`.
    UEqualsY2,
    /// `U1 = f1(X1, X2)` and `U2 = U`.
    U1EqualsY1U2EqualsU,
}

/// Sets the auxiliary variables to deterministic functions of the inputs.
///
/// * [`Substitution::UEqualsY2`]: any existing `U` is marginalized out and
///   replaced by `f2(X1, X2)`; the result has axes `(X1, X2, U)`.
/// * [`Substitution::U1EqualsY1U2EqualsU`]: `U` is relabelled `U2` and
///   `U1 = f1(X1, X2)` is appended.
pub fn specialize_u(dist: &JointDist, rule: Substitution, ch: &DmChannel) -> Result<JointDist> {
    require_axes(dist, &[X1, X2])?;
    let x1 = dist.axes().iter().position(|(v, _)| *v == X1);
    let x2 = dist.axes().iter().position(|(v, _)| *v == X2);
    let al = ch.alphabets();
    if dist.card(X1) != Some(al.x1) || dist.card(X2) != Some(al.x2) {
        return Err(Error::AxisMismatch(String::from(
            "input cardinalities do not match channel",
        )));
    }
    match rule {
        Substitution::UEqualsY2 => {
            require_deterministic(ch)?;
            let inputs = inputs_only(dist)?;
            inputs.with_function_axis(U, al.y2, |i| ch.f2(i[0], i[1]).unwrap_or(0))
        }
        Substitution::U1EqualsY1U2EqualsU => {
            require_axes(dist, &[U])?;
            let (x1, x2) = (x1.unwrap_or(0), x2.unwrap_or(0));
            dist.rename(U, U2)?
                .with_function_axis(U1, al.y1, |i| ch.f1(i[x1], i[x2]))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionFamily {
    /// Capacity region of the semi-deterministic channel.
    Thm1,
    /// Both outputs deterministic.
    Thm2,
    /// General outer bound.
    Outer3,
    /// Binning inner bound.
    Rtd5,
}

impl RegionFamily {
    pub const ALL: [RegionFamily; 4] = [
        RegionFamily::Thm1,
        RegionFamily::Thm2,
        RegionFamily::Outer3,
        RegionFamily::Rtd5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RegionFamily::Thm1 => "thm1",
            RegionFamily::Thm2 => "thm2",
            RegionFamily::Outer3 => "outer3",
            RegionFamily::Rtd5 => "rtd5",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Axes of the distributions sampled for this family.
    pub fn axes(self, ch: &DmChannel, u_card: usize) -> Vec<(Var, usize)> {
        let al = ch.alphabets();
        match self {
            RegionFamily::Thm1 | RegionFamily::Outer3 => {
                vec![(U, u_card), (X1, al.x1), (X2, al.x2)]
            }
            RegionFamily::Thm2 => vec![(X1, al.x1), (X2, al.x2)],
            RegionFamily::Rtd5 => vec![(U1, u_card), (U2, u_card), (X1, al.x1), (X2, al.x2)],
        }
    }

    pub fn evaluate(self, dist: &JointDist, ch: &DmChannel) -> Result<BoundTriple> {
        match self {
            RegionFamily::Thm1 => thm1_inner_triple(dist, ch),
            RegionFamily::Thm2 => thm2_triple(dist, ch),
            RegionFamily::Outer3 => dm_outer_triple(dist, ch),
            RegionFamily::Rtd5 => rtd_inner_triple(dist, ch).map(|b| b.triple()),
        }
    }
}

/// Default auxiliary cardinality: `|X1| |X2| + 1`. A heuristic; no
/// cardinality bound is proved for these regions.
pub fn default_u_card(ch: &DmChannel) -> usize {
    ch.alphabets().inputs() + 1
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub family: RegionFamily,
    pub sampler: Sampler,
    /// Number of distributions drawn; grids stop early when exhausted.
    pub max_samples: usize,
    pub u_card: usize,
    pub cell_cap: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub hulled: RateRegion,
    pub raw: RateRegion,
    pub triples: Vec<BoundTriple>,
}

/// Approximates a region family by the union of the triples of sampled
/// distributions, reported both as a raw union and as its convex hull.
pub fn search_region(ch: &DmChannel, config: &SearchConfig) -> Result<SearchOutcome> {
    let axes = config.family.axes(ch, config.u_card);
    if config.family == RegionFamily::Thm2 {
        require_deterministic(ch)?;
    }
    let triples = sample_joint(&axes, config.sampler, config.cell_cap)?
        .take(config.max_samples)
        .map(|d| config.family.evaluate(&d, ch))
        .collect::<Result<Vec<_>>>()?;
    SearchOutcome::from_triples(triples)
}

impl SearchOutcome {
    /// Raw union and hull of already evaluated triples.
    pub fn from_triples(triples: Vec<BoundTriple>) -> Result<Self> {
        if triples.is_empty() {
            return Err(Error::InvalidDistribution(
                "no distributions sampled".into(),
            ));
        }
        Ok(SearchOutcome {
            hulled: RateRegion::from_triples(&triples, true),
            raw: RateRegion::from_triples(&triples, false),
            triples,
        })
    }
}
