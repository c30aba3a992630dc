//! Closed-form bounds for the Gaussian cognitive interference channel with
//! strong interference (`|b| > 1`).
//!
//! * outer bound: `R1 <= log(1 + alpha P1)`,
//!   `R1 + R2 <= log(1 + |b|^2 P1 + P2 + 2 sqrt((1 - alpha) |b|^2 P1 P2))`;
//! * binning inner bound with the Gaussian auxiliaries
//!   `U1 ~ Y1`, `U2 ~ Y2` (general noise variances, or the `(1, 0)` choice
//!   that yields `outer - GAP(alpha)`);
//! * the time-sharing line between the two single-user corner points and the
//!   smallest factor `M` that scales it over the outer bound.
//!
//! Power split: `X1 = X1' + sqrt((1 - alpha) P1 / P2) X2` with
//! `Var[X1'] = alpha P1`, so the cooperative part of `X1` carries power
//! `(1 - alpha) P1` and both cross-variance terms use `1 - alpha`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::channel::GaussianChannel;
use crate::error::{Error, Result};
use crate::math::{exp2, linspace, log2, positive_part, sqrt};
use crate::region::{self, RateRegion};
use crate::triple::BoundTriple;

/// Default number of points in the `alpha` and `R1` grids.
pub const DEFAULT_GRID: usize = 512;

/// Bisection tolerance on the multiplicative factor.
pub const M_TOL: f64 = 1e-6;

/// Which power fraction multiplies the cross terms of `Var[X1 + a X2]` and
/// `Var[|b| X1 + X2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CrossTerms {
    /// `1 - alpha`, consistent with the total-power constraint on `X1`.
    #[default]
    Complement,
    /// `alpha`, evaluated for comparison only. With this choice the inner
    /// sum rate no longer equals the outer one minus `GAP(alpha)`.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RhoMode {
    /// Correlation that minimizes `I(U1; U2 | X2)`.
    Auto,
    /// Fixed noise correlation, `|rho| <= 1`.
    Fixed(Complex64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerParams {
    pub alpha: f64,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
    pub rho: RhoMode,
    pub cross_terms: CrossTerms,
}

impl InnerParams {
    /// `sigma1^2 = 1`, `sigma2^2 = 0`.
    pub fn special(alpha: f64) -> Self {
        Self {
            alpha,
            sigma1_sq: 1.0,
            sigma2_sq: 0.0,
            rho: RhoMode::Auto,
            cross_terms: CrossTerms::Complement,
        }
    }

    fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        for (name, v) in [("sigma1_sq", self.sigma1_sq), ("sigma2_sq", self.sigma2_sq)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::OutOfRange { name, value: v });
            }
        }
        if let RhoMode::Fixed(rho) = self.rho {
            if rho.norm().is_nan() || rho.norm() > 1.0 {
                return Err(Error::OutOfRange {
                    name: "|rho|",
                    value: rho.norm(),
                });
            }
        }
        Ok(())
    }
}

/// Inner-bound triple plus a flag raised when `sigma1^2 = 0` and
/// `alpha P1 = 0` send the first logarithm to minus infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerEvaluation {
    pub triple: BoundTriple,
    pub degenerate: bool,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
        })
    }
}

/// `log2(1 + P1)`, the largest single-user rate of the cognitive pair.
pub fn r1_limit(ch: &GaussianChannel) -> f64 {
    log2(1.0 + ch.p1())
}

fn check_r1(ch: &GaussianChannel, r1: f64) -> Result<()> {
    if r1 >= 0.0 && r1 <= r1_limit(ch) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "r1",
            value: r1,
        })
    }
}

/// `(Var[X1 + a X2], Var[|b| X1 + X2])` under the power split `alpha`.
pub fn cross_variances(ch: &GaussianChannel, alpha: f64) -> Result<(f64, f64)> {
    cross_variances_with(ch, alpha, CrossTerms::Complement)
}

pub fn cross_variances_with(
    ch: &GaussianChannel,
    alpha: f64,
    terms: CrossTerms,
) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    let share = match terms {
        CrossTerms::Complement => 1.0 - alpha,
        CrossTerms::Literal => alpha,
    };
    let (p1, p2, a, b) = (ch.p1(), ch.p2(), ch.a(), ch.abs_b());
    let v1 = p1 + a.norm_sqr() * p2 + 2.0 * a.re * sqrt(share * p1 * p2);
    let v2 = b * b * p1 + p2 + 2.0 * sqrt(share) * b * sqrt(p1 * p2);
    Ok((v1.max(0.0), v2))
}

/// Outer bound for power split `alpha`; `r2_max` is unbounded.
pub fn outer_triple(ch: &GaussianChannel, alpha: f64) -> Result<BoundTriple> {
    ch.require_strong()?;
    check_alpha(alpha)?;
    let (p1, p2, b) = (ch.p1(), ch.p2(), ch.abs_b());
    Ok(BoundTriple {
        r1_max: log2(1.0 + alpha * p1),
        r2_max: f64::INFINITY,
        sum_max: log2(1.0 + b * b * p1 + p2 + 2.0 * sqrt((1.0 - alpha) * b * b * p1 * p2)),
    })
}

/// Boundary of the outer bound as a function of `R1 in [0, log2(1 + P1)]`,
/// obtained by substituting `alpha P1 = 2^R1 - 1`.
pub fn outer_r2_of_r1(ch: &GaussianChannel, r1: f64) -> Result<f64> {
    ch.require_strong()?;
    check_r1(ch, r1)?;
    Ok(outer_r2_unchecked(ch, r1))
}

fn outer_r2_unchecked(ch: &GaussianChannel, r1: f64) -> f64 {
    let (p1, p2, b) = (ch.p1(), ch.p2(), ch.abs_b());
    let cooperative = positive_part(1.0 + p1 - exp2(r1));
    log2(1.0 + b * b * p1 + p2 + 2.0 * sqrt(b * b * cooperative * p2)) - r1
}

/// `GAP(alpha) = log2(1 + v1 / (1 + v1))`, always in `[0, 1)`.
pub fn gap_alpha(ch: &GaussianChannel, alpha: f64) -> Result<f64> {
    let (v1, _) = cross_variances(ch, alpha)?;
    Ok(log2(1.0 + v1 / (1.0 + v1)))
}

/// Inner bound for general auxiliary noise variances and correlation.
pub fn inner_triple_general(ch: &GaussianChannel, params: &InnerParams) -> Result<InnerEvaluation> {
    params.validate()?;
    let (v1, v2) = cross_variances_with(ch, params.alpha, params.cross_terms)?;
    let (p1, b) = (ch.p1(), ch.abs_b());
    let (s1, s2) = (params.sigma1_sq, params.sigma2_sq);
    let private = params.alpha * p1;
    let private_rx2 = b * b * private;

    let degenerate = s1 == 0.0 && private == 0.0;
    let a_raw = if degenerate {
        f64::NEG_INFINITY
    } else {
        log2(s1 + private) - log2(s1 + v1 / (1.0 + v1))
    };

    let leak = if private_rx2 == 0.0 {
        0.0
    } else {
        s2 * private_rx2 / (s2 + private_rx2)
    };
    let b_raw = log2(1.0 + v2) - log2(1.0 + leak);

    // -I(U1; U2 | X2) for the Gaussian auxiliaries.
    let spread = sqrt(s1 * s2);
    let covariance_sq = match params.rho {
        RhoMode::Auto => {
            let c = positive_part(b * private - spread);
            c * c
        }
        RhoMode::Fixed(rho) => (Complex64::new(b * private, 0.0) + rho * spread).norm_sqr(),
    };
    let correction = if covariance_sq == 0.0 {
        0.0
    } else {
        log2(1.0 - covariance_sq / ((private_rx2 + s2) * (private + s1)))
    };
    let c_raw = a_raw + b_raw + correction;

    let triple = BoundTriple::clamped(finite_or_zero(a_raw), b_raw, finite_or_zero(c_raw));
    Ok(InnerEvaluation { triple, degenerate })
}

fn finite_or_zero(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        0.0
    }
}

/// Inner bound with `sigma1^2 = 1`, `sigma2^2 = 0`:
/// `R1 <= log2(1 + alpha P1) - GAP`, `R1 + R2 <= log2(1 + v2) - GAP`.
/// The standalone `R2 <= log2(1 + v2)` is implied by the outer sum rate and
/// kept only so that redundancy can be checked.
pub fn inner_triple_special(ch: &GaussianChannel, alpha: f64) -> Result<BoundTriple> {
    let (_, v2) = cross_variances(ch, alpha)?;
    let gap = gap_alpha(ch, alpha)?;
    let rx2 = log2(1.0 + v2);
    Ok(BoundTriple::clamped(
        log2(1.0 + alpha * ch.p1()) - gap,
        rx2,
        rx2 - gap,
    ))
}

/// Rate of the primary pair when both transmitters beamform to receiver 2.
pub fn beamforming_rate(ch: &GaussianChannel) -> f64 {
    let s = ch.abs_b() * sqrt(ch.p1()) + sqrt(ch.p2());
    log2(1.0 + s * s)
}

/// Time sharing between `(log2(1 + P1), 0)` and `(0, beamforming_rate)`.
pub fn tdma_r2_of_r1(ch: &GaussianChannel, r1: f64) -> Result<f64> {
    check_r1(ch, r1)?;
    Ok(tdma_unchecked(ch, r1))
}

fn tdma_unchecked(ch: &GaussianChannel, r1: f64) -> f64 {
    let limit = r1_limit(ch);
    if limit == 0.0 {
        return beamforming_rate(ch);
    }
    (1.0 - r1 / limit) * beamforming_rate(ch)
}

pub fn tdma_region(ch: &GaussianChannel) -> RateRegion {
    RateRegion::from_points(&[(0.0, beamforming_rate(ch)), (r1_limit(ch), 0.0)], true)
}

/// Left-hand side of the linearized multiplicative-gap condition,
/// `(1 - R1 / (M L)) M T - T + R1` with `L = log2(1 + P1)` and `T` the
/// beamforming rate. Nonnegative iff the scaled time-sharing line clears the
/// linear upper bound `T - R1` on the outer boundary.
pub fn linearized_condition(ch: &GaussianChannel, r1: f64, m: f64) -> f64 {
    let limit = r1_limit(ch);
    let t = beamforming_rate(ch);
    let scaled = if limit == 0.0 {
        m * t
    } else {
        (1.0 - r1 / (m * limit)) * m * t
    };
    scaled - t + r1
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplicativeGap {
    pub factor: f64,
    /// Grid abscissa that needs the largest factor.
    pub worst_r1: f64,
}

/// Smallest `M >= 1` (bisection to [`M_TOL`]) with
/// `M tdma(R1 / M) >= outer(R1)` on a uniform grid of `R1`.
pub fn min_multiplicative_m(ch: &GaussianChannel, r1_grid: usize) -> Result<MultiplicativeGap> {
    ch.require_strong()?;
    if r1_grid == 0 {
        return Err(Error::OutOfRange {
            name: "r1 grid size",
            value: 0.0,
        });
    }
    let grid: Vec<f64> = linspace(0.0, r1_limit(ch), r1_grid).collect();
    let targets: Vec<f64> = grid.iter().map(|r1| outer_r2_unchecked(ch, *r1)).collect();
    let holds = |m: f64, r1: f64, target: f64| m * tdma_unchecked(ch, r1 / m) >= target;

    let mut factor = 1.0;
    let mut worst_r1 = 0.0;
    for (r1, target) in grid.iter().zip(&targets) {
        if holds(factor, *r1, *target) {
            continue;
        }
        let mut hi = factor * 2.0;
        while !holds(hi, *r1, *target) {
            hi *= 2.0;
            if hi > 1e12 {
                return Ok(MultiplicativeGap {
                    factor: f64::INFINITY,
                    worst_r1: *r1,
                });
            }
        }
        let mut lo = factor;
        while hi - lo > M_TOL {
            let mid = 0.5 * (lo + hi);
            if holds(mid, *r1, *target) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        factor = hi;
        worst_r1 = *r1;
    }
    Ok(MultiplicativeGap { factor, worst_r1 })
}

/// Outer region: hull of the outer triples over the `alpha` grid.
pub fn outer_region(ch: &GaussianChannel, alpha_grid: usize) -> Result<RateRegion> {
    let triples = linspace(0.0, 1.0, alpha_grid.max(2))
        .map(|a| outer_triple(ch, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(RateRegion::from_triples(&triples, true))
}

/// Inner region: hull of the `sigma = (1, 0)` inner triples over the `alpha` grid.
pub fn inner_region(ch: &GaussianChannel, alpha_grid: usize) -> Result<RateRegion> {
    let triples = linspace(0.0, 1.0, alpha_grid.max(2))
        .map(|a| inner_triple_special(ch, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(RateRegion::from_triples(&triples, true))
}

/// Gap certificate for one channel.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub channel: GaussianChannel,
    /// Region distance between the outer hull and the inner hull.
    pub additive_gap_bits: f64,
    /// Largest per-`alpha` componentwise difference `outer - inner`.
    pub per_alpha_gap_bits: f64,
    /// `alpha` attaining `per_alpha_gap_bits`.
    pub worst_alpha: f64,
    /// Largest deviation of the per-`alpha` difference from `GAP(alpha)`.
    pub per_alpha_identity_error: f64,
    /// Smallest factor scaling the time-sharing line over the outer bound.
    pub multiplicative_gap: f64,
    pub worst_r1: f64,
    /// Same quantity measured as a region distance.
    pub region_multiplicative_gap: f64,
    pub alpha_grid: usize,
    pub frontier_grid: usize,
}

/// Builds both regions and measures the additive and multiplicative gaps.
///
/// `inner_penalty` lowers every inner rate by a fixed number of bits; it is
/// zero except when exercising the failure path of a certification run.
pub fn additive_gap_report(
    ch: &GaussianChannel,
    alpha_grid: usize,
    frontier_grid: usize,
) -> Result<GapReport> {
    gap_report_with_penalty(ch, alpha_grid, frontier_grid, 0.0)
}

pub fn gap_report_with_penalty(
    ch: &GaussianChannel,
    alpha_grid: usize,
    frontier_grid: usize,
    inner_penalty: f64,
) -> Result<GapReport> {
    ch.require_strong()?;
    let alphas: Vec<f64> = linspace(0.0, 1.0, alpha_grid.max(2)).collect();
    let mut outer = Vec::with_capacity(alphas.len());
    let mut inner = Vec::with_capacity(alphas.len());
    let mut per_alpha_gap_bits = 0.0;
    let mut worst_alpha = alphas[0];
    let mut per_alpha_identity_error: f64 = 0.0;
    for &alpha in &alphas {
        let o = outer_triple(ch, alpha)?;
        let mut i = inner_triple_special(ch, alpha)?;
        if inner_penalty != 0.0 {
            i = BoundTriple::clamped(
                i.r1_max - inner_penalty,
                i.r2_max - inner_penalty,
                i.sum_max - inner_penalty,
            );
        }
        let gap = gap_alpha(ch, alpha)?;
        let diff_a = o.r1_max - i.r1_max;
        let diff_c = o.sum_max - i.sum_max;
        let diff = diff_a.max(diff_c);
        if diff > per_alpha_gap_bits {
            per_alpha_gap_bits = diff;
            worst_alpha = alpha;
        }
        // Clamping at zero only ever shrinks the difference below GAP(alpha).
        if i.r1_max > 0.0 {
            per_alpha_identity_error = per_alpha_identity_error.max((diff_a - gap).abs());
        }
        if i.sum_max > 0.0 {
            per_alpha_identity_error = per_alpha_identity_error.max((diff_c - gap).abs());
        }
        outer.push(o);
        inner.push(i);
    }
    let outer = RateRegion::from_triples(&outer, true);
    let inner = RateRegion::from_triples(&inner, true);
    let additive_gap_bits =
        region::additive_gap(&outer, &inner, frontier_grid, region::DEFAULT_GAP_TOL);
    let m = min_multiplicative_m(ch, frontier_grid)?;
    let region_multiplicative_gap = region::multiplicative_gap(
        &outer,
        &tdma_region(ch),
        frontier_grid,
        region::DEFAULT_GAP_TOL,
    );
    Ok(GapReport {
        channel: *ch,
        additive_gap_bits,
        per_alpha_gap_bits,
        worst_alpha,
        per_alpha_identity_error,
        multiplicative_gap: m.factor,
        worst_r1: m.worst_r1,
        region_multiplicative_gap,
        alpha_grid: alphas.len(),
        frontier_grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> GaussianChannel {
        GaussianChannel::real(0.0, 2.0, 1.0, 1.0).unwrap()
    }

    fn silent() -> GaussianChannel {
        GaussianChannel::real(0.0, 2.0, 0.0, 0.0).unwrap()
    }

    fn close(x: f64, y: f64, tol: f64) {
        assert!((x - y).abs() <= tol, "{x} vs {y}");
    }

    #[test]
    fn cross_variance_examples() {
        assert_eq!(cross_variances(&unit(), 1.0).unwrap(), (1.0, 5.0));
        assert_eq!(cross_variances(&unit(), 0.0).unwrap(), (1.0, 9.0));
        assert_eq!(cross_variances(&silent(), 0.3).unwrap(), (0.0, 0.0));
        assert!(cross_variances(&unit(), 1.5).is_err());
    }

    #[test]
    fn outer_examples() {
        let t = outer_triple(&unit(), 1.0).unwrap();
        assert_eq!(t.r1_max, 1.0);
        assert!(t.r2_max.is_infinite());
        close(t.sum_max, 6f64.log2(), 1e-15);
        let t = outer_triple(&unit(), 0.0).unwrap();
        assert_eq!(t.r1_max, 0.0);
        close(t.sum_max, 10f64.log2(), 1e-15);
        assert_eq!(outer_triple(&silent(), 0.5).unwrap().sum_max, 0.0);

        let weak = GaussianChannel::real(0.0, 0.5, 1.0, 1.0).unwrap();
        assert!(matches!(
            outer_triple(&weak, 0.5),
            Err(Error::WeakRegime { .. })
        ));
    }

    #[test]
    fn outer_boundary_examples() {
        close(outer_r2_of_r1(&unit(), 0.0).unwrap(), 10f64.log2(), 1e-12);
        close(
            outer_r2_of_r1(&unit(), 1.0).unwrap(),
            6f64.log2() - 1.0,
            1e-12,
        );
        assert!(outer_r2_of_r1(&unit(), 1.0 + 1e-9).is_err());
        for k in 0..=20 {
            let alpha = k as f64 / 20.0;
            let t = outer_triple(&unit(), alpha).unwrap();
            close(
                outer_r2_of_r1(&unit(), t.r1_max).unwrap(),
                t.sum_max - t.r1_max,
                1e-12,
            );
        }
    }

    #[test]
    fn gap_examples() {
        assert_eq!(gap_alpha(&silent(), 0.4).unwrap(), 0.0);
        for alpha in [0.0, 0.3, 1.0] {
            close(gap_alpha(&unit(), alpha).unwrap(), 1.5f64.log2(), 1e-15);
        }
        let loud = GaussianChannel::real(5.0, 10.0, 1e6, 1e6).unwrap();
        assert!(gap_alpha(&loud, 0.0).unwrap() < 1.0);
    }

    #[test]
    fn inner_examples() {
        let t = inner_triple_general(&unit(), &InnerParams::special(1.0))
            .unwrap()
            .triple;
        close(t.r1_max, 1.0 - 1.5f64.log2(), 1e-15);
        close(t.sum_max, 2.0, 1e-15);
        let s = inner_triple_special(&unit(), 1.0).unwrap();
        assert!(t.max_abs_diff(&s) <= 1e-12);

        let t = inner_triple_special(&unit(), 0.0).unwrap();
        assert_eq!(t.r1_max, 0.0);
        close(t.sum_max, 10f64.log2() - 1.5f64.log2(), 1e-15);

        assert_eq!(
            inner_triple_special(&silent(), 0.5).unwrap(),
            BoundTriple::ORIGIN
        );
        let e = inner_triple_general(&silent(), &InnerParams::special(0.5)).unwrap();
        assert_eq!(e.triple, BoundTriple::ORIGIN);
        assert!(!e.degenerate);
    }

    #[test]
    fn inner_degenerate_flag() {
        let params = InnerParams {
            sigma1_sq: 0.0,
            ..InnerParams::special(0.0)
        };
        let e = inner_triple_general(&unit(), &params).unwrap();
        assert!(e.degenerate);
        assert_eq!(e.triple.r1_max, 0.0);
        assert_eq!(e.triple.sum_max, 0.0);
    }

    #[test]
    fn inner_param_validation() {
        let mut p = InnerParams::special(0.5);
        p.rho = RhoMode::Fixed(Complex64::new(0.8, 0.8));
        assert!(inner_triple_general(&unit(), &p).is_err());
        p.rho = RhoMode::Auto;
        p.sigma2_sq = -1.0;
        assert!(inner_triple_general(&unit(), &p).is_err());
    }

    #[test]
    fn fixed_rho_at_optimum_matches_auto() {
        let mut p = InnerParams {
            sigma2_sq: 4.0,
            ..InnerParams::special(0.5)
        };
        let auto = inner_triple_general(&unit(), &p).unwrap().triple;
        // |b| P1 alpha = 1, sqrt(s1 s2) = 2, so the optimum is rho = -1/2.
        p.rho = RhoMode::Fixed(Complex64::new(-0.5, 0.0));
        let fixed = inner_triple_general(&unit(), &p).unwrap().triple;
        assert!(auto.max_abs_diff(&fixed) <= 1e-15);
        p.rho = RhoMode::Fixed(Complex64::new(0.5, 0.0));
        let worse = inner_triple_general(&unit(), &p).unwrap().triple;
        assert!(worse.sum_max < auto.sum_max);
    }

    #[test]
    fn tdma_examples() {
        close(tdma_r2_of_r1(&unit(), 0.0).unwrap(), 10f64.log2(), 1e-15);
        assert_eq!(tdma_r2_of_r1(&unit(), 1.0).unwrap(), 0.0);
        close(
            tdma_r2_of_r1(&unit(), 0.5).unwrap(),
            0.5 * 10f64.log2(),
            1e-15,
        );
        assert!(tdma_r2_of_r1(&unit(), 1.2).is_err());
    }

    #[test]
    fn multiplicative_examples() {
        let m = min_multiplicative_m(&unit(), 512).unwrap();
        assert!(m.factor >= 1.0 && m.factor <= 2.0 + 1e-6);

        let no_cognitive_power = GaussianChannel::real(0.0, 2.0, 0.0, 1.0).unwrap();
        assert_eq!(
            min_multiplicative_m(&no_cognitive_power, 512)
                .unwrap()
                .factor,
            1.0
        );

        let weak = GaussianChannel::real(0.0, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            min_multiplicative_m(&weak, 16),
            Err(Error::WeakRegime { .. })
        ));
    }

    #[test]
    fn linearized_endpoints() {
        let ch = unit();
        assert!(linearized_condition(&ch, 0.0, 1.0) >= 0.0);
        assert!(linearized_condition(&ch, r1_limit(&ch), 2.0) >= 0.0);
        assert!(linearized_condition(&ch, r1_limit(&ch), 1.5) < 0.0);
    }

    #[test]
    fn report_on_silent_channel() {
        let r = additive_gap_report(&silent(), 64, 64).unwrap();
        assert_eq!(r.additive_gap_bits, 0.0);
        assert_eq!(r.per_alpha_gap_bits, 0.0);
        assert_eq!(r.multiplicative_gap, 1.0);
    }

    #[test]
    fn literal_cross_terms_differ() {
        let (v1, v2) = cross_variances_with(&unit(), 1.0, CrossTerms::Literal).unwrap();
        assert_eq!((v1, v2), (1.0, 9.0));
    }
}
