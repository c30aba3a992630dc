//! Seeded invariant suite for the finite-alphabet bounds.
//!
//! Instance `i` of check group `g` draws everything from a ChaCha8 stream
//! keyed by `(seed, g, i)`, so instances are independent of each other and
//! of the worker count.

use cifc_core::dm::{
    dm_outer_triple, rtd_inner_triple, specialize_u, sumrate_outer_det, thm1_inner_triple,
    thm2_triple, BinningConstraints, Substitution,
};
use cifc_core::sample::random_simplex;
use cifc_core::{Alphabets, BoundTriple, DmChannel, JointDist, Var};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;

use Var::*;

/// Tolerance of the region identities.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Tolerance of identities that hold term by term.
pub const EXACT_TOL: f64 = 1e-12;
/// Grid points closer than this to the polytope boundary are skipped by the
/// feasibility comparison.
pub const BOUNDARY_SKIP: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifySettings {
    pub seed: u64,
    /// Explicit channel; otherwise a fresh random channel per instance.
    pub channel: Option<DmChannel>,
    pub alphabets: Alphabets,
    pub u_card: usize,
    pub samples: usize,
    pub fm_instances: usize,
    pub fm_grid: usize,
    pub u_draws: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckTally {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// Largest violation seen (a count of disagreeing grid points for the
    /// feasibility check).
    pub max_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub seed: u64,
    pub checks: Vec<CheckTally>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifySummary {
    pub fn check(&self, name: &str) -> Option<&CheckTally> {
        self.checks.iter().find(|c| c.name == name)
    }
}

type Outcome = (&'static str, f64, bool);

fn instance_rng(seed: u64, group: u64, index: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream((group << 40) | index as u64);
    r
}

pub fn random_semi_deterministic<R: RngCore>(
    r: &mut R,
    al: Alphabets,
) -> Result<DmChannel, CliError> {
    let f1 = (0..al.inputs())
        .map(|_| r.next_u32() as usize % al.y1)
        .collect();
    let kernel = (0..al.inputs())
        .flat_map(|_| random_simplex(r, al.y2))
        .collect();
    Ok(DmChannel::new(al, f1, kernel)?)
}

pub fn random_deterministic<R: RngCore>(r: &mut R, al: Alphabets) -> Result<DmChannel, CliError> {
    let f1 = (0..al.inputs())
        .map(|_| r.next_u32() as usize % al.y1)
        .collect();
    let f2 = (0..al.inputs())
        .map(|_| r.next_u32() as usize % al.y2)
        .collect();
    Ok(DmChannel::deterministic(al, f1, f2)?)
}

fn random_dist<R: RngCore>(r: &mut R, axes: Vec<(Var, usize)>) -> Result<JointDist, CliError> {
    let cells = axes.iter().map(|(_, c)| c).product();
    Ok(JointDist::new(axes, random_simplex(r, cells))?)
}

fn within(name: &'static str, err: f64, tol: f64) -> Outcome {
    (name, err, err <= tol)
}

fn semi_deterministic_instance(s: &VerifySettings, i: usize) -> Result<Vec<Outcome>, CliError> {
    let mut r = instance_rng(s.seed, 0, i);
    let ch = match &s.channel {
        Some(ch) => ch.clone(),
        None => random_semi_deterministic(&mut r, s.alphabets)?,
    };
    let al = ch.alphabets();
    let d = random_dist(&mut r, vec![(U, s.u_card), (X1, al.x1), (X2, al.x2)])?;
    let inner = thm1_inner_triple(&d, &ch)?;
    let outer = dm_outer_triple(&d, &ch)?;
    let special = specialize_u(&d, Substitution::U1EqualsY1U2EqualsU, &ch)?;
    let rtd = rtd_inner_triple(&special, &ch)?.triple();
    let joint = d.push_through(&ch)?;
    let det = (joint.mutual_information(&[Y1], &[X1], &[X2])? - joint.entropy(&[Y1], &[X2])?).abs();
    Ok(vec![
        within(
            "capacity_equals_outer",
            inner.max_abs_diff(&outer),
            IDENTITY_TOL,
        ),
        within(
            "binning_specialization_equals_outer",
            rtd.max_abs_diff(&outer),
            IDENTITY_TOL,
        ),
        within(
            "sum_rate_below_corner_sum",
            (inner.sum_max - inner.r1_max - inner.r2_max).max(0.0),
            IDENTITY_TOL,
        ),
        within("y1_determinism_identity", det, EXACT_TOL),
    ])
}

fn deterministic_instance(s: &VerifySettings, i: usize) -> Result<Vec<Outcome>, CliError> {
    let mut r = instance_rng(s.seed, 1, i);
    let ch = match &s.channel {
        Some(ch) => ch.clone(),
        None => random_deterministic(&mut r, s.alphabets)?,
    };
    let al = ch.alphabets();
    let inputs = random_dist(&mut r, vec![(X1, al.x1), (X2, al.x2)])?;
    let thm2 = thm2_triple(&inputs, &ch)?;
    let best = thm1_inner_triple(&specialize_u(&inputs, Substitution::UEqualsY2, &ch)?, &ch)?;
    let sum_outer = sumrate_outer_det(&inputs, &ch)?;
    let h_y2 = inputs.push_through(&ch)?.entropy(&[Y2], &[])?;

    let mut excess: f64 = 0.0;
    for _ in 0..s.u_draws {
        let mut table = Vec::with_capacity(inputs.table().len() * s.u_card);
        for p in inputs.table() {
            table.extend(random_simplex(&mut r, s.u_card).into_iter().map(|w| w * p));
        }
        let with_u = JointDist::new(vec![(X1, al.x1), (X2, al.x2), (U, s.u_card)], table)?;
        let t = thm1_inner_triple(&with_u, &ch)?;
        excess = excess.max(t.r2_max - h_y2);
    }
    Ok(vec![
        within(
            "deterministic_specialization",
            best.max_abs_diff(&thm2),
            IDENTITY_TOL,
        ),
        within(
            "deterministic_sum_rate_outer",
            (sum_outer - thm2.sum_max).abs(),
            EXACT_TOL,
        ),
        within(
            "u_equals_y2_attains_h_y2",
            (best.r2_max - h_y2).abs(),
            EXACT_TOL,
        ),
        within("random_u_below_h_y2", excess.max(0.0), EXACT_TOL),
    ])
}

fn feasibility_instance(s: &VerifySettings, i: usize) -> Result<Vec<Outcome>, CliError> {
    let mut r = instance_rng(s.seed, 2, i);
    let ch = match &s.channel {
        Some(ch) => ch.clone(),
        None => random_semi_deterministic(&mut r, s.alphabets)?,
    };
    let al = ch.alphabets();
    let d = random_dist(
        &mut r,
        vec![(U1, s.u_card), (U2, s.u_card), (X1, al.x1), (X2, al.x2)],
    )?;
    let rtd = rtd_inner_triple(&d, &ch)?;
    // Same test as `fm_feasible`, with the information terms computed once.
    let binning = BinningConstraints::evaluate(&d, &ch)?;
    let span = rtd.r1_raw.abs().max(rtd.r2).max(rtd.sum_raw.abs()).max(0.1) * 1.2;
    let steps = s.fm_grid.max(2) - 1;
    let mut mismatches = 0usize;
    for a in 0..=steps {
        for b in 0..=steps {
            let (r1, r2) = (
                span * a as f64 / steps as f64,
                span * b as f64 / steps as f64,
            );
            if rtd.boundary_distance(r1, r2) <= BOUNDARY_SKIP {
                continue;
            }
            if binning.feasible(r1, r2) != rtd.contains(r1, r2, 0.0) {
                mismatches += 1;
            }
        }
    }
    Ok(vec![(
        "binning_rate_elimination",
        mismatches as f64,
        mismatches == 0,
    )])
}

/// Families of checks, each drawing from its own random streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckGroup {
    /// Semi-deterministic channels with a random `P(U, X1, X2)`.
    SemiDeterministic,
    /// Deterministic channels with random inputs and random auxiliaries.
    Deterministic,
    /// Binning-rate elimination against the polytope on a rate grid.
    Feasibility,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 3] = [
        CheckGroup::SemiDeterministic,
        CheckGroup::Deterministic,
        CheckGroup::Feasibility,
    ];

    fn instances(self, s: &VerifySettings) -> usize {
        match self {
            CheckGroup::Feasibility => s.fm_instances,
            _ => s.samples,
        }
    }

    fn run(self, s: &VerifySettings, i: usize) -> Result<Vec<Outcome>, CliError> {
        match self {
            CheckGroup::SemiDeterministic => semi_deterministic_instance(s, i),
            CheckGroup::Deterministic => deterministic_instance(s, i),
            CheckGroup::Feasibility => feasibility_instance(s, i),
        }
    }
}

/// Runs every check group; deterministic-channel checks are skipped when an
/// explicit channel is not deterministic.
pub fn run_suite(s: &VerifySettings, pool: &rayon::ThreadPool) -> Result<VerifySummary, CliError> {
    run_groups(s, &CheckGroup::ALL, pool)
}

pub fn run_groups(
    s: &VerifySettings,
    groups: &[CheckGroup],
    pool: &rayon::ThreadPool,
) -> Result<VerifySummary, CliError> {
    if s.u_card == 0 {
        return Err(CliError::Precondition("u_card must be positive".into()));
    }
    let run_det = s.channel.as_ref().is_none_or(|c| c.is_deterministic());
    let mut results: Vec<Vec<Outcome>> = Vec::new();
    for &g in groups {
        if g == CheckGroup::Deterministic && !run_det {
            continue;
        }
        let batch = pool.install(|| {
            (0..g.instances(s))
                .into_par_iter()
                .map(|i| g.run(s, i))
                .collect::<Result<Vec<_>, _>>()
        })?;
        results.extend(batch);
    }

    let mut checks: Vec<CheckTally> = Vec::new();
    for (name, err, ok) in results.into_iter().flatten() {
        let idx = match checks.iter().position(|c| c.name == name) {
            Some(k) => k,
            None => {
                checks.push(CheckTally {
                    name,
                    passed: 0,
                    failed: 0,
                    max_error: 0.0,
                });
                checks.len() - 1
            }
        };
        let c = &mut checks[idx];
        if ok {
            c.passed += 1;
        } else {
            c.failed += 1;
        }
        c.max_error = c.max_error.max(err);
    }
    Ok(VerifySummary {
        seed: s.seed,
        passed: checks.iter().map(|c| c.passed).sum(),
        failed: checks.iter().map(|c| c.failed).sum(),
        checks,
    })
}

/// Region triple of a channel at one input distribution: the deterministic
/// triple when `Y2` is a function of the inputs, otherwise the capacity
/// triple with a constant auxiliary.
pub fn channel_triple(
    ch: &DmChannel,
    input: &JointDist,
) -> Result<(&'static str, BoundTriple), CliError> {
    let inputs = input.marginal(&[X1, X2])?;
    if ch.is_deterministic() {
        Ok(("thm2", thm2_triple(&inputs, ch)?))
    } else {
        let d = if input.has(U) {
            input.marginal(&[U, X1, X2])?
        } else {
            inputs.with_function_axis(U, 1, |_| 0)?
        };
        Ok(("thm1", thm1_inner_triple(&d, ch)?))
    }
}
