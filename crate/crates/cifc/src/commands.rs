//! Subcommand implementations. Each writes its files under `out` and returns
//! the exit code together with a one-line summary.

use std::path::{Path, PathBuf};

use cifc_core::dm::{default_u_card, RegionFamily, SearchOutcome};
use cifc_core::gaussian::{
    additive_gap_report, inner_region, inner_triple_general, outer_region, tdma_region, CrossTerms,
    InnerParams,
};
use cifc_core::sample::sample_joint;
use cifc_core::{
    BoundTriple, DmChannel, Error as CoreError, GaussianChannel, JointDist, RateRegion, Var,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{DmChannelRecord, GaussianRecord, SamplerRecord, SweepConfig};
use crate::error::{CliError, EXIT_NOT_CERTIFIED, EXIT_OK};
use crate::output::{finite_or_none, fmt_f64, write_csv, write_json, write_polyline};
use crate::sweep::{gap_sweep, thread_pool, SweepRow};
use crate::verify::{channel_triple, run_suite, VerifySettings};

/// Certification thresholds of the gap sweep.
pub const ADDITIVE_BOUND_BITS: f64 = 1.0;
pub const MULTIPLICATIVE_BOUND: f64 = 2.0;
pub const CERT_TOL: f64 = 1e-6;

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub out: PathBuf,
    pub seed: Option<u64>,
    pub alpha_grid: Option<usize>,
    pub r1_grid: Option<usize>,
    pub threads: Option<usize>,
}

impl RunOptions {
    pub fn new(out: impl Into<PathBuf>) -> Self {
        Self {
            out: out.into(),
            ..Self::default()
        }
    }

    fn seed(&self, cfg: &SweepConfig) -> Option<u64> {
        self.seed.or(cfg.seed)
    }

    fn grids(&self, cfg: &SweepConfig) -> Result<(usize, usize), CliError> {
        let a = self.alpha_grid.unwrap_or(cfg.alpha_grid_size);
        let r = self.r1_grid.unwrap_or(cfg.r1_grid_size);
        if a < 2 || r < 2 {
            return Err(CliError::Precondition(
                "grid sizes must be at least 2".into(),
            ));
        }
        Ok((a, r))
    }

    fn out_dir(&self) -> Result<&Path, CliError> {
        std::fs::create_dir_all(&self.out)?;
        Ok(&self.out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub summary: String,
    pub files: Vec<PathBuf>,
}

fn record(ch: &GaussianChannel) -> GaussianRecord {
    GaussianRecord {
        a_re: ch.a().re,
        a_im: ch.a().im,
        b_re: ch.b().re,
        b_im: ch.b().im,
        p1: ch.p1(),
        p2: ch.p2(),
    }
}

#[derive(Serialize)]
struct RegionMeta {
    channel: GaussianRecord,
    alpha_grid: usize,
    r1_grid: usize,
    cross_terms: &'static str,
    additive_gap_bits: f64,
    per_alpha_gap_bits: f64,
    worst_alpha: f64,
    multiplicative_gap: Option<f64>,
    worst_r1: f64,
    region_multiplicative_gap: Option<f64>,
    outer_vertices: usize,
    inner_vertices: usize,
}

fn literal_inner_region(ch: &GaussianChannel, alpha_grid: usize) -> Result<RateRegion, CliError> {
    let triples = (0..alpha_grid)
        .map(|k| {
            let alpha = k as f64 / (alpha_grid - 1) as f64;
            let params = InnerParams {
                cross_terms: CrossTerms::Literal,
                ..InnerParams::special(alpha)
            };
            inner_triple_general(ch, &params).map(|e| e.triple)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RateRegion::from_triples(&triples, true))
}

/// Writes the outer, inner and time-sharing frontiers of one channel.
pub fn gaussian_region(cfg: &SweepConfig, opts: &RunOptions) -> Result<Outcome, CliError> {
    let ch = cfg.gaussian_channel()?;
    let (alpha_grid, r1_grid) = opts.grids(cfg)?;
    let report = additive_gap_report(&ch, alpha_grid, r1_grid)?;
    let outer = outer_region(&ch, alpha_grid)?;
    let inner = match CrossTerms::from(cfg.cross_terms) {
        CrossTerms::Complement => inner_region(&ch, alpha_grid)?,
        CrossTerms::Literal => literal_inner_region(&ch, alpha_grid)?,
    };
    let tdma = tdma_region(&ch);
    let dir = opts.out_dir()?;
    let files = vec![
        write_polyline(&dir.join("outer.csv"), &outer.boundary())?,
        write_polyline(&dir.join("inner.csv"), &inner.boundary())?,
        write_polyline(&dir.join("tdma.csv"), &tdma.boundary())?,
        write_polyline(&dir.join("tdma_x2.csv"), &tdma.scaled(2.0).boundary())?,
        write_json(
            &dir.join("region.json"),
            &RegionMeta {
                channel: record(&ch),
                alpha_grid,
                r1_grid,
                cross_terms: match cfg.cross_terms {
                    crate::config::CrossTermsName::Complement => "complement",
                    crate::config::CrossTermsName::Literal => "literal",
                },
                additive_gap_bits: report.additive_gap_bits,
                per_alpha_gap_bits: report.per_alpha_gap_bits,
                worst_alpha: report.worst_alpha,
                multiplicative_gap: finite_or_none(report.multiplicative_gap),
                worst_r1: report.worst_r1,
                region_multiplicative_gap: finite_or_none(report.region_multiplicative_gap),
                outer_vertices: outer.vertices().len(),
                inner_vertices: inner.vertices().len(),
            },
        )?,
    ];
    Ok(Outcome {
        exit_code: EXIT_OK,
        summary: format!(
            "additive gap {} bits, multiplicative gap {}",
            fmt_f64(report.additive_gap_bits),
            fmt_f64(report.multiplicative_gap)
        ),
        files,
    })
}

#[derive(Serialize)]
struct SweepSummary {
    channels: usize,
    alpha_grid: usize,
    r1_grid: usize,
    inner_penalty_bits: f64,
    max_additive_gap_bits: f64,
    max_multiplicative_gap: Option<f64>,
    max_per_alpha_gap_bits: f64,
    max_per_alpha_identity_error: f64,
    worst_additive_channel: GaussianRecord,
    worst_multiplicative_channel: GaussianRecord,
    additive_bound_bits: f64,
    multiplicative_bound: f64,
    certified: bool,
}

pub const SWEEP_HEADER: [&str; 9] = [
    "a_re",
    "a_im",
    "abs_b",
    "p1",
    "p2",
    "additive_gap_bits",
    "mult_gap",
    "worst_alpha",
    "worst_r1",
];

/// Certifies the one-bit and factor-two gaps over a grid of channels.
pub fn gaussian_gap_sweep(cfg: &SweepConfig, opts: &RunOptions) -> Result<Outcome, CliError> {
    let channels = cfg.sweep_channels()?;
    let (alpha_grid, r1_grid) = opts.grids(cfg)?;
    if cfg.inner_penalty_bits.is_nan() || cfg.inner_penalty_bits < 0.0 {
        return Err(CliError::Precondition(
            "inner_penalty_bits must be nonnegative".into(),
        ));
    }
    let pool = thread_pool(opts.threads)?;
    let reports = gap_sweep(
        &channels,
        alpha_grid,
        r1_grid,
        cfg.inner_penalty_bits,
        &pool,
    )?;
    let rows: Vec<SweepRow> = reports.iter().map(SweepRow::from).collect();

    let argmax = |key: fn(&SweepRow) -> f64| {
        rows.iter().enumerate().fold(
            0,
            |best, (k, r)| if key(r) > key(&rows[best]) { k } else { best },
        )
    };
    let wa = argmax(|r| r.additive_gap_bits);
    let wm = argmax(|r| r.mult_gap);
    let max_add = rows[wa].additive_gap_bits;
    let max_mult = rows[wm].mult_gap;
    let certified =
        max_add <= ADDITIVE_BOUND_BITS + CERT_TOL && max_mult <= MULTIPLICATIVE_BOUND + CERT_TOL;

    let dir = opts.out_dir()?;
    let csv_rows = rows.iter().map(|r| {
        [
            r.a_re,
            r.a_im,
            r.abs_b,
            r.p1,
            r.p2,
            r.additive_gap_bits,
            r.mult_gap,
            r.worst_alpha,
            r.worst_r1,
        ]
        .map(fmt_f64)
    });
    let files = vec![
        write_csv(&dir.join("gap_sweep.csv"), &SWEEP_HEADER, csv_rows)?,
        write_json(
            &dir.join("gap_sweep.json"),
            &SweepSummary {
                channels: rows.len(),
                alpha_grid,
                r1_grid,
                inner_penalty_bits: cfg.inner_penalty_bits,
                max_additive_gap_bits: max_add,
                max_multiplicative_gap: finite_or_none(max_mult),
                max_per_alpha_gap_bits: rows
                    .iter()
                    .map(|r| r.per_alpha_gap_bits)
                    .fold(0.0, f64::max),
                max_per_alpha_identity_error: rows
                    .iter()
                    .map(|r| r.per_alpha_identity_error)
                    .fold(0.0, f64::max),
                worst_additive_channel: record(&channels[wa]),
                worst_multiplicative_channel: record(&channels[wm]),
                additive_bound_bits: ADDITIVE_BOUND_BITS,
                multiplicative_bound: MULTIPLICATIVE_BOUND,
                certified,
            },
        )?,
    ];
    Ok(Outcome {
        exit_code: if certified {
            EXIT_OK
        } else {
            EXIT_NOT_CERTIFIED
        },
        summary: format!(
            "{} channels: max additive gap {} bits, max multiplicative gap {}: {}",
            rows.len(),
            fmt_f64(max_add),
            fmt_f64(max_mult),
            if certified {
                "certified"
            } else {
                "NOT certified"
            }
        ),
        files,
    })
}

#[derive(Serialize)]
struct TripleRecord {
    family: &'static str,
    a: f64,
    b: Option<f64>,
    c: f64,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    #[serde(flatten)]
    summary: &'a crate::verify::VerifySummary,
    alphabets: [usize; 4],
    u_card: usize,
    samples: usize,
    fm_instances: usize,
    fm_grid: usize,
    u_draws: usize,
    channel_triple: Option<TripleRecord>,
}

fn dm_channel(cfg: &SweepConfig) -> Result<Option<DmChannel>, CliError> {
    cfg.dm
        .channel
        .as_ref()
        .map(DmChannelRecord::to_channel)
        .transpose()
}

fn check_cells(cells: usize, cap: usize) -> Result<(), CliError> {
    if cells > cap {
        return Err(CoreError::CapExceeded { size: cells, cap }.into());
    }
    Ok(())
}

/// Runs the seeded invariant suite; exit 3 when any check fails.
pub fn dm_verify(cfg: &SweepConfig, opts: &RunOptions) -> Result<Outcome, CliError> {
    let seed = opts.seed(cfg).ok_or_else(|| {
        CliError::Precondition("dm verify samples randomly and needs a seed".into())
    })?;
    let channel = dm_channel(cfg)?;
    let alphabets = channel
        .as_ref()
        .map_or(cfg.dm.alphabets(), DmChannel::alphabets);
    if [alphabets.x1, alphabets.x2, alphabets.y1, alphabets.y2].contains(&0) {
        return Err(CliError::Precondition(
            "alphabet sizes must be positive".into(),
        ));
    }
    let u_card = cfg.dm.u_card.unwrap_or(alphabets.inputs() + 1);
    check_cells(u_card * u_card * alphabets.inputs(), cfg.dm.cell_cap)?;

    let reported = match &channel {
        Some(ch) => {
            let input = match &cfg.dm.input {
                Some(rec) => rec.to_dist()?,
                None => JointDist::uniform(vec![(Var::X1, alphabets.x1), (Var::X2, alphabets.x2)])?,
            };
            Some(channel_triple(ch, &input)?)
        }
        None => None,
    };

    let settings = VerifySettings {
        seed,
        channel,
        alphabets,
        u_card,
        samples: cfg.dm.samples,
        fm_instances: cfg.dm.fm_instances,
        fm_grid: cfg.dm.fm_grid,
        u_draws: cfg.dm.u_draws,
    };
    let pool = thread_pool(opts.threads)?;
    let summary = run_suite(&settings, &pool)?;

    let dir = opts.out_dir()?;
    let files = vec![write_json(
        &dir.join("dm_verify.json"),
        &VerifyReport {
            summary: &summary,
            alphabets: [alphabets.x1, alphabets.x2, alphabets.y1, alphabets.y2],
            u_card,
            samples: settings.samples,
            fm_instances: settings.fm_instances,
            fm_grid: settings.fm_grid,
            u_draws: settings.u_draws,
            channel_triple: reported.map(|(family, t)| TripleRecord {
                family,
                a: t.r1_max,
                b: finite_or_none(t.r2_max),
                c: t.sum_max,
            }),
        },
    )?];

    let mut line = format!("{} passed, {} failed", summary.passed, summary.failed);
    if let Some((family, t)) = reported {
        line.push_str(&format!(
            "; {family} triple ({}, {}, {})",
            fmt_f64(t.r1_max),
            fmt_f64(t.r2_max),
            fmt_f64(t.sum_max)
        ));
    }
    Ok(Outcome {
        exit_code: if summary.failed == 0 {
            EXIT_OK
        } else {
            EXIT_NOT_CERTIFIED
        },
        summary: line,
        files,
    })
}

#[derive(Serialize)]
struct DistTriple {
    family: &'static str,
    dist_id: usize,
    a: f64,
    b: Option<f64>,
    c: f64,
}

#[derive(Serialize)]
struct FamilyMeta {
    family: &'static str,
    channel: DmChannelRecord,
    sampler: SamplerRecord,
    seed: Option<u64>,
    /// Upper limit on the number of sampled tables.
    sample_limit: usize,
    distributions: usize,
    u_card: usize,
    /// The auxiliary cardinality is a heuristic, not a proved bound.
    u_card_rule: &'static str,
    hull_vertices: Vec<(f64, f64)>,
    raw_vertices: Vec<(f64, f64)>,
}

/// Evaluates each region family on sampled distributions and writes the
/// hulled and raw frontiers.
pub fn dm_region(cfg: &SweepConfig, opts: &RunOptions) -> Result<Outcome, CliError> {
    let ch = dm_channel(cfg)?
        .ok_or_else(|| CliError::Precondition("config has no `dm.channel`".into()))?;
    let families = cfg.dm.families()?;
    let seed = opts.seed(cfg);
    let (sampler, limit) = cfg.dm.sampler(seed)?;
    let u_card = cfg.dm.u_card.unwrap_or_else(|| default_u_card(&ch));
    let pool = thread_pool(opts.threads)?;
    let dir = opts.out_dir()?.to_path_buf();

    let mut files = Vec::new();
    let mut summary = Vec::new();
    for family in families {
        if family == RegionFamily::Thm2 && !ch.is_deterministic() {
            return Err(CoreError::NotDeterministic.into());
        }
        let dists: Vec<JointDist> =
            sample_joint(&family.axes(&ch, u_card), sampler, cfg.dm.cell_cap)?
                .take(limit)
                .collect();
        let triples: Vec<BoundTriple> = pool.install(|| {
            dists
                .par_iter()
                .map(|d| family.evaluate(d, &ch))
                .collect::<Result<Vec<_>, _>>()
        })?;
        let SearchOutcome {
            hulled,
            raw,
            triples,
        } = SearchOutcome::from_triples(triples)?;

        let name = family.name();
        files.push(write_polyline(
            &dir.join(format!("{name}_hull.csv")),
            &hulled.boundary(),
        )?);
        files.push(write_polyline(
            &dir.join(format!("{name}_raw.csv")),
            &raw.boundary(),
        )?);
        let records: Vec<DistTriple> = triples
            .iter()
            .enumerate()
            .map(|(k, t)| DistTriple {
                family: name,
                dist_id: k,
                a: t.r1_max,
                b: finite_or_none(t.r2_max),
                c: t.sum_max,
            })
            .collect();
        files.push(write_json(
            &dir.join(format!("{name}_triples.json")),
            &records,
        )?);
        files.push(write_json(
            &dir.join(format!("{name}.json")),
            &FamilyMeta {
                family: name,
                channel: DmChannelRecord::from_channel(&ch),
                sampler: cfg.dm.sampler,
                seed: matches!(cfg.dm.sampler, SamplerRecord::Dirichlet { .. })
                    .then_some(seed)
                    .flatten(),
                sample_limit: limit,
                distributions: triples.len(),
                u_card,
                u_card_rule:
                    "|X1| |X2| + 1 unless configured; heuristic, not a proved cardinality bound",
                hull_vertices: hulled.vertices().to_vec(),
                raw_vertices: raw.vertices().to_vec(),
            },
        )?);
        summary.push(format!(
            "{name}: {} distributions, {} hull vertices",
            triples.len(),
            hulled.vertices().len()
        ));
    }
    Ok(Outcome {
        exit_code: EXIT_OK,
        summary: summary.join("; "),
        files,
    })
}
