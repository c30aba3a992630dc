//! JSON configuration document shared by every subcommand.
//!
//! Every field is optional; absent fields take the defaults below. A minimal
//! Gaussian run only needs `channel`:
//!
//! ```json
//! { "channel": { "a_re": 0, "a_im": 0, "b_re": 2, "b_im": 0, "p1": 1, "p2": 1 } }
//! ```

use std::path::Path;

use cifc_core::dm::RegionFamily;
use cifc_core::gaussian::CrossTerms;
use cifc_core::sample::{Sampler, DEFAULT_SAMPLE_CAP};
use cifc_core::{Alphabets, Complex64, DmChannel, GaussianChannel, JointDist, Var};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_P: [f64; 4] = [0.1, 1.0, 10.0, 100.0];
pub const DEFAULT_ABS_B: [f64; 5] = [1.01, 1.1, 2.0, 5.0, 10.0];
pub const DEFAULT_A: [[f64; 2]; 6] = [
    [0.0, 0.0],
    [1.0, 0.0],
    [-1.0, 0.0],
    [0.0, 2.0],
    [1.0, 1.0],
    [5.0, 0.0],
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    /// Single channel for `gaussian region` (and a one-row sweep when `sweep` is absent).
    pub channel: Option<GaussianRecord>,
    pub sweep: Option<SweepGrid>,
    pub alpha_grid_size: usize,
    pub r1_grid_size: usize,
    pub seed: Option<u64>,
    pub cross_terms: CrossTermsName,
    /// Test hook: bits subtracted from every inner rate in `gaussian gap-sweep`.
    pub inner_penalty_bits: f64,
    pub dm: DmConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            channel: None,
            sweep: None,
            alpha_grid_size: cifc_core::gaussian::DEFAULT_GRID,
            r1_grid_size: cifc_core::gaussian::DEFAULT_GRID,
            seed: None,
            cross_terms: CrossTermsName::Complement,
            inner_penalty_bits: 0.0,
            dm: DmConfig::default(),
        }
    }
}

impl SweepConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Channels of the gap sweep: the explicit grid, else the single
    /// `channel`, else the default suite.
    pub fn sweep_channels(&self) -> Result<Vec<GaussianChannel>, CliError> {
        match (&self.sweep, &self.channel) {
            (Some(grid), _) => grid.channels(),
            (None, Some(ch)) => Ok(vec![ch.to_channel()?]),
            (None, None) => SweepGrid::default().channels(),
        }
    }

    pub fn gaussian_channel(&self) -> Result<GaussianChannel, CliError> {
        self.channel
            .as_ref()
            .ok_or_else(|| CliError::Precondition("config has no `channel`".into()))?
            .to_channel()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianRecord {
    #[serde(default)]
    pub a_re: f64,
    #[serde(default)]
    pub a_im: f64,
    pub b_re: f64,
    #[serde(default)]
    pub b_im: f64,
    pub p1: f64,
    pub p2: f64,
}

impl GaussianRecord {
    pub fn to_channel(&self) -> Result<GaussianChannel, CliError> {
        Ok(GaussianChannel::new(
            Complex64::new(self.a_re, self.a_im),
            Complex64::new(self.b_re, self.b_im),
            self.p1,
            self.p2,
        )?)
    }
}

/// Cartesian product of channel parameters; `abs_b` entries must exceed 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepGrid {
    pub p1: Vec<f64>,
    pub p2: Vec<f64>,
    pub abs_b: Vec<f64>,
    /// Complex `a` values as `[re, im]`.
    pub a: Vec<[f64; 2]>,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            p1: DEFAULT_P.to_vec(),
            p2: DEFAULT_P.to_vec(),
            abs_b: DEFAULT_ABS_B.to_vec(),
            a: DEFAULT_A.to_vec(),
        }
    }
}

impl SweepGrid {
    pub fn channels(&self) -> Result<Vec<GaussianChannel>, CliError> {
        if self.p1.is_empty() || self.p2.is_empty() || self.abs_b.is_empty() || self.a.is_empty() {
            return Err(CliError::Precondition(
                "sweep grids must be nonempty".into(),
            ));
        }
        if let Some(b) = self.abs_b.iter().find(|b| b.is_nan() || **b <= 1.0) {
            return Err(CliError::Precondition(format!(
                "sweep abs_b = {b} is not in the strong-interference regime (> 1)"
            )));
        }
        let mut out =
            Vec::with_capacity(self.p1.len() * self.p2.len() * self.abs_b.len() * self.a.len());
        for &p1 in &self.p1 {
            for &p2 in &self.p2 {
                for &b in &self.abs_b {
                    for &[re, im] in &self.a {
                        out.push(GaussianChannel::new(
                            Complex64::new(re, im),
                            Complex64::new(b, 0.0),
                            p1,
                            p2,
                        )?);
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CrossTermsName {
    #[default]
    Complement,
    Literal,
}

impl From<CrossTermsName> for CrossTerms {
    fn from(n: CrossTermsName) -> Self {
        match n {
            CrossTermsName::Complement => CrossTerms::Complement,
            CrossTermsName::Literal => CrossTerms::Literal,
        }
    }
}

/// Finite channel description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DmChannelRecord {
    /// `f1` row-major over `(x1, x2)`; kernel row-major with `y2` fastest.
    Table {
        nx1: usize,
        nx2: usize,
        ny1: usize,
        ny2: usize,
        f1: Vec<usize>,
        y2_kernel: Vec<f64>,
    },
    Deterministic {
        nx1: usize,
        nx2: usize,
        ny1: usize,
        ny2: usize,
        f1: Vec<usize>,
        f2: Vec<usize>,
    },
    Linear {
        n11: u32,
        n12: u32,
        n21: u32,
        n22: u32,
    },
}

impl DmChannelRecord {
    pub fn to_channel(&self) -> Result<DmChannel, CliError> {
        Ok(match self {
            DmChannelRecord::Table {
                nx1,
                nx2,
                ny1,
                ny2,
                f1,
                y2_kernel,
            } => DmChannel::new(
                Alphabets::new(*nx1, *nx2, *ny1, *ny2),
                f1.clone(),
                y2_kernel.clone(),
            )?,
            DmChannelRecord::Deterministic {
                nx1,
                nx2,
                ny1,
                ny2,
                f1,
                f2,
            } => DmChannel::deterministic(
                Alphabets::new(*nx1, *nx2, *ny1, *ny2),
                f1.clone(),
                f2.clone(),
            )?,
            DmChannelRecord::Linear { n11, n12, n21, n22 } => {
                DmChannel::linear_deterministic(*n11, *n12, *n21, *n22)?
            }
        })
    }

    pub fn from_channel(ch: &DmChannel) -> Self {
        let al = ch.alphabets();
        if let Some(f2) = ch.f2_table() {
            return DmChannelRecord::Deterministic {
                nx1: al.x1,
                nx2: al.x2,
                ny1: al.y1,
                ny2: al.y2,
                f1: ch.f1_table().to_vec(),
                f2: f2.to_vec(),
            };
        }
        DmChannelRecord::Table {
            nx1: al.x1,
            nx2: al.x2,
            ny1: al.y1,
            ny2: al.y2,
            f1: ch.f1_table().to_vec(),
            y2_kernel: ch.y2_kernel().to_vec(),
        }
    }
}

/// `{ "axes": ["X1:2", "X2:2"], "table": [...] }`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointDistRecord {
    pub axes: Vec<String>,
    pub table: Vec<f64>,
}

impl JointDistRecord {
    pub fn to_dist(&self) -> Result<JointDist, CliError> {
        let axes = self
            .axes
            .iter()
            .map(|s| {
                let (name, card) = s.split_once(':').ok_or_else(|| {
                    CliError::Config(format!("axis {s:?} is not of the form NAME:CARD"))
                })?;
                let var: Var = name.parse()?;
                let card = card
                    .parse()
                    .map_err(|_| CliError::Config(format!("axis {s:?} has a bad cardinality")))?;
                Ok((var, card))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(JointDist::new(axes, self.table.clone())?)
    }

    pub fn from_dist(d: &JointDist) -> Self {
        Self {
            axes: d.axes().iter().map(|(v, c)| format!("{v}:{c}")).collect(),
            table: d.table().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SamplerRecord {
    /// Enumerates the grid in a fixed order, stopping after `max_samples`
    /// tables (default [`DEFAULT_GRID_LIMIT`]).
    Grid {
        denominator: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_samples: Option<usize>,
    },
    Dirichlet {
        samples: usize,
    },
}

pub const DEFAULT_GRID_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DmConfig {
    /// Explicit channel; random channels are drawn when absent.
    pub channel: Option<DmChannelRecord>,
    /// Input distribution for the triple reported by `dm verify`; uniform when absent.
    pub input: Option<JointDistRecord>,
    /// Alphabet sizes `[|X1|, |X2|, |Y1|, |Y2|]` of random channels.
    pub alphabets: [usize; 4],
    /// Auxiliary cardinality; `|X1| |X2| + 1` when absent.
    pub u_card: Option<usize>,
    /// Random (channel, distribution) instances per identity check.
    pub samples: usize,
    /// Instances of the binning-rate feasibility check.
    pub fm_instances: usize,
    /// Points per axis of the rate grid of the feasibility check.
    pub fm_grid: usize,
    /// Random auxiliaries per instance in the `U = Y2` optimality check.
    pub u_draws: usize,
    pub families: Vec<String>,
    pub sampler: SamplerRecord,
    pub cell_cap: usize,
}

impl Default for DmConfig {
    fn default() -> Self {
        Self {
            channel: None,
            input: None,
            alphabets: [2, 2, 2, 2],
            u_card: None,
            samples: 1000,
            fm_instances: 200,
            fm_grid: 21,
            u_draws: 100,
            families: vec!["thm1".into()],
            sampler: SamplerRecord::Dirichlet { samples: 1000 },
            cell_cap: DEFAULT_SAMPLE_CAP,
        }
    }
}

impl DmConfig {
    pub fn alphabets(&self) -> Alphabets {
        let [x1, x2, y1, y2] = self.alphabets;
        Alphabets::new(x1, x2, y1, y2)
    }

    pub fn families(&self) -> Result<Vec<RegionFamily>, CliError> {
        if self.families.is_empty() {
            return Err(CliError::Precondition("dm.families is empty".into()));
        }
        self.families
            .iter()
            .map(|s| {
                RegionFamily::parse(s)
                    .ok_or_else(|| CliError::Config(format!("unknown region family {s:?}")))
            })
            .collect()
    }

    /// Core sampler plus the number of tables to draw.
    pub fn sampler(&self, seed: Option<u64>) -> Result<(Sampler, usize), CliError> {
        match self.sampler {
            SamplerRecord::Grid {
                denominator,
                max_samples,
            } => Ok((
                Sampler::Grid { denominator },
                max_samples.unwrap_or(DEFAULT_GRID_LIMIT),
            )),
            SamplerRecord::Dirichlet { samples } => {
                let seed = seed.ok_or_else(|| {
                    CliError::Precondition("the dirichlet sampler needs a seed".into())
                })?;
                Ok((Sampler::Dirichlet { seed }, samples))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_give_the_full_suite() {
        let cfg: SweepConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(cfg, SweepConfig::default());
        assert_eq!(cfg.sweep_channels().unwrap().len(), 4 * 4 * 5 * 6);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<SweepConfig>(r#"{"alpha_grid": 3}"#).is_err());
    }

    #[test]
    fn joint_dist_record_round_trip() {
        let rec: JointDistRecord =
            serde_json::from_str(r#"{"axes": ["X1:2", "X2:2"], "table": [0.1, 0.2, 0.3, 0.4]}"#)
                .unwrap();
        let d = rec.to_dist().unwrap();
        assert_eq!(d.card(Var::X2), Some(2));
        assert_eq!(JointDistRecord::from_dist(&d), rec);
        let bad = JointDistRecord {
            axes: vec!["X1".into()],
            table: vec![1.0],
        };
        assert!(bad.to_dist().is_err());
    }

    #[test]
    fn channel_record_round_trip() {
        let ch = DmChannelRecord::Linear {
            n11: 2,
            n12: 1,
            n21: 1,
            n22: 2,
        }
        .to_channel()
        .unwrap();
        let back = DmChannelRecord::from_channel(&ch).to_channel().unwrap();
        assert_eq!(ch, back);
    }
}
