//! Dense joint distributions over named finite variables and exact discrete
//! information measures in bits.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::channel::DmChannel;
use crate::error::{Error, Result};
use crate::math::log2;

/// Tolerance on the total mass of a table.
pub const MASS_TOL: f64 = 1e-12;

/// Probabilities below this are treated as exact zeros in entropy sums.
pub const ZERO_PROB: f64 = 1e-15;

/// Upper bound on the number of cells a derived table may hold.
pub const MAX_TABLE_CELLS: usize = 1 << 22;

/// Variable names that can label an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    U1,
    U2,
    X1,
    X2,
    Y1,
    Y2,
}

impl Var {
    pub const ALL: [Var; 7] = [Var::U, Var::U1, Var::U2, Var::X1, Var::X2, Var::Y1, Var::Y2];

    pub fn name(self) -> &'static str {
        match self {
            Var::U => "U",
            Var::U1 => "U1",
            Var::U2 => "U2",
            Var::X1 => "X1",
            Var::X2 => "X2",
            Var::Y1 => "Y1",
            Var::Y2 => "Y2",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Var::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::AxisMismatch(format!("unknown variable name {s:?}")))
    }
}

/// Probability table over an ordered list of named axes, row-major with the
/// last axis varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDist {
    axes: Vec<(Var, usize)>,
    table: Vec<f64>,
}

impl JointDist {
    pub fn new(axes: Vec<(Var, usize)>, table: Vec<f64>) -> Result<Self> {
        let cells = cell_count(&axes)?;
        for (i, (v, card)) in axes.iter().enumerate() {
            if *card == 0 {
                return Err(Error::InvalidDistribution(format!(
                    "axis {v} has cardinality 0"
                )));
            }
            if axes[..i].iter().any(|(w, _)| w == v) {
                return Err(Error::InvalidDistribution(format!(
                    "axis {v} appears twice"
                )));
            }
        }
        if table.len() != cells {
            return Err(Error::InvalidDistribution(format!(
                "table has {} entries, axes require {cells}",
                table.len()
            )));
        }
        if table.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidDistribution(String::from(
                "negative or non-finite entry",
            )));
        }
        let total: f64 = table.iter().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidDistribution(format!("total mass {total}")));
        }
        Ok(Self { axes, table })
    }

    pub fn uniform(axes: Vec<(Var, usize)>) -> Result<Self> {
        let cells = cell_count(&axes)?;
        Self::new(axes, vec![1.0 / cells as f64; cells])
    }

    pub fn point_mass(axes: Vec<(Var, usize)>, at: &[usize]) -> Result<Self> {
        let cells = cell_count(&axes)?;
        if at.len() != axes.len() || at.iter().zip(&axes).any(|(i, (_, c))| i >= c) {
            return Err(Error::InvalidDistribution(format!(
                "index {at:?} outside {axes:?}"
            )));
        }
        let flat = at.iter().zip(&axes).fold(0, |acc, (i, (_, c))| acc * c + i);
        let mut table = vec![0.0; cells];
        table[flat] = 1.0;
        Self::new(axes, table)
    }

    /// Independent product; axes of `self` come first.
    pub fn product(&self, other: &JointDist) -> Result<Self> {
        let mut axes = self.axes.clone();
        axes.extend_from_slice(&other.axes);
        let mut table = Vec::with_capacity(self.table.len() * other.table.len());
        for p in &self.table {
            table.extend(other.table.iter().map(|q| p * q));
        }
        Self::new(axes, table)
    }

    pub fn axes(&self) -> &[(Var, usize)] {
        &self.axes
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn card(&self, var: Var) -> Option<usize> {
        self.axes.iter().find(|(v, _)| *v == var).map(|(_, c)| *c)
    }

    pub fn has(&self, var: Var) -> bool {
        self.card(var).is_some()
    }

    fn position(&self, var: Var) -> Result<usize> {
        self.axes
            .iter()
            .position(|(v, _)| *v == var)
            .ok_or(Error::UnknownAxis(var))
    }

    /// Visits every cell with its multi-index.
    pub fn for_each_cell(&self, mut visit: impl FnMut(&[usize], f64)) {
        let mut index = vec![0usize; self.axes.len()];
        for &p in &self.table {
            visit(&index, p);
            for k in (0..index.len()).rev() {
                index[k] += 1;
                if index[k] < self.axes[k].1 {
                    break;
                }
                index[k] = 0;
            }
        }
    }

    /// Marginal over `vars`, with axes in the order given.
    pub fn marginal(&self, vars: &[Var]) -> Result<JointDist> {
        let table = self.marginal_table(vars)?;
        let axes = vars
            .iter()
            .map(|v| (*v, self.card(*v).unwrap_or(1)))
            .collect();
        Ok(JointDist { axes, table })
    }

    fn marginal_table(&self, vars: &[Var]) -> Result<Vec<f64>> {
        let mut sub_stride = vec![0usize; self.axes.len()];
        let mut size = 1usize;
        for (k, v) in vars.iter().enumerate().rev() {
            if vars[..k].contains(v) {
                return Err(Error::OverlappingAxes(*v));
            }
            let pos = self.position(*v)?;
            sub_stride[pos] = size;
            size *= self.axes[pos].1;
        }
        let mut out = vec![0.0; size];
        self.for_each_cell(|index, p| {
            let flat: usize = index.iter().zip(&sub_stride).map(|(i, s)| i * s).sum();
            out[flat] += p;
        });
        Ok(out)
    }

    /// Joint entropy of `vars` in bits.
    fn joint_entropy(&self, vars: &[Var]) -> Result<f64> {
        if vars.is_empty() {
            return Ok(0.0);
        }
        Ok(self
            .marginal_table(vars)?
            .into_iter()
            .filter(|p| *p > ZERO_PROB)
            .map(|p| -p * log2(p))
            .sum())
    }

    /// `H(targets | given)` in bits.
    pub fn entropy(&self, targets: &[Var], given: &[Var]) -> Result<f64> {
        let targets = dedup(targets);
        let given = dedup(given);
        self.check_known(&targets)?;
        self.check_known(&given)?;
        disjoint(&targets, &given)?;
        let joint = union(&targets, &given);
        let h = self.joint_entropy(&joint)? - self.joint_entropy(&given)?;
        Ok(h.max(0.0))
    }

    /// `I(a; b | given)` in bits.
    pub fn mutual_information(&self, a: &[Var], b: &[Var], given: &[Var]) -> Result<f64> {
        let a = dedup(a);
        let b = dedup(b);
        let given = dedup(given);
        for set in [&a, &b, &given] {
            self.check_known(set)?;
        }
        disjoint(&a, &b)?;
        disjoint(&a, &given)?;
        disjoint(&b, &given)?;
        let ac = union(&a, &given);
        let bc = union(&b, &given);
        let abc = union(&ac, &b);
        // Grouped as [H(AC) - H(C)] - [H(ABC) - H(BC)] so that a functional
        // dependence of A on (B, C) cancels to an exact zero.
        let first = self.joint_entropy(&ac)? - self.joint_entropy(&given)?;
        let second = self.joint_entropy(&abc)? - self.joint_entropy(&bc)?;
        Ok((first - second).max(0.0))
    }

    fn check_known(&self, vars: &[Var]) -> Result<()> {
        match vars.iter().find(|v| !self.has(**v)) {
            Some(v) => Err(Error::UnknownAxis(*v)),
            None => Ok(()),
        }
    }

    /// Appends an axis that is a deterministic function of the existing ones.
    pub fn with_function_axis(
        &self,
        var: Var,
        card: usize,
        f: impl Fn(&[usize]) -> usize,
    ) -> Result<JointDist> {
        if self.has(var) {
            return Err(Error::AxisMismatch(format!("axis {var} already present")));
        }
        let cells = self.table.len().saturating_mul(card);
        if cells > MAX_TABLE_CELLS {
            return Err(Error::CapExceeded {
                size: cells,
                cap: MAX_TABLE_CELLS,
            });
        }
        let mut table = vec![0.0; cells];
        let mut bad = None;
        let mut cell = 0;
        self.for_each_cell(|index, p| {
            let y = f(index);
            if y >= card {
                bad = Some(y);
            } else {
                table[cell * card + y] = p;
            }
            cell += 1;
        });
        if let Some(y) = bad {
            return Err(Error::AxisMismatch(format!(
                "value {y} outside axis {var} of size {card}"
            )));
        }
        let mut axes = self.axes.clone();
        axes.push((var, card));
        Ok(JointDist { axes, table })
    }

    /// Returns the same table with axis `from` relabelled `to`.
    pub fn rename(&self, from: Var, to: Var) -> Result<JointDist> {
        let pos = self.position(from)?;
        if from != to && self.has(to) {
            return Err(Error::AxisMismatch(format!("axis {to} already present")));
        }
        let mut out = self.clone();
        out.axes[pos].0 = to;
        Ok(out)
    }

    /// Extends the table with `Y1 = f1(X1, X2)` and `Y2 ~ P(Y2 | X1, X2)`.
    pub fn push_through(&self, ch: &DmChannel) -> Result<JointDist> {
        let al = ch.alphabets();
        let x1 = self.position(Var::X1)?;
        let x2 = self.position(Var::X2)?;
        if self.axes[x1].1 != al.x1 || self.axes[x2].1 != al.x2 {
            return Err(Error::AxisMismatch(format!(
                "input cardinalities ({}, {}) do not match channel ({}, {})",
                self.axes[x1].1, self.axes[x2].1, al.x1, al.x2
            )));
        }
        if self.has(Var::Y1) || self.has(Var::Y2) {
            return Err(Error::AxisMismatch(String::from(
                "distribution already carries output axes",
            )));
        }
        let block = al.y1 * al.y2;
        let cells = self.table.len().saturating_mul(block);
        if cells > MAX_TABLE_CELLS {
            return Err(Error::CapExceeded {
                size: cells,
                cap: MAX_TABLE_CELLS,
            });
        }
        let mut table = vec![0.0; cells];
        let mut cell = 0;
        self.for_each_cell(|index, p| {
            let (a, b) = (index[x1], index[x2]);
            let y1 = ch.f1(a, b);
            let base = cell * block + y1 * al.y2;
            for (y2, w) in ch.y2_row(a, b).iter().enumerate() {
                table[base + y2] = p * w;
            }
            cell += 1;
        });
        let mut axes = self.axes.clone();
        axes.push((Var::Y1, al.y1));
        axes.push((Var::Y2, al.y2));
        Ok(JointDist { axes, table })
    }
}

fn cell_count(axes: &[(Var, usize)]) -> Result<usize> {
    let mut cells = 1usize;
    for (_, c) in axes {
        cells = cells.saturating_mul(*c);
    }
    if cells > MAX_TABLE_CELLS {
        return Err(Error::CapExceeded {
            size: cells,
            cap: MAX_TABLE_CELLS,
        });
    }
    Ok(cells)
}

fn dedup(vars: &[Var]) -> Vec<Var> {
    let mut out: Vec<Var> = Vec::with_capacity(vars.len());
    for v in vars {
        if !out.contains(v) {
            out.push(*v);
        }
    }
    out
}

fn union(a: &[Var], b: &[Var]) -> Vec<Var> {
    let mut out = a.to_vec();
    out.extend(b.iter().filter(|v| !a.contains(v)));
    out
}

fn disjoint(a: &[Var], b: &[Var]) -> Result<()> {
    match a.iter().find(|v| b.contains(v)) {
        Some(v) => Err(Error::OverlappingAxes(*v)),
        None => Ok(()),
    }
}

/// `H(targets | given)` in bits.
pub fn entropy(dist: &JointDist, targets: &[Var], given: &[Var]) -> Result<f64> {
    dist.entropy(targets, given)
}

/// `I(a; b | given)` in bits.
pub fn mutual_information(dist: &JointDist, a: &[Var], b: &[Var], given: &[Var]) -> Result<f64> {
    dist.mutual_information(a, b, given)
}

pub fn push_through(dist: &JointDist, ch: &DmChannel) -> Result<JointDist> {
    dist.push_through(ch)
}
