//! Channel models: the Gaussian channel in standard form and finite-alphabet
//! channels whose cognitive output `Y1 = f1(X1, X2)` is deterministic.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest shift-register depth accepted by [`DmChannel::linear_deterministic`]
/// unless a different cap is passed explicitly.
pub const DEFAULT_LINEAR_DEPTH_CAP: u32 = 6;

/// Tolerance on each kernel row sum.
pub const KERNEL_ROW_TOL: f64 = 1e-12;

/// Gaussian cognitive interference channel in standard form:
///
/// ```text
/// Y1 = X1 + a X2 + Z1
/// Y2 = |b| X1 + X2 + Z2
/// ```
///
/// with unit-variance circularly-symmetric noise and average power limits
/// `p1`, `p2`. Only `|b|` enters any bound; the phase of `b` is kept so the
/// channel can be echoed back, nothing else.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianChannel {
    a: Complex64,
    b: Complex64,
    abs_b: f64,
    p1: f64,
    p2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `|b| <= 1`.
    Weak,
    /// `|b| > 1`.
    Strong,
}

impl GaussianChannel {
    pub fn new(a: Complex64, b: Complex64, p1: f64, p2: f64) -> Result<Self> {
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::InvalidChannel(format!("gain a = {a} is not finite")));
        }
        if !(b.re.is_finite() && b.im.is_finite()) {
            return Err(Error::InvalidChannel(format!("gain b = {b} is not finite")));
        }
        for (name, p) in [("p1", p1), ("p2", p2)] {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::OutOfRange { name, value: p });
            }
        }
        Ok(Self {
            a,
            b,
            abs_b: b.norm(),
            p1,
            p2,
        })
    }

    /// Shorthand for real `a` and `|b|`.
    pub fn real(a: f64, abs_b: f64, p1: f64, p2: f64) -> Result<Self> {
        Self::new(Complex64::new(a, 0.0), Complex64::new(abs_b, 0.0), p1, p2)
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn abs_b(&self) -> f64 {
        self.abs_b
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn regime(&self) -> Regime {
        if self.abs_b <= 1.0 {
            Regime::Weak
        } else {
            Regime::Strong
        }
    }

    pub(crate) fn require_strong(&self) -> Result<()> {
        match self.regime() {
            Regime::Strong => Ok(()),
            Regime::Weak => Err(Error::WeakRegime { abs_b: self.abs_b }),
        }
    }
}

pub fn classify_regime(ch: &GaussianChannel) -> Regime {
    ch.regime()
}

/// Alphabet cardinalities of a finite channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabets {
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
}

impl Alphabets {
    pub fn new(x1: usize, x2: usize, y1: usize, y2: usize) -> Self {
        Self { x1, x2, y1, y2 }
    }

    pub fn inputs(&self) -> usize {
        self.x1 * self.x2
    }
}

/// Discrete memoryless channel with a deterministic cognitive output.
///
/// `f1` is stored row-major over `(x1, x2)`; the `Y2` kernel is row-major over
/// `(x1, x2, y2)` with `y2` fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct DmChannel {
    alphabets: Alphabets,
    f1: Vec<usize>,
    kernel: Vec<f64>,
    f2: Option<Vec<usize>>,
}

impl DmChannel {
    pub fn new(alphabets: Alphabets, f1_table: Vec<usize>, y2_kernel: Vec<f64>) -> Result<Self> {
        let Alphabets { x1, x2, y1, y2 } = alphabets;
        if x1 == 0 || x2 == 0 || y1 == 0 || y2 == 0 {
            return Err(Error::InvalidChannel(format!(
                "alphabet sizes must be positive, got {alphabets:?}"
            )));
        }
        check_function_table("f1", &f1_table, x1 * x2, y1)?;
        if y2_kernel.len() != x1 * x2 * y2 {
            return Err(Error::InvalidChannel(format!(
                "Y2 kernel has {} entries, expected {}",
                y2_kernel.len(),
                x1 * x2 * y2
            )));
        }
        for (row_index, row) in y2_kernel.chunks(y2).enumerate() {
            if row.iter().any(|p| !p.is_finite() || *p < 0.0 || *p > 1.0) {
                return Err(Error::InvalidChannel(format!(
                    "Y2 kernel row {row_index} has entries outside [0, 1]"
                )));
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > KERNEL_ROW_TOL {
                return Err(Error::InvalidChannel(format!(
                    "Y2 kernel row {row_index} sums to {total}"
                )));
            }
        }
        let f2 = point_mass_rows(&y2_kernel, y2);
        Ok(Self {
            alphabets,
            f1: f1_table,
            kernel: y2_kernel,
            f2,
        })
    }

    /// Channel where both outputs are deterministic functions of the inputs.
    pub fn deterministic(
        alphabets: Alphabets,
        f1_table: Vec<usize>,
        f2_table: Vec<usize>,
    ) -> Result<Self> {
        let inputs = alphabets.inputs();
        check_function_table("f2", &f2_table, inputs, alphabets.y2)?;
        let mut kernel = vec![0.0; inputs * alphabets.y2];
        for (input, &y) in f2_table.iter().enumerate() {
            kernel[input * alphabets.y2 + y] = 1.0;
        }
        Self::new(alphabets, f1_table, kernel)
    }

    /// Shift-register channel over length-`q` bit vectors, `q = max n_ij`:
    ///
    /// ```text
    /// Y1 = S^(q-n11) X1 xor S^(q-n12) X2
    /// Y2 = S^(q-n21) X1 xor S^(q-n22) X2
    /// ```
    ///
    /// A vector is packed into an integer with the most significant level in
    /// bit `q-1`, so the down-shift `S^s` is `x >> s`.
    pub fn linear_deterministic(n11: u32, n12: u32, n21: u32, n22: u32) -> Result<Self> {
        Self::linear_deterministic_capped(n11, n12, n21, n22, DEFAULT_LINEAR_DEPTH_CAP)
    }

    pub fn linear_deterministic_capped(
        n11: u32,
        n12: u32,
        n21: u32,
        n22: u32,
        depth_cap: u32,
    ) -> Result<Self> {
        let q = n11.max(n12).max(n21).max(n22);
        if q > depth_cap {
            let size = 1usize.checked_shl(3 * q).unwrap_or(usize::MAX);
            return Err(Error::CapExceeded {
                size,
                cap: 1usize << (3 * depth_cap),
            });
        }
        let n = 1usize << q;
        let shift = |x: usize, gain: u32| -> usize {
            let s = q - gain;
            if s >= usize::BITS {
                0
            } else {
                x >> s
            }
        };
        let mut f1 = Vec::with_capacity(n * n);
        let mut f2 = Vec::with_capacity(n * n);
        for x1 in 0..n {
            for x2 in 0..n {
                f1.push(shift(x1, n11) ^ shift(x2, n12));
                f2.push(shift(x1, n21) ^ shift(x2, n22));
            }
        }
        Self::deterministic(Alphabets::new(n, n, n, n), f1, f2)
    }

    pub fn alphabets(&self) -> Alphabets {
        self.alphabets
    }

    #[inline]
    pub fn f1(&self, x1: usize, x2: usize) -> usize {
        self.f1[x1 * self.alphabets.x2 + x2]
    }

    /// `P(Y2 = . | x1, x2)`.
    #[inline]
    pub fn y2_row(&self, x1: usize, x2: usize) -> &[f64] {
        let y2 = self.alphabets.y2;
        let start = (x1 * self.alphabets.x2 + x2) * y2;
        &self.kernel[start..start + y2]
    }

    /// `f2(x1, x2)` when every kernel row is a point mass.
    pub fn f2(&self, x1: usize, x2: usize) -> Option<usize> {
        self.f2.as_ref().map(|t| t[x1 * self.alphabets.x2 + x2])
    }

    pub fn is_deterministic(&self) -> bool {
        self.f2.is_some()
    }

    pub fn f1_table(&self) -> &[usize] {
        &self.f1
    }

    pub fn y2_kernel(&self) -> &[f64] {
        &self.kernel
    }

    pub fn f2_table(&self) -> Option<&[usize]> {
        self.f2.as_deref()
    }
}

fn check_function_table(name: &str, table: &[usize], inputs: usize, outputs: usize) -> Result<()> {
    if table.len() != inputs {
        return Err(Error::InvalidChannel(format!(
            "{name} table has {} entries, expected {inputs}",
            table.len()
        )));
    }
    if let Some((i, y)) = table.iter().enumerate().find(|(_, y)| **y >= outputs) {
        return Err(Error::InvalidChannel(format!(
            "{name} maps input {i} to {y}, outside an alphabet of size {outputs}"
        )));
    }
    Ok(())
}

fn point_mass_rows(kernel: &[f64], width: usize) -> Option<Vec<usize>> {
    kernel
        .chunks(width)
        .map(|row| {
            if row.iter().all(|p| *p == 0.0 || *p == 1.0) {
                row.iter().position(|p| *p == 1.0)
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor_and() -> DmChannel {
        DmChannel::deterministic(
            Alphabets::new(2, 2, 2, 2),
            vec![0, 1, 1, 0],
            vec![0, 0, 0, 1],
        )
        .unwrap()
    }

    #[test]
    fn gaussian_construction() {
        let ch = GaussianChannel::real(0.0, 2.0, 1.0, 1.0).unwrap();
        assert_eq!(ch.abs_b(), 2.0);

        let ch = GaussianChannel::new(
            Complex64::new(1.0, 1.0),
            Complex64::new(0.0, 2.0),
            10.0,
            0.1,
        )
        .unwrap();
        assert_eq!(ch.abs_b(), 2.0);
        assert_eq!(ch.b(), Complex64::new(0.0, 2.0));

        assert!(matches!(
            GaussianChannel::real(0.0, 1.0, -1.0, 1.0),
            Err(Error::OutOfRange { name: "p1", .. })
        ));
        assert!(GaussianChannel::real(0.0, 1.0, 1.0, f64::INFINITY).is_err());
        assert!(GaussianChannel::new(
            Complex64::new(f64::NAN, 0.0),
            Complex64::new(2.0, 0.0),
            1.0,
            1.0
        )
        .is_err());
    }

    #[test]
    fn regime_boundary() {
        let regime = |abs_b| classify_regime(&GaussianChannel::real(0.0, abs_b, 1.0, 1.0).unwrap());
        assert_eq!(regime(0.5), Regime::Weak);
        assert_eq!(regime(1.0), Regime::Weak);
        assert_eq!(regime(2.0), Regime::Strong);
    }

    #[test]
    fn deterministic_tables() {
        let ch = xor_and();
        assert!(ch.is_deterministic());
        assert_eq!(ch.f1(0, 1), 1);
        assert_eq!(ch.f2(1, 1), Some(1));
        assert_eq!(ch.f2_table(), Some(&[0, 0, 0, 1][..]));

        let ident = DmChannel::deterministic(
            Alphabets::new(2, 2, 2, 2),
            vec![0, 1, 1, 0],
            vec![0, 1, 0, 1],
        )
        .unwrap();
        assert_eq!(ident.f2(1, 0), Some(0));

        let missing =
            DmChannel::deterministic(Alphabets::new(2, 2, 2, 2), vec![0, 1, 1], vec![0, 0, 0, 1]);
        assert!(matches!(missing, Err(Error::InvalidChannel(_))));
        let out_of_range = DmChannel::deterministic(
            Alphabets::new(2, 2, 2, 2),
            vec![0, 1, 2, 0],
            vec![0, 0, 0, 1],
        );
        assert!(out_of_range.is_err());
    }

    #[test]
    fn noisy_kernel_validation() {
        let f1 = vec![0, 1, 1, 0];
        let noisy = DmChannel::new(Alphabets::new(2, 2, 2, 2), f1.clone(), vec![0.5; 8]).unwrap();
        assert!(!noisy.is_deterministic());
        assert_eq!(noisy.f2(0, 0), None);

        let bad_sum = DmChannel::new(
            Alphabets::new(2, 2, 2, 2),
            f1.clone(),
            vec![0.5, 0.6, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5],
        );
        assert!(bad_sum.is_err());
        let negative = DmChannel::new(
            Alphabets::new(2, 2, 2, 2),
            f1,
            vec![-0.5, 1.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5],
        );
        assert!(negative.is_err());
    }

    #[test]
    fn linear_fixtures() {
        let pipes = DmChannel::linear_deterministic(1, 0, 0, 1).unwrap();
        assert_eq!(pipes.alphabets(), Alphabets::new(2, 2, 2, 2));
        for x1 in 0..2 {
            for x2 in 0..2 {
                assert_eq!(pipes.f1(x1, x2), x1);
                assert_eq!(pipes.f2(x1, x2), Some(x2));
            }
        }

        let silent = DmChannel::linear_deterministic(0, 0, 0, 0).unwrap();
        assert_eq!(silent.alphabets(), Alphabets::new(1, 1, 1, 1));
        assert_eq!(silent.f1(0, 0), 0);

        let two = DmChannel::linear_deterministic(2, 1, 1, 2).unwrap();
        assert_eq!(two.alphabets().x1, 4);
        // x1 = 0b10, x2 = 0b11: y1 = 0b10 ^ 0b01, y2 = 0b01 ^ 0b11
        assert_eq!(two.f1(0b10, 0b11), 0b11);
        assert_eq!(two.f2(0b10, 0b11), Some(0b10));

        assert!(matches!(
            DmChannel::linear_deterministic(7, 0, 0, 0),
            Err(Error::CapExceeded { .. })
        ));
        assert!(DmChannel::linear_deterministic_capped(7, 0, 0, 0, 7).is_ok());
    }

    #[test]
    fn table_round_trip() {
        let ch = xor_and();
        let rebuilt = DmChannel::deterministic(
            ch.alphabets(),
            ch.f1_table().to_vec(),
            ch.f2_table().unwrap().to_vec(),
        )
        .unwrap();
        assert_eq!(rebuilt, ch);
    }
}
