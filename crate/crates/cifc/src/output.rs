//! Output files: comma-separated tables with a header row and LF line
//! endings, plus pretty-printed JSON sidecars.
//!
//! Floats are written with nine decimals so that outputs compare
//! byte-for-byte across runs and thread counts.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliError;

/// Fixed-precision rendering; values that round to zero print as `0.000000000`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.9}");
    if s.starts_with('-') && s[1..].bytes().all(|c| c == b'0' || c == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn write_csv<I, R>(path: &Path, header: &[&str], rows: I) -> Result<PathBuf, CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(path.to_path_buf())
}

/// Two-column `r1,r2` polyline.
pub fn write_polyline(path: &Path, points: &[(f64, f64)]) -> Result<PathBuf, CliError> {
    write_csv(
        path,
        &["r1", "r2"],
        points.iter().map(|&(x, y)| [fmt_f64(x), fmt_f64(y)]),
    )
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<PathBuf, CliError> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(path.to_path_buf())
}

/// JSON has no infinity; unbounded rates are written as `null`.
pub fn finite_or_none(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}
