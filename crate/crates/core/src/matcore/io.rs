//! Matrix text and JSON formats.
//!
//! Text: a header line `rows cols`, then one line per row holding `2*cols`
//! floats, real and imaginary part interleaved per entry.
//!
//! JSON: `{"rows":N,"cols":M,"re":[[..]],"im":[[..]]}`.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(a: &ComplexMatrix) -> Self {
        let part = |f: fn(&Complex64) -> f64| (0..a.rows()).map(|i| a.row(i).iter().map(f).collect()).collect();
        MatrixJson {
            rows: a.rows(),
            cols: a.cols(),
            re: part(|z| z.re),
            im: part(|z| z.im),
        }
    }
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        let shape_ok = |p: &Vec<Vec<f64>>| p.len() == j.rows && p.iter().all(|r| r.len() == j.cols);
        if !shape_ok(&j.re) || !shape_ok(&j.im) {
            return Err(Error::Parse(format!(
                "re/im arrays do not match the declared {}x{} shape",
                j.rows, j.cols
            )));
        }
        Ok(ComplexMatrix::from_fn(j.rows, j.cols, |r, c| {
            Complex64::new(j.re[r][c], j.im[r][c])
        }))
    }
}

pub fn to_text(a: &ComplexMatrix) -> String {
    let mut out = format!("{} {}\n", a.rows(), a.cols());
    for i in 0..a.rows() {
        let line: Vec<String> = a.row(i).iter().map(|z| format!("{:e} {:e}", z.re, z.im)).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn from_text(s: &str) -> Result<ComplexMatrix> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header token {t:?}"))))
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse(format!("header must be \"rows cols\", got {header:?}")));
    };
    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing row {}", r + 1)))?;
        let vals: Vec<f64> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad number {t:?} in row {}", r + 1)))
            })
            .collect::<Result<_>>()?;
        if vals.len() != 2 * cols {
            return Err(Error::Parse(format!(
                "row {} has {} numbers, expected {}",
                r + 1,
                vals.len(),
                2 * cols
            )));
        }
        data.extend(vals.chunks(2).map(|p| Complex64::new(p[0], p[1])));
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing data after the last row".into()));
    }
    ComplexMatrix::from_row_major(rows, cols, data)
}

pub fn to_json(a: &ComplexMatrix) -> String {
    serde_json::to_string(&MatrixJson::from(a)).expect("plain numeric arrays serialize")
}

pub fn from_json(s: &str) -> Result<ComplexMatrix> {
    let j: MatrixJson = serde_json::from_str(s)?;
    j.try_into()
}

/// Reads either format; JSON is recognized by a leading `{`.
pub fn parse_matrix(s: &str) -> Result<ComplexMatrix> {
    if s.trim_start().starts_with('{') {
        from_json(s)
    } else {
        from_text(s)
    }
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    parse_matrix(&std::fs::read_to_string(path)?)
}
