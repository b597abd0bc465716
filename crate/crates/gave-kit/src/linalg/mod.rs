//! Dense real linear algebra sized for desk-scale problems.
//!
//! Matrices are stored row-major in 64-bit floats. Each row additionally
//! carries a conservative nonzero span `[start, end)` so that matrix-vector
//! products and triangular solves skip structural zeros; for banded inputs
//! this turns the O(n^2)/O(n^3) kernels into O(n*bw)/O(n*bw^2) without a
//! second storage format. Skipped terms are exact IEEE zeros, so results are
//! bit-identical to the plain dense loops.

mod lu;
mod market;
mod norms;

pub use lu::{factorize, LuFactorization};
pub use market::{
    read_matrix, read_matrix_file, read_vector, read_vector_file, write_matrix,
    write_matrix_file, write_vector, write_vector_file,
};
pub use norms::{rho_2x2, spectral_radius, two_norm};

use crate::error::{Error, Result};

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    /// Per-row half-open interval containing every nonzero; may overestimate.
    spans: Vec<(usize, usize)>,
}

impl DenseMatrix {
    /// Build from a row-major buffer. `data.len()` must equal `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidSize(format!(
                "matrix dimensions must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidSize(format!(
                "buffer length {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        let mut m = Self {
            rows,
            cols,
            data,
            spans: Vec::new(),
        };
        m.recompute_spans();
        Ok(m)
    }

    /// Build from nested row slices; rows must have equal lengths.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidSize("no rows given".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidSize("ragged rows".into()));
        }
        let data: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::from_vec(rows.len(), cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
            spans: vec![(0, 0); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scaled_identity(n, 1.0)
    }

    /// `s * I`.
    pub fn scaled_identity(n: usize, s: f64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s);
        }
        m
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    /// Write one entry, widening the row's nonzero span if needed.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
        if v != 0.0 {
            let (s, e) = self.spans[i];
            if s >= e {
                self.spans[i] = (j, j + 1);
            } else {
                self.spans[i] = (s.min(j), e.max(j + 1));
            }
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub(crate) fn row_span(&self, i: usize) -> (usize, usize) {
        self.spans[i]
    }

    pub(crate) fn recompute_spans(&mut self) {
        self.spans = (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let start = row.iter().position(|&v| v != 0.0);
                match start {
                    None => (0, 0),
                    Some(s) => {
                        let e = row.iter().rposition(|&v| v != 0.0).unwrap() + 1;
                        (s, e)
                    }
                }
            })
            .collect();
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                expected_rows: self.rows,
                expected_cols: self.cols,
                rows: other.rows,
                cols: other.cols,
            });
        }
        Ok(())
    }

    /// `self * v`.
    pub fn matvec(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = vec![0.0; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let (s, e) = self.spans[i];
            let row = &self.data[i * self.cols + s..i * self.cols + e];
            let xs = &v.as_slice()[s..e];
            *o = row.iter().zip(xs).map(|(a, x)| a * x).sum();
        }
        Ok(Vector::from_vec(out))
    }

    /// `self^T * v`.
    pub fn tr_matvec(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            let vi = v.as_slice()[i];
            if vi == 0.0 {
                continue;
            }
            let (s, e) = self.spans[i];
            let row = &self.data[i * self.cols + s..i * self.cols + e];
            for (o, a) in out[s..e].iter_mut().zip(row) {
                *o += a * vi;
            }
        }
        Ok(Vector::from_vec(out))
    }

    /// `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                expected_rows: self.cols,
                expected_cols: other.cols,
                rows: other.rows,
                cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let (s, e) = self.spans[i];
            for k in s..e {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                let (ks, ke) = other.spans[k];
                let orow = &other.data[k * other.cols + ks..k * other.cols + ke];
                let target = &mut out.data[i * other.cols + ks..i * other.cols + ke];
                for (t, b) in target.iter_mut().zip(orow) {
                    *t += aik * b;
                }
            }
        }
        out.recompute_spans();
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if v != 0.0 {
                    out.set(j, i, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self::from_vec(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self::from_vec(self.rows, self.cols, data)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= s;
        }
        if s == 0.0 {
            out.spans = vec![(0, 0); out.rows];
        }
        out
    }

    /// Componentwise absolute value.
    pub fn abs(&self) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = v.abs();
        }
        out
    }

    /// Componentwise `self <= other`. Errors on shape mismatch.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).all(|(a, b)| a <= b))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&v| v >= 0.0)
    }

    /// Location of the first negative entry, if any.
    pub(crate) fn first_negative(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|&v| v < 0.0)
            .map(|p| (p / self.cols, p % self.cols))
    }
}

/// Dense vector of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    data: Vec<f64>,
}

impl Vector {
    pub fn from_vec(data: Vec<f64>) -> Self {
        Self { data }
    }

    pub fn from_slice(data: &[f64]) -> Self {
        Self {
            data: data.to_vec(),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self { data: vec![0.0; n] }
    }

    pub fn ones(n: usize) -> Self {
        Self { data: vec![1.0; n] }
    }

    /// `(pattern[0], pattern[1], pattern[0], ...)` truncated to length `n`.
    pub fn repeating(n: usize, pattern: &[f64]) -> Self {
        Self {
            data: (0..n).map(|i| pattern[i % pattern.len()]).collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.data[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: f64) {
        self.data[i] = v;
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn norm2(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    /// Componentwise absolute value.
    pub fn abs(&self) -> Self {
        Self {
            data: self.data.iter().map(|v| v.abs()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// `self + s * other`, in place.
    pub fn axpy(&mut self, s: f64, other: &Self) {
        debug_assert_eq!(self.len(), other.len());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}
