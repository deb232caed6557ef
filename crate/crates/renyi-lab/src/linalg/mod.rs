//! Dense complex linear operators.
//!
//! Dimensions in this crate stay small (at most 64), so everything is a
//! plain row-major `Vec` with naive kernels.

mod eig;
mod svd;
mod tensor;

pub use eig::{frac_power, herm_eig, herm_eigenvalues, HermitianEig, CLAMP_TOL, CUTOFF_REL};
pub(crate) use svd::norm_of_values;
pub use svd::{polar, schatten_norm, singular_values, svd, Svd};
pub use tensor::{
    op_vec, partial_trace, permute_systems, permute_vector, purify, schmidt, tensor, SchmidtForm, SystemLayout,
};

use crate::{Error, Result};
use std::ops::{Add, Index, IndexMut, Mul, Sub};

pub use num_complex::Complex64 as C64;

/// Element of `Lin(A, B)`: a `rows × cols` complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Operator {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} operator", data.len())));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite entry".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let m = rows[0].len();
        Self::from_fn(n, m, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(*v, 0.0);
        }
        m
    }

    /// Column vector `|ψ⟩` as a `d × 1` operator.
    pub fn column(v: &[C64]) -> Self {
        Self { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    /// `|ψ⟩⟨φ|`.
    pub fn outer(psi: &[C64], phi: &[C64]) -> Self {
        Self::from_fn(psi.len(), phi.len(), |i, j| psi[i] * phi[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square operator.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column_vec(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_c(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![C64::new(0.0, 0.0); n * m];
        for i in 0..n {
            let row = &mut out[i * m..(i + 1) * m];
            for l in 0..k {
                let a = self.data[i * k + l];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let orow = &other.data[l * m..(l + 1) * m];
                for (r, b) in row.iter_mut().zip(orow) {
                    *r += a * b;
                }
            }
        }
        Self { rows: n, cols: m, data: out }
    }

    /// `self · v` for a vector `v`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `A X A†`.
    pub fn sandwich(&self, x: &Self) -> Self {
        self.matmul(x).matmul(&self.adjoint())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `tr(A B)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut s = C64::new(0.0, 0.0);
        for i in 0..self.rows {
            for k in 0..self.cols {
                s += self[(i, k)] * other[(k, i)];
            }
        }
        s
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |A − A†|` entrywise.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut d: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                d = d.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        d
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol * (1.0 + self.max_abs())
    }

    pub fn dist_max(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn real_diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].re).collect()
    }
}

impl Index<(usize, usize)> for Operator {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Operator {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Operator {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Operator {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.matmul(rhs)
    }
}

/// Euclidean norm of a vector.
pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨a|b⟩`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Base-2 logarithm with `log 0 = −∞`.
pub fn log2(x: f64) -> f64 {
    x.log2()
}
