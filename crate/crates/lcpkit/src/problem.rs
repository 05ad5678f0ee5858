//! LCP problem definition, residual evaluation, and the two block-tridiagonal
//! benchmark families.
//!
//! `LCP(q, A)`: find `z >= 0` with `w = A z + q >= 0` and `z^T w = 0`. The
//! merit function used everywhere is the natural residual
//! `Res(z) = || min(z, A z + q) ||_2`, which vanishes exactly at solutions.

use std::path::Path;

use crate::error::{Error, Result};
use crate::market;
use crate::sparse::SparseMatrix;

/// A linear complementarity problem: the system matrix and the offset vector.
#[derive(Debug, Clone)]
pub struct LcpProblem {
    a: SparseMatrix,
    q: Vec<f64>,
}

impl LcpProblem {
    pub fn new(a: SparseMatrix, q: Vec<f64>) -> Result<Self> {
        if q.len() != a.n() {
            return Err(Error::DimensionMismatch {
                context: "LcpProblem",
                expected: a.n(),
                got: q.len(),
            });
        }
        Ok(Self { a, q })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn a(&self) -> &SparseMatrix {
        &self.a
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    /// `w = A z + q`.
    pub fn w(&self, z: &[f64]) -> Result<Vec<f64>> {
        let mut w = self.a.matvec(z)?;
        for (wi, qi) in w.iter_mut().zip(&self.q) {
            *wi += qi;
        }
        Ok(w)
    }

    /// Natural residual `|| min(z, A z + q) ||_2`.
    pub fn residual(&self, z: &[f64]) -> Result<f64> {
        let w = self.w(z)?;
        let mut acc = 0.0;
        for (zi, wi) in z.iter().zip(&w) {
            let m = zi.min(*wi);
            acc += m * m;
        }
        Ok(acc.sqrt())
    }

    /// Write the problem as a pair of Matrix Market files.
    pub fn export(&self, a_path: impl AsRef<Path>, q_path: impl AsRef<Path>) -> Result<()> {
        market::write_matrix_market(&self.a, a_path)?;
        market::write_vector_market(&self.q, q_path)
    }

    /// Load a problem from a Matrix Market matrix file and a vector file.
    pub fn load(a_path: impl AsRef<Path>, q_path: impl AsRef<Path>) -> Result<Self> {
        let a = market::read_matrix_market(a_path)?;
        let q = market::read_vector(q_path)?;
        Self::new(a, q)
    }
}

/// A candidate solution together with its slack vector `w = A z + q`.
#[derive(Debug, Clone)]
pub struct Solution {
    pub z: Vec<f64>,
    pub w: Vec<f64>,
}

impl Solution {
    pub fn evaluate(problem: &LcpProblem, z: Vec<f64>) -> Result<Self> {
        let w = problem.w(&z)?;
        Ok(Self { z, w })
    }
}

/// True iff `|| (a + b) - |a - b| ||_inf <= tol`.
///
/// The identity `a + b = |a - b|` holds componentwise exactly when
/// `a >= 0`, `b >= 0` and `a b = 0`, so this certifies an approximate
/// complementary pair in one pass.
pub fn is_complementary_pair(a: &[f64], b: &[f64], tol: f64) -> bool {
    assert_eq!(a.len(), b.len(), "complementary pair lengths differ");
    a.iter()
        .zip(b)
        .all(|(&x, &y)| ((x + y) - (x - y).abs()).abs() <= tol)
}

/// The reference solution pattern `(1, 2, 1, 2, ...)`, truncated at `n`.
pub fn alternating_solution(n: usize) -> Vec<f64> {
    (0..n).map(|i| if i % 2 == 0 { 1.0 } else { 2.0 }).collect()
}

/// The benchmark initial vector pattern `(1, 0, 1, 0, ...)`.
pub fn alternating_start(n: usize) -> Vec<f64> {
    (0..n).map(|i| if i % 2 == 0 { 1.0 } else { 0.0 }).collect()
}

fn gen_block_tridiagonal(m: usize, delta: f64, low: f64, high: f64) -> Result<LcpProblem> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "block count m must be >= 2, got {m}"
        )));
    }
    let n = m * m;
    // Assemble CSR row by row; columns come out sorted because the five
    // possible entries per row are visited in ascending column order.
    let mut row_offsets = Vec::with_capacity(n + 1);
    let mut col_indices = Vec::with_capacity(5 * n);
    let mut values = Vec::with_capacity(5 * n);
    row_offsets.push(0);
    for i in 0..n {
        let block = i / m;
        let pos = i % m;
        if block > 0 {
            col_indices.push(i - m);
            values.push(low);
        }
        if pos > 0 {
            col_indices.push(i - 1);
            values.push(low);
        }
        col_indices.push(i);
        values.push(4.0 + delta);
        if pos + 1 < m {
            col_indices.push(i + 1);
            values.push(high);
        }
        if block + 1 < m {
            col_indices.push(i + m);
            values.push(high);
        }
        row_offsets.push(col_indices.len());
    }
    let a = SparseMatrix::from_csr(n, row_offsets, col_indices, values)?;
    let z_star = alternating_solution(n);
    let q: Vec<f64> = a.matvec(&z_star)?.iter().map(|v| -v).collect();
    LcpProblem::new(a, q)
}

/// First benchmark family: symmetric block tridiagonal with diagonal blocks
/// `tridiag(-1, 4 + delta, -1)` and off-diagonal blocks `-I`, of order
/// `n = m^2`, with `q = -A z*` for `z* = (1, 2, 1, 2, ...)`.
pub fn gen_example1(m: usize, delta: f64) -> Result<LcpProblem> {
    gen_block_tridiagonal(m, delta, -1.0, -1.0)
}

/// Second benchmark family: the nonsymmetric analog with lower couplings
/// `-1.5` and upper couplings `-0.5`.
pub fn gen_example2(m: usize, delta: f64) -> Result<LcpProblem> {
    gen_block_tridiagonal(m, delta, -1.5, -0.5)
}
