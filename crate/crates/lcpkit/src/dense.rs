//! Small dense kernels: LU factorization with partial pivoting, solves,
//! inverses and determinants. Used for the non-triangular iteration operators
//! and for the certification routines, all of which run at desk scale.

use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

/// Pivot magnitude below which a factorization is declared singular.
pub const SINGULAR_PIVOT: f64 = 1e-14;

/// Dense square matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_sparse(a: &SparseMatrix) -> Self {
        let mut m = Self::zeros(a.n());
        for (i, j, v) in a.iter() {
            m.data[i * m.n + j] += v;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "from_rows requires a square layout");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row_slice(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn abs(&self) -> DenseMatrix {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v.abs()).collect(),
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row_slice(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                let row_k = other.row_slice(k);
                let out_row = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    out_row[j] += aik * row_k[j];
                }
            }
        }
        out
    }

    /// Extract the principal submatrix indexed by `subset` (sorted indices).
    pub fn principal_submatrix(&self, subset: &[usize]) -> DenseMatrix {
        let k = subset.len();
        let mut m = DenseMatrix::zeros(k);
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    /// LU factorization with partial pivoting; errors when a pivot falls
    /// below [`SINGULAR_PIVOT`].
    pub fn lu(&self) -> Result<LuFactors> {
        LuFactors::compute(self)
    }

    /// Determinant via LU with partial pivoting. Returns 0 for a matrix with
    /// an exactly vanishing pivot rather than erroring, so principal-minor
    /// scans can classify singular submatrices.
    pub fn det(&self) -> f64 {
        let n = self.n;
        let mut lu = self.data.clone();
        let mut det = 1.0;
        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].abs();
            for i in (k + 1)..n {
                let cand = lu[i * n + k].abs();
                if cand > best {
                    best = cand;
                    p = i;
                }
            }
            if best == 0.0 {
                return 0.0;
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = lu[k * n + k];
            det *= pivot;
            for i in (k + 1)..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in (k + 1)..n {
                    lu[i * n + j] -= f * lu[k * n + j];
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<DenseMatrix> {
        self.lu()?.inverse()
    }
}

/// LU factors of a dense matrix, reusable across right-hand sides.
#[derive(Debug, Clone)]
pub struct LuFactors {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl LuFactors {
    fn compute(a: &DenseMatrix) -> Result<Self> {
        let n = a.n;
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].abs();
            for i in (k + 1)..n {
                let cand = lu[i * n + k].abs();
                if cand > best {
                    best = cand;
                    p = i;
                }
            }
            if best < SINGULAR_PIVOT {
                return Err(Error::Singular {
                    step: k,
                    threshold: SINGULAR_PIVOT,
                });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in (k + 1)..n {
                    lu[i * n + j] -= f * lu[k * n + j];
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                context: "dense solve",
                expected: n,
                got: b.len(),
            });
        }
        let mut x = vec![0.0; n];
        self.solve_into(b, &mut x);
        Ok(x)
    }

    pub fn solve_into(&self, b: &[f64], x: &mut [f64]) {
        let n = self.n;
        for (xi, &p) in x.iter_mut().zip(&self.perm) {
            *xi = b[p];
        }
        // forward: L y = P b (unit lower)
        for i in 0..n {
            let mut acc = x[i];
            let row = &self.lu[i * n..i * n + i];
            for (lij, xj) in row.iter().zip(&x[..i]) {
                acc -= lij * xj;
            }
            x[i] = acc;
        }
        // backward: U x = y
        for i in (0..n).rev() {
            let mut acc = x[i];
            let row = &self.lu[i * n + i + 1..(i + 1) * n];
            for (uij, xj) in row.iter().zip(&x[i + 1..]) {
                acc -= uij * xj;
            }
            x[i] = acc / self.lu[i * n + i];
        }
    }

    pub fn inverse(&self) -> Result<DenseMatrix> {
        let n = self.n;
        let mut inv = DenseMatrix::zeros(n);
        let mut e = vec![0.0; n];
        let mut col = vec![0.0; n];
        for j in 0..n {
            e.fill(0.0);
            e[j] = 1.0;
            self.solve_into(&e, &mut col);
            for (i, &v) in col.iter().enumerate() {
                inv.set(i, j, v);
            }
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_2x2() {
        let a = DenseMatrix::from_rows(&[vec![4.0, -1.0], vec![-1.0, 4.0]]);
        let x = a.lu().unwrap().solve(&[3.0, 3.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14);
        assert!((x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn det_and_inverse() {
        let a = DenseMatrix::from_rows(&[vec![2.0, -1.0], vec![-1.0, 2.0]]);
        assert!((a.det() - 3.0).abs() < 1e-14);
        let inv = a.inverse().unwrap();
        // inverse = (1/3) [[2, 1], [1, 2]]
        assert!((inv.get(0, 0) - 2.0 / 3.0).abs() < 1e-14);
        assert!((inv.get(0, 1) - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn singular_reported() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(matches!(a.lu(), Err(Error::Singular { .. })));
        assert_eq!(a.det(), 0.0);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let x = a.lu().unwrap().solve(&[2.0, 3.0]).unwrap();
        assert_eq!(x, vec![3.0, 2.0]);
    }

    #[test]
    fn principal_submatrix_extracts() {
        let a = DenseMatrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![4.0, 5.0, 6.0],
            vec![7.0, 8.0, 9.0],
        ]);
        let s = a.principal_submatrix(&[0, 2]);
        assert_eq!(s.get(0, 1), 3.0);
        assert_eq!(s.get(1, 0), 7.0);
        assert_eq!(s.get(1, 1), 9.0);
    }
}
