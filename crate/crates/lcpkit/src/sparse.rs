//! Sparse square matrices in compressed sparse row form, plus the handful of
//! kernels the iteration engines are built on: matrix-vector products, the
//! D/L/U splitting, sparse linear combinations and forward substitution.
//!
//! The splitting convention throughout the crate is `A = D - L - U` with `D`
//! the diagonal, `L` the *negated* strictly lower part and `U` the negated
//! strictly upper part of `A`.

use crate::error::{Error, Result};

/// Square sparse matrix in CSR format.
///
/// Within each row the column indices are strictly increasing. Explicit zero
/// entries are allowed; duplicate `(row, col)` pairs are not. Matrices are
/// immutable after construction and safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    n: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Build from raw CSR arrays, validating the structural invariants.
    pub fn from_csr(
        n: usize,
        row_offsets: Vec<usize>,
        col_indices: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidStructure("dimension must be >= 1".into()));
        }
        if row_offsets.len() != n + 1 {
            return Err(Error::InvalidStructure(format!(
                "row_offsets has length {}, expected {}",
                row_offsets.len(),
                n + 1
            )));
        }
        if row_offsets[0] != 0 || row_offsets[n] != values.len() {
            return Err(Error::InvalidStructure(
                "row_offsets must start at 0 and end at nnz".into(),
            ));
        }
        if col_indices.len() != values.len() {
            return Err(Error::InvalidStructure(
                "col_indices and values lengths differ".into(),
            ));
        }
        for i in 0..n {
            let (start, end) = (row_offsets[i], row_offsets[i + 1]);
            if start > end {
                return Err(Error::InvalidStructure(format!(
                    "row_offsets decreasing at row {i}"
                )));
            }
            let mut prev: Option<usize> = None;
            for &c in &col_indices[start..end] {
                if c >= n {
                    return Err(Error::InvalidStructure(format!(
                        "column index {c} out of range in row {i}"
                    )));
                }
                if let Some(p) = prev {
                    if c <= p {
                        return Err(Error::InvalidStructure(format!(
                            "columns not strictly increasing in row {i}"
                        )));
                    }
                }
                prev = Some(c);
            }
        }
        Ok(Self {
            n,
            row_offsets,
            col_indices,
            values,
        })
    }

    /// Build from (row, col, value) triplets. Duplicate coordinates are summed.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidStructure("dimension must be >= 1".into()));
        }
        let mut per_row: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for &(i, j, v) in triplets {
            if i >= n || j >= n {
                return Err(Error::InvalidStructure(format!(
                    "triplet ({i}, {j}) out of range for n = {n}"
                )));
            }
            per_row[i].push((j, v));
        }
        let mut row_offsets = Vec::with_capacity(n + 1);
        let mut col_indices = Vec::new();
        let mut values = Vec::new();
        row_offsets.push(0);
        for row in &mut per_row {
            row.sort_by_key(|&(j, _)| j);
            let mut k = 0;
            while k < row.len() {
                let j = row[k].0;
                let mut v = row[k].1;
                while k + 1 < row.len() && row[k + 1].0 == j {
                    k += 1;
                    v += row[k].1;
                }
                col_indices.push(j);
                values.push(v);
                k += 1;
            }
            row_offsets.push(col_indices.len());
        }
        Ok(Self {
            n,
            row_offsets,
            col_indices,
            values,
        })
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            row_offsets: (0..=n).collect(),
            col_indices: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    /// Matrix of order `n` with no stored entries.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            row_offsets: vec![0; n + 1],
            col_indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let (s, e) = (self.row_offsets[i], self.row_offsets[i + 1]);
        (&self.col_indices[s..e], &self.values[s..e])
    }

    /// Stored value at `(i, j)`, or 0 when the entry is not stored.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    /// Iterate over stored entries as `(row, col, value)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    /// Diagonal as a dense vector; missing diagonal entries read as 0.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// True when no stored entry lies strictly above the diagonal.
    pub fn is_lower_triangular(&self) -> bool {
        self.iter().all(|(i, j, _)| j <= i)
    }

    /// Entrywise absolute value.
    pub fn abs(&self) -> SparseMatrix {
        Self {
            n: self.n,
            row_offsets: self.row_offsets.clone(),
            col_indices: self.col_indices.clone(),
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    /// Scale every stored entry by `c`.
    pub fn scaled(&self, c: f64) -> SparseMatrix {
        Self {
            n: self.n,
            row_offsets: self.row_offsets.clone(),
            col_indices: self.col_indices.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// `A x`, accumulated per row in ascending column order so repeated runs
    /// are bitwise identical.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.n];
        self.matvec_into(x, &mut y)?;
        Ok(y)
    }

    /// In-place variant of [`matvec`](Self::matvec) for hot loops.
    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "matvec",
                expected: self.n,
                got: x.len(),
            });
        }
        debug_assert_eq!(y.len(), self.n);
        for (i, yi) in y.iter_mut().enumerate() {
            let (cols, vals) = self.row(i);
            let mut acc = 0.0;
            for (&j, &v) in cols.iter().zip(vals) {
                acc += v * x[j];
            }
            *yi = acc;
        }
        Ok(())
    }

    /// Largest absolute entrywise difference against `other`, taken over the
    /// union of both sparsity patterns.
    pub fn max_abs_diff(&self, other: &SparseMatrix) -> f64 {
        assert_eq!(self.n, other.n, "max_abs_diff requires equal dimensions");
        let mut worst = 0.0f64;
        for (i, j, v) in self.iter() {
            worst = worst.max((v - other.get(i, j)).abs());
        }
        for (i, j, v) in other.iter() {
            worst = worst.max((v - self.get(i, j)).abs());
        }
        worst
    }
}

/// Diagonal matrix stored as its entry vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalMatrix {
    entries: Vec<f64>,
}

impl DiagonalMatrix {
    pub fn new(entries: Vec<f64>) -> Self {
        Self { entries }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: vec![1.0; n],
        }
    }

    /// Constant diagonal `c * I`.
    pub fn scalar(n: usize, c: f64) -> Self {
        Self {
            entries: vec![c; n],
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn scaled(&self, c: f64) -> DiagonalMatrix {
        Self {
            entries: self.entries.iter().map(|v| c * v).collect(),
        }
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let n = self.entries.len();
        SparseMatrix {
            n,
            row_offsets: (0..=n).collect(),
            col_indices: (0..n).collect(),
            values: self.entries.clone(),
        }
    }

    /// Check the positivity requirement placed on relaxation diagonals.
    pub fn require_positive(&self) -> Result<()> {
        match self.entries.iter().position(|&v| v <= 0.0) {
            Some(i) => Err(Error::InvalidParameter(format!(
                "diagonal entry {i} is {} but must be > 0",
                self.entries[i]
            ))),
            None => Ok(()),
        }
    }
}

/// Split `A = D - L - U`: `D` the diagonal (missing entries become explicit
/// zeros), `L` the negated strictly lower part, `U` the negated strictly
/// upper part. The reconstruction `D - L - U = A` is entrywise exact since
/// only copies and sign flips occur.
pub fn split_dlu(a: &SparseMatrix) -> (DiagonalMatrix, SparseMatrix, SparseMatrix) {
    let n = a.n();
    let mut d = vec![0.0; n];
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for (i, j, v) in a.iter() {
        if i == j {
            d[i] = v;
        } else if j < i {
            lower.push((i, j, -v));
        } else {
            upper.push((i, j, -v));
        }
    }
    let l = SparseMatrix::from_triplets(n, &lower).expect("valid triplets from valid matrix");
    let u = SparseMatrix::from_triplets(n, &upper).expect("valid triplets from valid matrix");
    (DiagonalMatrix::new(d), l, u)
}

/// Term of a sparse linear combination.
pub enum Term<'a> {
    Mat(f64, &'a SparseMatrix),
    Diag(f64, &'a DiagonalMatrix),
    /// Scaled identity.
    Eye(f64),
}

/// Sparse linear combination `sum_k c_k * A_k`. Coincident entries are summed
/// in argument order; cancellation keeps an explicit zero.
pub fn combine(n: usize, terms: &[Term<'_>]) -> Result<SparseMatrix> {
    // Accumulate per row with a dense scratch marked by a stamp, preserving
    // deterministic (sorted) column order in the output.
    let mut scratch = vec![0.0f64; n];
    let mut stamp = vec![usize::MAX; n];
    let mut row_offsets = Vec::with_capacity(n + 1);
    let mut col_indices = Vec::new();
    let mut values = Vec::new();
    row_offsets.push(0);
    let mut touched: Vec<usize> = Vec::with_capacity(16);
    for i in 0..n {
        touched.clear();
        for term in terms {
            match term {
                Term::Mat(c, m) => {
                    if m.n() != n {
                        return Err(Error::DimensionMismatch {
                            context: "combine",
                            expected: n,
                            got: m.n(),
                        });
                    }
                    let (cols, vals) = m.row(i);
                    for (&j, &v) in cols.iter().zip(vals) {
                        if stamp[j] != i {
                            stamp[j] = i;
                            scratch[j] = 0.0;
                            touched.push(j);
                        }
                        scratch[j] += c * v;
                    }
                }
                Term::Diag(c, dm) => {
                    if dm.n() != n {
                        return Err(Error::DimensionMismatch {
                            context: "combine",
                            expected: n,
                            got: dm.n(),
                        });
                    }
                    if stamp[i] != i {
                        stamp[i] = i;
                        scratch[i] = 0.0;
                        touched.push(i);
                    }
                    scratch[i] += c * dm.entries()[i];
                }
                Term::Eye(c) => {
                    if stamp[i] != i {
                        stamp[i] = i;
                        scratch[i] = 0.0;
                        touched.push(i);
                    }
                    scratch[i] += c;
                }
            }
        }
        touched.sort_unstable();
        for &j in &touched {
            col_indices.push(j);
            values.push(scratch[j]);
        }
        row_offsets.push(col_indices.len());
    }
    Ok(SparseMatrix {
        n,
        row_offsets,
        col_indices,
        values,
    })
}

/// Solve `T x = b` by forward substitution.
///
/// `T` must have no stored entry above the diagonal and a nonzero entry on
/// every diagonal position. Accumulation runs in ascending column order, so
/// the result is deterministic for a fixed matrix.
pub fn lower_triangular_solve(t: &SparseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let mut x = vec![0.0; t.n()];
    lower_triangular_solve_into(t, b, &mut x)?;
    Ok(x)
}

pub fn lower_triangular_solve_into(t: &SparseMatrix, b: &[f64], x: &mut [f64]) -> Result<()> {
    let n = t.n();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            context: "lower_triangular_solve",
            expected: n,
            got: b.len(),
        });
    }
    debug_assert_eq!(x.len(), n);
    for i in 0..n {
        let (cols, vals) = t.row(i);
        let mut acc = b[i];
        let mut diag = 0.0;
        let mut has_diag = false;
        for (&j, &v) in cols.iter().zip(vals) {
            if j < i {
                acc -= v * x[j];
            } else if j == i {
                diag = v;
                has_diag = true;
            } else {
                return Err(Error::NotLowerTriangular { row: i, col: j });
            }
        }
        if !has_diag || diag == 0.0 {
            return Err(Error::ZeroDiagonal(i));
        }
        x[i] = acc / diag;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> SparseMatrix {
        // [[4, -1], [-1, 4]]
        SparseMatrix::from_triplets(2, &[(0, 0, 4.0), (0, 1, -1.0), (1, 0, -1.0), (1, 1, 4.0)])
            .unwrap()
    }

    #[test]
    fn matvec_identity() {
        let a = SparseMatrix::identity(2);
        assert_eq!(a.matvec(&[3.0, -1.0]).unwrap(), vec![3.0, -1.0]);
    }

    #[test]
    fn matvec_row_sums() {
        assert_eq!(toy().matvec(&[1.0, 1.0]).unwrap(), vec![3.0, 3.0]);
    }

    #[test]
    fn matvec_dimension_mismatch() {
        assert!(matches!(
            toy().matvec(&[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn split_sign_convention() {
        let (d, l, u) = split_dlu(&toy());
        assert_eq!(d.entries(), &[4.0, 4.0]);
        assert_eq!(l.get(1, 0), 1.0);
        assert_eq!(l.nnz(), 1);
        assert_eq!(u.get(0, 1), 1.0);
        assert_eq!(u.nnz(), 1);
    }

    #[test]
    fn split_identity() {
        let (d, l, u) = split_dlu(&SparseMatrix::identity(3));
        assert_eq!(d.entries(), &[1.0, 1.0, 1.0]);
        assert_eq!(l.nnz(), 0);
        assert_eq!(u.nnz(), 0);
    }

    #[test]
    fn triangular_solve_diagonal() {
        let t = DiagonalMatrix::new(vec![2.0, 4.0]).to_sparse();
        assert_eq!(
            lower_triangular_solve(&t, &[2.0, 8.0]).unwrap(),
            vec![1.0, 2.0]
        );
    }

    #[test]
    fn triangular_solve_hand_case() {
        let t = SparseMatrix::from_triplets(2, &[(0, 0, 1.0), (1, 0, -1.0), (1, 1, 1.0)]).unwrap();
        assert_eq!(
            lower_triangular_solve(&t, &[1.0, 0.0]).unwrap(),
            vec![1.0, 1.0]
        );
    }

    #[test]
    fn triangular_solve_rejects_upper_entry() {
        let t = toy();
        assert!(matches!(
            lower_triangular_solve(&t, &[1.0, 1.0]),
            Err(Error::NotLowerTriangular { row: 0, col: 1 })
        ));
    }

    #[test]
    fn triangular_solve_zero_diagonal() {
        let t = SparseMatrix::from_triplets(2, &[(0, 0, 1.0), (1, 0, 1.0)]).unwrap();
        assert!(matches!(
            lower_triangular_solve(&t, &[1.0, 1.0]),
            Err(Error::ZeroDiagonal(1))
        ));
    }

    #[test]
    fn combine_keeps_cancelled_entries_as_zeros() {
        let a = toy();
        let c = combine(2, &[Term::Mat(1.0, &a), Term::Mat(-1.0, &a)]).unwrap();
        assert_eq!(c.nnz(), 4);
        assert!(c.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn combine_diag_and_eye() {
        let a = toy();
        let om = DiagonalMatrix::new(vec![1.0, 2.0]);
        let c = combine(
            2,
            &[Term::Mat(1.0, &a), Term::Diag(1.0, &om), Term::Eye(1.0)],
        )
        .unwrap();
        assert_eq!(c.get(0, 0), 6.0);
        assert_eq!(c.get(1, 1), 7.0);
        assert_eq!(c.get(0, 1), -1.0);
    }

    #[test]
    fn from_csr_rejects_bad_offsets() {
        assert!(SparseMatrix::from_csr(2, vec![0, 1], vec![0], vec![1.0]).is_err());
        assert!(SparseMatrix::from_csr(2, vec![0, 2, 1], vec![0, 1], vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn from_triplets_sums_duplicates() {
        let a = SparseMatrix::from_triplets(2, &[(0, 0, 1.0), (0, 0, 2.5)]).unwrap();
        assert_eq!(a.get(0, 0), 3.5);
        assert_eq!(a.nnz(), 1);
    }
}
