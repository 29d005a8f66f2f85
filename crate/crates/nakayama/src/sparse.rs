//! Sparse row echelon forms for the large, very sparse systems produced by
//! the bar complex.

use crate::field::Field;

/// Sparse vector: `(index, value)` pairs sorted by index, no zero values.
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn sparse_from_dense<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse<F: Field>(v: &SparseVec<F>, len: usize) -> Vec<F> {
    let mut out = vec![F::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Incrementally built row echelon form. Each stored row has leading
/// coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    pivot_of: Vec<Option<usize>>,
    rows: Vec<SparseVec<F>>,
    reduced: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivot_of: vec![None; ncols], rows: Vec::new(), reduced: true }
    }

    pub fn from_rows(ncols: usize, rows: impl IntoIterator<Item = SparseVec<F>>) -> Self {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_of[c].is_some()).collect()
    }

    /// Eliminate every pivot column from `v` (against the current rows).
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut work = dense_from_sparse(v, self.ncols);
        let start = v.first().map_or(self.ncols, |(i, _)| *i);
        self.reduce_dense(&mut work, start);
        sparse_from_dense(&work)
    }

    fn reduce_dense(&self, work: &mut [F], start: usize) {
        for c in start..self.ncols {
            if work[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_of[c] {
                let factor = work[c].clone();
                for (j, x) in &self.rows[r] {
                    work[*j].sub_mul_assign(&factor, x);
                }
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert a row; returns its new pivot column if it was independent.
    pub fn insert(&mut self, v: SparseVec<F>) -> Option<usize> {
        let r = self.reduce(&v);
        let (lead, lead_val) = r.first()?.clone();
        let inv = lead_val.inverse().expect("nonzero leading entry");
        let row: SparseVec<F> = r.into_iter().map(|(j, x)| (j, x.mul_ref(&inv))).collect();
        self.pivot_of[lead] = Some(self.rows.len());
        self.rows.push(row);
        self.reduced = false;
        Some(lead)
    }

    /// Back-substitute so every stored row is zero at every other pivot.
    pub fn make_reduced(&mut self) {
        if self.reduced {
            return;
        }
        let pivots = self.pivots();
        for &c in pivots.iter().rev() {
            let r = self.pivot_of[c].expect("pivot");
            let row = std::mem::take(&mut self.rows[r]);
            let mut work = dense_from_sparse(&row, self.ncols);
            for c2 in c + 1..self.ncols {
                if work[c2].is_zero() {
                    continue;
                }
                if let Some(r2) = self.pivot_of[c2] {
                    let factor = work[c2].clone();
                    for (j, x) in &self.rows[r2] {
                        work[*j].sub_mul_assign(&factor, x);
                    }
                }
            }
            self.rows[r] = sparse_from_dense(&work);
        }
        self.reduced = true;
    }

    /// Basis of the null space of the inserted rows (as a linear map on
    /// column space), one vector per free column.
    pub fn kernel(&mut self) -> Vec<SparseVec<F>> {
        self.make_reduced();
        let mut cols_of_free: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.ncols];
        for c in 0..self.ncols {
            if let Some(r) = self.pivot_of[c] {
                for (j, x) in &self.rows[r] {
                    if *j != c {
                        cols_of_free[*j].push((c, -x.clone()));
                    }
                }
            }
        }
        (0..self.ncols)
            .filter(|&f| self.pivot_of[f].is_none())
            .map(|f| {
                let mut v = std::mem::take(&mut cols_of_free[f]);
                v.push((f, F::one()));
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect()
    }

    /// Stored row whose leading entry sits in column `c`.
    fn pivot_row(&self, c: usize) -> Option<&SparseVec<F>> {
        self.pivot_of[c].map(|r| &self.rows[r])
    }
}

/// Solve `M x = b` for a sparse `M` given by rows with `ncols` columns.
/// Free variables are set to zero.
pub fn solve_sparse<F: Field>(rows: &[SparseVec<F>], ncols: usize, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(rows.len(), b.len(), "right-hand side length mismatch");
    let mut e = Echelon::new(ncols + 1);
    for (row, rhs) in rows.iter().zip(b) {
        let mut aug = row.clone();
        if !rhs.is_zero() {
            aug.push((ncols, rhs.clone()));
        }
        if e.insert(aug) == Some(ncols) {
            return None;
        }
    }
    e.make_reduced();
    let mut x = vec![F::zero(); ncols];
    for (c, slot) in x.iter_mut().enumerate() {
        if let Some(row) = e.pivot_row(c) {
            if let Some((_, v)) = row.iter().find(|(j, _)| *j == ncols) {
                *slot = v.clone();
            }
        }
    }
    Some(x)
}

/// Multiply a sparse-row matrix by a dense vector.
pub fn sparse_mul_vec<F: Field>(rows: &[SparseVec<F>], v: &[F]) -> Vec<F> {
    rows.iter()
        .map(|row| {
            let mut acc = F::zero();
            for (j, x) in row {
                if !v[*j].is_zero() {
                    acc.add_mul_assign(x, &v[*j]);
                }
            }
            acc
        })
        .collect()
}

/// Row-major sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    /// From rows, each sorted by column with no zero entries.
    pub fn from_rows(cols: usize, data: Vec<SparseVec<F>>) -> Self {
        SparseMatrix { rows: data.len(), cols, data }
    }

    /// From columns, each sorted by row index.
    pub fn from_columns(rows: usize, columns: &[SparseVec<F>]) -> Self {
        let mut data: Vec<SparseVec<F>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                data[*i].push((j, x.clone()));
            }
        }
        SparseMatrix { rows, cols: columns.len(), data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_data(&self) -> &[SparseVec<F>] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> SparseMatrix<F> {
        SparseMatrix::from_columns(self.cols, &self.data)
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec<F>> {
        self.transpose().data
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        sparse_mul_vec(&self.data, v)
    }

    pub fn mul_sparse_vec(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let dense = dense_from_sparse(v, self.cols);
        sparse_from_dense(&self.mul_vec(&dense))
    }

    /// Whether `self ∘ inner = 0`.
    pub fn composes_to_zero(&self, inner: &SparseMatrix<F>) -> bool {
        assert_eq!(self.cols, inner.rows, "composition shape mismatch");
        inner.columns().iter().all(|c| self.mul_sparse_vec(c).is_empty())
    }

    /// Basis of the null space.
    pub fn kernel(&self) -> Vec<SparseVec<F>> {
        Echelon::from_rows(self.cols, self.data.iter().cloned()).kernel()
    }

    pub fn rank(&self) -> usize {
        Echelon::from_rows(self.cols, self.data.iter().cloned()).rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::linalg::Matrix;
    use num_bigint::BigInt;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    fn rows_of(m: &Matrix<Q>) -> Vec<SparseVec<Q>> {
        (0..m.rows()).map(|i| sparse_from_dense(m.row(i))).collect()
    }

    #[test]
    fn kernel_agrees_with_dense() {
        let m = Matrix::from_rows(vec![
            vec![q(1), q(2), q(0), q(3)],
            vec![q(2), q(4), q(1), q(1)],
            vec![q(3), q(6), q(1), q(4)],
        ])
        .unwrap();
        let mut e = Echelon::from_rows(4, rows_of(&m));
        assert_eq!(e.rank(), m.rank());
        let k = e.kernel();
        assert_eq!(k.len(), 4 - m.rank());
        for v in &k {
            assert!(m.mul_vec(&dense_from_sparse(v, 4)).iter().all(|x| x == &q(0)));
        }
    }

    #[test]
    fn solve_and_inconsistency() {
        let m = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(-1)]]).unwrap();
        let x = solve_sparse(&rows_of(&m), 2, &[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let s = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(2), q(2)]]).unwrap();
        assert!(solve_sparse(&rows_of(&s), 2, &[q(1), q(3)]).is_none());
        assert_eq!(solve_sparse(&rows_of(&s), 2, &[q(1), q(2)]).unwrap(), vec![q(1), q(0)]);
    }
}
