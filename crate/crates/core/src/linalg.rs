//! Exact dense and sparse Gaussian elimination over any [`Field`].
//!
//! Pivoting always takes the leftmost column with a nonzero entry and, within
//! it, the first available row, so reduced forms are reproducible.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalars::{Field, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("inconsistent system: rank {rank}, augmented rank {augmented_rank}")]
    Inconsistent { rank: usize, augmented_rank: usize },
    #[error("solution not unique: rank {rank} < {unknowns} unknowns")]
    Underdetermined { rank: usize, unknowns: usize },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out: Matrix<F> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Shape(format!("vector of length {}", v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b)
            })
            .collect())
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Matrix<F> {
        self.add(&rhs.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        self.map(|a| a.clone() * c)
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * &m[(r, j)];
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// The unique solution of `self · x = b`.
    pub fn solve(&self, b: &[F]) -> Result<Vec<F>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Shape(format!("rhs of length {}", b.len())));
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        let rank = pivots.iter().filter(|&&p| p < self.cols).count();
        if pivots.contains(&self.cols) {
            return Err(LinalgError::Inconsistent {
                rank,
                augmented_rank: pivots.len(),
            });
        }
        if rank < self.cols {
            return Err(LinalgError::Underdetermined {
                rank,
                unknowns: self.cols,
            });
        }
        Ok((0..self.cols).map(|i| r[(i, self.cols)].clone()).collect())
    }

    pub fn inverse(&self) -> Result<Matrix<F>, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// A sparse row: column index to nonzero entry.
pub type SparseRow<F> = BTreeMap<usize, F>;

/// Fully reduced echelon form of a set of sparse rows.
///
/// Columns are eliminated in increasing index order, so callers choose which
/// columns become pivots by how they number them. Returns `(pivot, row)` pairs
/// with each row normalized to 1 at its pivot and zero at every other pivot.
pub fn sparse_rref<F: Field>(rows: Vec<SparseRow<F>>) -> Vec<(usize, SparseRow<F>)> {
    let mut basis: BTreeMap<usize, SparseRow<F>> = BTreeMap::new();
    for mut row in rows {
        reduce_against(&mut row, &basis);
        let Some((&p, lead)) = row.iter().next() else {
            continue;
        };
        let inv = lead.inv().expect("nonzero entry");
        for v in row.values_mut() {
            *v = v.clone() * &inv;
        }
        for other in basis.values_mut() {
            if let Some(f) = other.get(&p).cloned() {
                axpy(other, &-f, &row);
            }
        }
        basis.insert(p, row);
    }
    basis.into_iter().collect()
}

/// Subtracts multiples of the basis rows until no pivot column remains in `row`.
pub fn reduce_against<F: Field>(row: &mut SparseRow<F>, basis: &BTreeMap<usize, SparseRow<F>>) {
    loop {
        let hit = row
            .iter()
            .find(|(c, _)| basis.contains_key(c))
            .map(|(&c, v)| (c, v.clone()));
        match hit {
            Some((c, f)) => axpy(row, &-f, &basis[&c]),
            None => return,
        }
    }
}

/// `y += a · x`, dropping cancelled entries.
pub fn axpy<F: Field>(y: &mut SparseRow<F>, a: &F, x: &SparseRow<F>) {
    for (&c, v) in x {
        let entry = y.entry(c).or_insert_with(F::zero);
        *entry = entry.clone() + a.clone() * v;
        if entry.is_zero() {
            y.remove(&c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GaussianRational as G;

    fn m(rows: &[&[i64]]) -> Matrix<G> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| G::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn solve_unique() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[G::from_int(3), G::from_int(5)]).unwrap();
        assert_eq!(x, vec![G::from_ratio(4, 5), G::from_ratio(7, 5)]);
    }

    #[test]
    fn solve_reports_rank_defects() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(
            a.solve(&[G::one(), G::from_int(3)]),
            Err(LinalgError::Inconsistent {
                rank: 1,
                augmented_rank: 2
            })
        );
        assert_eq!(
            a.solve(&[G::one(), G::from_int(2)]),
            Err(LinalgError::Underdetermined {
                rank: 1,
                unknowns: 2
            })
        );
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[0, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.try_mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn sparse_matches_dense_rank() {
        let rows = vec![
            BTreeMap::from([(0, G::one()), (2, G::from_int(2))]),
            BTreeMap::from([(0, G::from_int(2)), (2, G::from_int(4))]),
            BTreeMap::from([(1, G::i()), (2, G::one())]),
        ];
        let red = sparse_rref(rows);
        assert_eq!(red.iter().map(|(p, _)| *p).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(red[1].1[&2], -G::i());
    }
}
