//! Dense matrices over an exact field, with reduced row echelon form,
//! linear solving, and kernel computation.
//!
//! Everything downstream (path-algebra bases, Hom spaces, resolutions, the
//! reduction engine's membership tests) reduces to these three operations.
//! Matrices at desk scale stay below a few hundred rows, so a dense
//! representation is the right trade.

use crate::scalar::Field;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<F>, // row-major
}

/// Result of `rref`: the reduced form together with rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub rank: usize,
    pub reduced: Matrix<F>,
    pub pivot_cols: Vec<usize>,
}

/// Solution space of `m x = rhs`: one particular solution per rhs column,
/// plus a basis of the kernel.
#[derive(Clone, Debug)]
pub struct Solution<F: Field> {
    pub particular: Matrix<F>,
    pub kernel: Vec<Matrix<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn column(data: Vec<F>) -> Self {
        let rows = data.len();
        Matrix {
            rows,
            cols: 1,
            entries: data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out: Matrix<F> = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.mul(&other[(k, j)]);
                    out[(i, j)] = out[(i, j)].add(&t);
                }
            }
        }
        out
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Reduced row echelon form together with rank and pivot columns.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
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
                m[(r, j)] = m[(r, j)].mul(&inv);
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let t = m[(r, j)].mul(&f);
                        m[(i, j)] = m[(i, j)].sub(&t);
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        Rref {
            rank: r,
            reduced: m,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space as column vectors.
    pub fn kernel_basis(&self) -> Vec<Matrix<F>> {
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = reduced[(r, free)].neg();
            }
            basis.push(Matrix::column(v));
        }
        basis
    }

    /// Solve `self * x = rhs` for every column of `rhs`.
    ///
    /// Returns `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix<F>) -> Option<Solution<F>> {
        assert_eq!(self.rows, rhs.rows, "row counts must agree");
        // Augment and reduce.
        let mut aug = Matrix::zero(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                aug[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = aug.rref();
        if pivot_cols.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut particular = Matrix::zero(self.cols, rhs.cols);
        for (r, &pc) in pivot_cols.iter().enumerate() {
            for j in 0..rhs.cols {
                particular[(pc, j)] = reduced[(r, self.cols + j)].clone();
            }
        }
        Some(Solution {
            particular,
            kernel: self.kernel_basis(),
        })
    }

    /// Two-sided inverse, when the matrix is square and of full rank.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let sol = self.solve(&Matrix::identity(self.rows))?;
        if sol.kernel.is_empty() {
            Some(sol.particular)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.entries[i * self.cols + j]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.entries[i * self.cols + j]
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A row-span with membership tests, used for ideal and submodule spans.
///
/// Rows are kept in reduced echelon form; `insert` returns whether the row
/// enlarged the span.
#[derive(Clone, Debug)]
pub struct RowSpan<F: Field> {
    dim: usize,
    rows: Vec<Vec<F>>,     // echelon rows, pivots normalized to 1
    pivots: Vec<usize>,    // pivot column per row, strictly increasing order not required
}

impl<F: Field> RowSpan<F> {
    pub fn new(dim: usize) -> Self {
        RowSpan {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduce `v` against the current span (in place of a quotient map).
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..self.dim {
                    let t = row[j].mul(&f);
                    v[j] = v[j].sub(&t);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert a vector; returns true when the span grew.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero entry");
        for x in r.iter_mut() {
            *x = x.mul(&inv);
        }
        // Back-substitute into existing rows to keep things reduced.
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for j in 0..self.dim {
                    let t = r[j].mul(&f);
                    row[j] = row[j].sub(&t);
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    pub fn basis_rows(&self) -> &[Vec<F>] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};
    use proptest::prelude::*;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_identity_is_itself() {
        let id: Matrix<Rat> = Matrix::identity(2);
        let r = id.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.reduced, id);
    }

    #[test]
    fn rref_zero_has_rank_zero() {
        let z: Matrix<Rat> = Matrix::zero(3, 3);
        let r = z.rref();
        assert_eq!(r.rank, 0);
        assert_eq!(r.reduced, z);
    }

    #[test]
    fn rref_proportional_rows_rank_one() {
        let a = m(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn kernel_of_proportional_rows() {
        let a = m(vec![vec![1, 2], vec![2, 4]]);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        // Kernel vector proportional to (2, -1): check a * v = 0.
        assert!(a.mul(&k[0]).is_zero());
        assert!(!k[0].is_zero());
    }

    #[test]
    fn kernel_identity_empty_and_zero_full() {
        let id: Matrix<Rat> = Matrix::identity(3);
        assert!(id.kernel_basis().is_empty());
        let z: Matrix<Rat> = Matrix::zero(4, 4);
        assert_eq!(z.kernel_basis().len(), 4);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let id: Matrix<Rat> = Matrix::identity(2);
        let b = m(vec![vec![3], vec![5]]);
        let s = id.solve(&b).unwrap();
        assert_eq!(s.particular, b);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn solve_zero_system() {
        let z: Matrix<Rat> = Matrix::zero(2, 2);
        let b: Matrix<Rat> = Matrix::zero(2, 1);
        let s = z.solve(&b).unwrap();
        assert!(s.particular.is_zero());
        assert_eq!(s.kernel.len(), 2);
    }

    #[test]
    fn solve_one_equation() {
        // x + y = 2: particular (2, 0), kernel span{(1, -1)} up to scale.
        let a = m(vec![vec![1, 1]]);
        let b = m(vec![vec![2]]);
        let s = a.solve(&b).unwrap();
        assert_eq!(s.particular, m(vec![vec![2], vec![0]]));
        assert_eq!(s.kernel.len(), 1);
        assert!(a.mul(&s.kernel[0]).is_zero());
    }

    #[test]
    fn solve_inconsistent() {
        let a = m(vec![vec![1, 2], vec![2, 4]]);
        let b = m(vec![vec![1], vec![3]]);
        assert!(a.solve(&b).is_none());
    }

    #[test]
    fn rowspan_membership() {
        let mut s = RowSpan::<Rat>::new(3);
        assert!(s.insert(&[rat(1), rat(2), rat(0)]));
        assert!(s.insert(&[rat(0), rat(1), rat(1)]));
        assert!(!s.insert(&[rat(1), rat(3), rat(1)]));
        assert!(s.contains(&[rat(2), rat(5), rat(1)]));
        assert!(!s.contains(&[rat(0), rat(0), rat(1)]));
    }

    proptest! {
        // rank + kernel dimension = number of columns, on small random matrices.
        #[test]
        fn rank_nullity(rows in 1usize..5, cols in 1usize..5,
                        entries in proptest::collection::vec(-4i64..5, 25)) {
            let a = Matrix::from_fn(rows, cols, |i, j| rat(entries[i * cols + j]));
            prop_assert_eq!(a.rank() + a.kernel_basis().len(), cols);
        }

        // rref is idempotent.
        #[test]
        fn rref_idempotent(rows in 1usize..5, cols in 1usize..5,
                           entries in proptest::collection::vec(-4i64..5, 25)) {
            let a = Matrix::from_fn(rows, cols, |i, j| rat(entries[i * cols + j]));
            let r = a.rref().reduced;
            prop_assert_eq!(r.rref().reduced, r.clone());
        }

        // Solutions substituted back give the rhs exactly.
        #[test]
        fn solve_exact(cols in 1usize..4, rows in 1usize..4,
                       entries in proptest::collection::vec(-3i64..4, 16),
                       xs in proptest::collection::vec(-3i64..4, 4)) {
            let a = Matrix::from_fn(rows, cols, |i, j| rat(entries[i * cols + j]));
            let x = Matrix::from_fn(cols, 1, |i, _| rat(xs[i]));
            let b = a.mul(&x);
            let s = a.solve(&b).expect("consistent by construction");
            prop_assert_eq!(a.mul(&s.particular), b);
        }
    }
}
