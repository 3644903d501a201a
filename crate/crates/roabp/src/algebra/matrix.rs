//! Rectangular matrices over any [`Scalar`] domain.
//!
//! `Matrix<Fp>` holds coefficient matrices and flattened coefficient spaces;
//! `Matrix<UniPoly<..>>` holds program layers and matrices over `F[t]`.

use crate::algebra::field::Field;
use crate::algebra::Scalar;
use std::fmt;
use std::ops::{Index, IndexMut};

/// A `rows x cols` grid stored row-major. Either dimension may be zero; a
/// zero exemplar of the entry type keeps the field (and variable) context
/// alive for empty shapes.
#[derive(Clone, PartialEq)]
pub struct Matrix<T: Scalar> {
    rows: usize,
    cols: usize,
    zero: T,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(zero: T, rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert!(zero.is_zero());
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix {
            rows,
            cols,
            zero,
            data,
        }
    }

    pub fn zeros(zero: T, rows: usize, cols: usize) -> Self {
        let data = vec![zero.clone(); rows * cols];
        Matrix {
            rows,
            cols,
            zero,
            data,
        }
    }

    pub fn identity(zero: T, n: usize) -> Self {
        let mut m = Self::zeros(zero, n, n);
        for i in 0..n {
            m[(i, i)] = m.zero.one_like();
        }
        m
    }

    pub fn from_rows(zero: T, rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            zero,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.zero.field()
    }

    pub fn zero_entry(&self) -> &T {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    /// Row-major flattening; the one fixed flattening used for every rank
    /// computation over coefficient spaces.
    pub fn flatten(&self) -> Vec<T> {
        self.data.clone()
    }

    pub fn map<U: Scalar>(&self, zero: U, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix::new(zero, self.rows, self.cols, self.data.iter().map(f).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.zero.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Matrix::new(self.zero.clone(), self.rows, self.cols, data)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Matrix::new(self.zero.clone(), self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Self {
        Matrix::new(
            self.zero.clone(),
            self.rows,
            self.cols,
            self.data.iter().map(|a| a.neg()).collect(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        Matrix::new(
            self.zero.clone(),
            self.rows,
            self.cols,
            self.data.iter().map(|a| a.mul(k)).collect(),
        )
    }

    /// Matrix product with zero-skipping, so block-diagonal operands cost
    /// only their nonzero blocks.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.zero.clone(), self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        let mut data = Vec::with_capacity((self.cols + rhs.cols) * self.rows);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(rhs.row(i));
        }
        Matrix::new(self.zero.clone(), self.rows, self.cols + rhs.cols, data)
    }

    /// `[self; rhs]`.
    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix::new(self.zero.clone(), self.rows + rhs.rows, self.cols, data)
    }

    pub fn block_diag(blocks: &[&Self]) -> Self {
        assert!(!blocks.is_empty());
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(blocks[0].zero.clone(), rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}

impl<T: Scalar> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Fp;

    fn f() -> Field {
        Field::new(101).unwrap()
    }

    fn m(rows: usize, cols: usize, vals: &[u64]) -> Matrix<Fp> {
        Matrix::new(
            f().zero(),
            rows,
            cols,
            vals.iter().map(|&v| f().el(v)).collect(),
        )
    }

    #[test]
    fn product_matches_hand_value() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(2, 1, &[5, 6]);
        assert_eq!(a.mul(&b), m(2, 1, &[17, 39]));
    }

    #[test]
    fn empty_dimensions_compose() {
        let a = m(2, 0, &[]);
        let b = m(0, 3, &[]);
        let p = a.mul(&b);
        assert_eq!((p.rows(), p.cols()), (2, 3));
        assert!(p.is_zero());
    }

    #[test]
    fn block_diag_and_stacking() {
        let a = m(1, 2, &[1, 2]);
        let b = m(2, 1, &[3, 4]);
        let d = Matrix::block_diag(&[&a, &b]);
        assert_eq!((d.rows(), d.cols()), (3, 3));
        assert_eq!(d[(0, 1)].value(), 2);
        assert_eq!(d[(2, 2)].value(), 4);
        assert_eq!(d[(0, 2)].value(), 0);
        assert_eq!(a.hstack(&m(1, 1, &[9])), m(1, 3, &[1, 2, 9]));
        assert_eq!(b.vstack(&m(1, 1, &[9])), m(3, 1, &[3, 4, 9]));
    }

    #[test]
    fn identity_is_neutral() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let id = Matrix::identity(f().zero(), 2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);
    }
}
