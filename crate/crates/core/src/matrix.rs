//! Dense exact matrices.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// A dense row-major matrix over an exact ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(ring: &R, rows: usize, cols: usize) -> Self {
        Self { ring: ring.clone(), rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn from_vec(ring: &R, rows: usize, cols: usize, data: Vec<R::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { ring: ring.clone(), rows, cols, data })
    }

    pub fn from_fn(ring: &R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { ring: ring.clone(), rows, cols, data }
    }

    /// Builds a matrix from small integer rows; convenient for fixtures.
    pub fn from_i64_rows(ring: &R, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(ring, rows.len(), cols, |i, j| ring.from_i64(rows[i][j]))
    }

    pub fn from_rows(ring: &R, rows: Vec<Vec<R::Elem>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(Self { ring: ring.clone(), rows: n, cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ring: &R, rows: usize, columns: &[Vec<R::Elem>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(ring, rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, v) in col.iter().enumerate() {
                m.data[i * cols + j] = v.clone();
            }
        }
        m
    }

    pub fn column_vector(ring: &R, v: Vec<R::Elem>) -> Self {
        let n = v.len();
        Self { ring: ring.clone(), rows: n, cols: 1, data: v }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut R::Elem {
        &mut self.data[i * self.cols + j]
    }

    /// `self[i][j] += v`
    pub fn add_to(&mut self, i: usize, j: usize, v: &R::Elem) {
        let idx = i * self.cols + j;
        self.ring.add_assign(&mut self.data[idx], v);
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<R::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn into_rows(self) -> Vec<Vec<R::Elem>> {
        let cols = self.cols;
        if cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        let mut it = self.data.into_iter();
        (0..self.rows).map(|_| it.by_ref().take(cols).collect()).collect()
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !self.ring.is_zero(x)).count()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Product skipping zero entries of the left factor; bar-complex
    /// matrices are overwhelmingly sparse.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let ring = &self.ring;
        let mut out = Self::zeros(ring, self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * oc..(i + 1) * oc];
                for (acc, b) in orow.iter_mut().zip(brow) {
                    if !ring.is_zero(b) {
                        ring.mul_add_assign(acc, a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let ring = &self.ring;
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !ring.is_zero(a) && !ring.is_zero(b) {
                        ring.mul_add_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Self {
        assert_eq!(self.shape(), other.shape(), "elementwise shape mismatch");
        Self {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.ring.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.ring.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| self.ring.neg(a))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map(|a| self.ring.mul(c, a))
    }

    pub fn map(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        Self { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(&self.ring, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { ring: self.ring.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn vstack_all(ring: &R, cols: usize, blocks: &[Self]) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Self { ring: ring.clone(), rows, cols, data }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.ring, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.ring, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// Kronecker product `self ⊗ other` in row-major index convention.
    pub fn kronecker(&self, other: &Self) -> Self {
        let ring = &self.ring;
        let (r2, c2) = other.shape();
        let mut out = Self::zeros(ring, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if ring.is_zero(a) {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if !ring.is_zero(b) {
                            out.set(i * r2 + k, j * c2 + l, ring.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Same entries read in another ring via a conversion map.
    pub fn convert<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> Matrix<S> {
        Matrix { ring: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Entries formatted as decimal strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| self.ring.format(x)).collect()).collect()
    }
}

impl<R: Ring> Index<(usize, usize)> for Matrix<R> {
    type Output = R::Elem;

    fn index(&self, (i, j): (usize, usize)) -> &R::Elem {
        self.get(i, j)
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.ring.format(x)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, PrimeField};

    #[test]
    fn product_and_transpose() {
        let z = Integers;
        let a = Matrix::from_i64_rows(&z, &[&[1, 2], &[0, 3]]);
        let b = Matrix::from_i64_rows(&z, &[&[4], &[5]]);
        assert_eq!(a.mul(&b), Matrix::from_i64_rows(&z, &[&[14], &[15]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.mul(&Matrix::identity(&z, 2)), a);
    }

    #[test]
    fn kronecker_row_major() {
        let f = PrimeField::new(7).unwrap();
        let a = Matrix::from_i64_rows(&f, &[&[1, 2]]);
        let b = Matrix::from_i64_rows(&f, &[&[1], &[3]]);
        let k = a.kronecker(&b);
        assert_eq!(k, Matrix::from_i64_rows(&f, &[&[1, 2], &[3, 6]]));
    }

    #[test]
    fn stacking() {
        let z = Integers;
        let a = Matrix::from_i64_rows(&z, &[&[1, 2]]);
        assert_eq!(a.vstack(&a).shape(), (2, 2));
        assert_eq!(a.hstack(&a).row(0).len(), 4);
        assert_eq!(a.into_rows(), vec![vec![1.into(), 2.into()]]);
    }
}
