//! Row echelon (Hermite) forms, kernels, images and linear solving.
//!
//! One Euclidean elimination serves every ring: over a field it produces the
//! reduced row echelon form, over ℤ the row Hermite normal form (positive
//! pivots, entries above each pivot reduced into `[0, pivot)`).

use crate::matrix::Matrix;
use crate::ring::Ring;

/// `U · M = H` with `H` in row echelon form.
#[derive(Clone, Debug)]
pub struct RowEchelon<R: Ring> {
    pub form: Matrix<R>,
    pub transform: Option<Matrix<R>>,
    /// Pivot column of each nonzero row of `form`.
    pub pivots: Vec<usize>,
}

impl<R: Ring> RowEchelon<R> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn nonzero_positions<R: Ring>(ring: &R, row: &[R::Elem], from: usize) -> Vec<usize> {
    (from..row.len()).filter(|&j| !ring.is_zero(&row[j])).collect()
}

/// `target -= q * src` on the listed positions.
fn sub_multiple<R: Ring>(ring: &R, target: &mut [R::Elem], q: &R::Elem, src: &[R::Elem], nz: &[usize]) {
    let neg_q = ring.neg(q);
    for &j in nz {
        ring.mul_add_assign(&mut target[j], &neg_q, &src[j]);
    }
}

struct Eliminator<'a, R: Ring> {
    ring: &'a R,
    rows: Vec<Vec<R::Elem>>,
    cols: usize,
    transform: Option<Vec<Vec<R::Elem>>>,
}

impl<R: Ring> Eliminator<'_, R> {
    fn swap(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
        if let Some(u) = self.transform.as_mut() {
            u.swap(a, b);
        }
    }

    /// `row[i] -= q * row[r]`, with `nz` the support of row `r` from the
    /// current column on.
    fn reduce(&mut self, i: usize, r: usize, q: &R::Elem, nz: &[usize]) {
        let ring = self.ring;
        let src = std::mem::take(&mut self.rows[r]);
        sub_multiple(ring, &mut self.rows[i], q, &src, nz);
        self.rows[r] = src;
        if let Some(u) = self.transform.as_mut() {
            let src = std::mem::take(&mut u[r]);
            let unz = nonzero_positions(ring, &src, 0);
            sub_multiple(ring, &mut u[i], q, &src, &unz);
            u[r] = src;
        }
    }

    fn scale(&mut self, r: usize, unit: &R::Elem) {
        let ring = self.ring;
        for x in self.rows[r].iter_mut() {
            if !ring.is_zero(x) {
                *x = ring.mul(unit, x);
            }
        }
        if let Some(u) = self.transform.as_mut() {
            for x in u[r].iter_mut() {
                if !ring.is_zero(x) {
                    *x = ring.mul(unit, x);
                }
            }
        }
    }

    fn run(&mut self, reduce_above: bool) -> Vec<usize> {
        let ring = self.ring;
        let nrows = self.rows.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == nrows {
                break;
            }
            loop {
                let mut best: Option<(usize, R::Size)> = None;
                for i in r..nrows {
                    let x = &self.rows[i][c];
                    if ring.is_zero(x) {
                        continue;
                    }
                    let s = ring.size(x);
                    if best.as_ref().is_none_or(|(_, bs)| s < *bs) {
                        best = Some((i, s));
                    }
                }
                let Some((p, _)) = best else { break };
                if p != r {
                    self.swap(p, r);
                }
                let nz = nonzero_positions(ring, &self.rows[r], c);
                let pivot = self.rows[r][c].clone();
                let mut cleared = true;
                for i in r + 1..nrows {
                    if ring.is_zero(&self.rows[i][c]) {
                        continue;
                    }
                    let (q, rem) = ring.div_rem(&self.rows[i][c], &pivot);
                    self.reduce(i, r, &q, &nz);
                    if !ring.is_zero(&rem) {
                        cleared = false;
                    }
                }
                if !cleared {
                    continue;
                }
                let unit = ring.unit_normalizer(&pivot);
                if !ring.is_one(&unit) {
                    self.scale(r, &unit);
                }
                if reduce_above {
                    let nz = nonzero_positions(ring, &self.rows[r], c);
                    let pivot = self.rows[r][c].clone();
                    for i in 0..r {
                        if ring.is_zero(&self.rows[i][c]) {
                            continue;
                        }
                        let (q, _) = ring.div_rem(&self.rows[i][c], &pivot);
                        if !ring.is_zero(&q) {
                            self.reduce(i, r, &q, &nz);
                        }
                    }
                }
                pivots.push(c);
                r += 1;
                break;
            }
        }
        pivots
    }
}

fn echelon_impl<R: Ring>(m: &Matrix<R>, track: bool, reduce_above: bool) -> RowEchelon<R> {
    let ring = m.ring().clone();
    let (nrows, cols) = m.shape();
    let transform = track.then(|| Matrix::identity(&ring, nrows).into_rows());
    let mut el = Eliminator { ring: &ring, rows: m.clone().into_rows(), cols, transform };
    let pivots = el.run(reduce_above);
    let form = Matrix::from_rows(&ring, el.rows, cols).expect("rows keep their width");
    let transform = el.transform.map(|u| Matrix::from_rows(&ring, u, nrows).expect("square transform"));
    RowEchelon { form, transform, pivots }
}

/// Reduced echelon form (Hermite normal form over ℤ), optionally with the
/// unimodular transform `U` such that `U·M = H`.
pub fn row_echelon<R: Ring>(m: &Matrix<R>, track: bool) -> RowEchelon<R> {
    echelon_impl(m, track, true)
}

pub fn rank<R: Ring>(m: &Matrix<R>) -> usize {
    if m.rows() > m.cols() {
        echelon_impl(&m.transpose(), false, false).rank()
    } else {
        echelon_impl(m, false, false).rank()
    }
}

/// Canonical basis (as columns) of the span of `vectors`: the nonzero rows
/// of their Hermite form.
pub(crate) fn canonical_columns<R: Ring>(ring: &R, len: usize, vectors: Vec<Vec<R::Elem>>) -> Matrix<R> {
    if vectors.is_empty() {
        return Matrix::zeros(ring, len, 0);
    }
    let m = Matrix::from_rows(ring, vectors, len).expect("vectors share a length");
    let e = row_echelon(&m, false);
    let r = e.rank();
    Matrix::from_fn(ring, len, r, |i, j| e.form.get(j, i).clone())
}

/// Basis of the kernel of `m`, as columns in canonical echelon form. Over ℤ
/// this is a basis of the full (saturated) kernel lattice.
pub fn kernel_basis<R: Ring>(m: &Matrix<R>) -> Matrix<R> {
    let ring = m.ring();
    let n = m.cols();
    if ring.is_field() {
        let e = echelon_impl(m, false, true);
        let mut is_pivot = vec![false; n];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![ring.zero(); n];
                v[f] = ring.one();
                for (i, &p) in e.pivots.iter().enumerate() {
                    let x = e.form.get(i, f);
                    if !ring.is_zero(x) {
                        v[p] = ring.neg(x);
                    }
                }
                v
            })
            .collect();
        return canonical_columns(ring, n, vectors);
    }
    LinearSystem::new(m).kernel()
}

/// Canonical basis of the column span (a lattice basis over ℤ).
pub fn image_basis<R: Ring>(m: &Matrix<R>) -> Matrix<R> {
    let ring = m.ring();
    let e = row_echelon(&m.transpose(), false);
    let r = e.rank();
    Matrix::from_fn(ring, m.rows(), r, |i, j| e.form.get(j, i).clone())
}

/// A factored matrix `M` ready to solve `M·x = b` for many right-hand sides.
///
/// Stores the Hermite form `H = U·Mᵀ`, so `M·Uᵀ = Hᵀ` is in column echelon
/// form and solutions are found by forward substitution with exact division.
#[derive(Clone, Debug)]
pub struct LinearSystem<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    h: Matrix<R>,
    u: Matrix<R>,
    pivots: Vec<usize>,
}

impl<R: Ring> LinearSystem<R> {
    pub fn new(m: &Matrix<R>) -> Self {
        let e = row_echelon(&m.transpose(), true);
        Self {
            ring: m.ring().clone(),
            rows: m.rows(),
            cols: m.cols(),
            h: e.form,
            u: e.transform.expect("tracked"),
            pivots: e.pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel basis (columns, canonical form).
    pub fn kernel(&self) -> Matrix<R> {
        let r = self.rank();
        let vectors = (r..self.cols).map(|i| self.u.row(i).to_vec()).collect();
        canonical_columns(&self.ring, self.cols, vectors)
    }

    pub fn solve(&self, b: &[R::Elem]) -> Option<Vec<R::Elem>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let ring = &self.ring;
        let r = self.rank();
        let mut y: Vec<R::Elem> = Vec::with_capacity(r);
        for (i, &p) in self.pivots.iter().enumerate() {
            let mut s = b[p].clone();
            for (k, yk) in y.iter().enumerate() {
                let h = self.h.get(k, p);
                if !ring.is_zero(h) && !ring.is_zero(yk) {
                    s = ring.sub(&s, &ring.mul(h, yk));
                }
            }
            let (q, rem) = ring.div_rem(&s, self.h.get(i, p));
            if !ring.is_zero(&rem) {
                return None;
            }
            y.push(q);
        }
        for (j, bj) in b.iter().enumerate() {
            let mut acc = ring.zero();
            for (k, yk) in y.iter().enumerate() {
                let h = self.h.get(k, j);
                if !ring.is_zero(h) && !ring.is_zero(yk) {
                    ring.mul_add_assign(&mut acc, h, yk);
                }
            }
            if acc != *bj {
                return None;
            }
        }
        let mut x = vec![ring.zero(); self.cols];
        for (k, yk) in y.iter().enumerate() {
            if ring.is_zero(yk) {
                continue;
            }
            for (c, xc) in x.iter_mut().enumerate() {
                let u = self.u.get(k, c);
                if !ring.is_zero(u) {
                    ring.mul_add_assign(xc, u, yk);
                }
            }
        }
        Some(x)
    }

    /// Solves `M·X = B` column by column.
    pub fn solve_columns(&self, b: &Matrix<R>) -> Option<Matrix<R>> {
        self.solve_columns_or_witness(b).ok()
    }

    /// Like [`Self::solve_columns`], reporting the first unsolvable column.
    pub fn solve_columns_or_witness(&self, b: &Matrix<R>) -> Result<Matrix<R>, usize> {
        let mut cols = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            cols.push(self.solve(&b.column(j)).ok_or(j)?);
        }
        Ok(Matrix::from_columns(&self.ring, self.cols, &cols))
    }
}

/// Some `x` with `M·x = b`, integral over ℤ, if one exists.
pub fn solve<R: Ring>(m: &Matrix<R>, b: &[R::Elem]) -> Option<Vec<R::Elem>> {
    LinearSystem::new(m).solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, PrimeField, Rationals};
    use num_bigint::BigInt;

    #[test]
    fn kernel_of_zero_over_q_is_everything() {
        let q = Rationals;
        let k = kernel_basis(&Matrix::from_i64_rows(&q, &[&[0]]));
        assert_eq!(k, Matrix::identity(&q, 1));
    }

    #[test]
    fn integer_kernel_of_two_four() {
        let z = Integers;
        let m = Matrix::from_i64_rows(&z, &[&[2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.shape(), (2, 1));
        assert!(m.mul(&k).is_zero());
        // canonical form: positive leading entry
        assert_eq!(k.column(0), vec![BigInt::from(2), BigInt::from(-1)]);
    }

    #[test]
    fn identity_has_empty_kernel() {
        let f2 = PrimeField::new(2).unwrap();
        let k = kernel_basis(&Matrix::identity(&f2, 3));
        assert_eq!(k.shape(), (3, 0));
    }

    #[test]
    fn scalar_solves() {
        let z = Integers;
        let two = Matrix::from_i64_rows(&z, &[&[2]]);
        assert_eq!(solve(&two, &[BigInt::from(4)]), Some(vec![BigInt::from(2)]));
        assert_eq!(solve(&two, &[BigInt::from(3)]), None);
        let q = Rationals;
        let two_q = Matrix::from_i64_rows(&q, &[&[2]]);
        assert_eq!(solve(&two_q, &[q.from_i64(3)]), Some(vec![q.parse("3/2").unwrap()]));
    }

    #[test]
    fn hermite_form_is_canonical() {
        let z = Integers;
        let m = Matrix::from_i64_rows(&z, &[&[4, 6], &[6, 9], &[2, 3]]);
        let e = row_echelon(&m, true);
        assert_eq!(e.rank(), 1);
        assert_eq!(e.form.row(0), &[BigInt::from(2), BigInt::from(3)]);
        assert_eq!(e.transform.unwrap().mul(&m), e.form);
    }

    #[test]
    fn rank_of_tall_matrix() {
        let q = Rationals;
        let m = Matrix::from_i64_rows(&q, &[&[1, 2], &[2, 4], &[3, 6]]);
        assert_eq!(rank(&m), 1);
    }
}
