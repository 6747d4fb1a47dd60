//! Smith normal form over a Euclidean ring.

use crate::matrix::Matrix;
use crate::ring::Ring;

/// `U · M · V = D` with `D` diagonal, `d₁ | d₂ | …`, `U` and `V` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm<R: Ring> {
    pub u: Matrix<R>,
    pub u_inv: Matrix<R>,
    pub d: Matrix<R>,
    pub v: Matrix<R>,
    pub rank: usize,
}

impl<R: Ring> SmithForm<R> {
    /// The nonzero diagonal entries, in divisibility order.
    pub fn factors(&self) -> Vec<R::Elem> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Calc<'a, R: Ring> {
    ring: &'a R,
    a: Vec<Vec<R::Elem>>,
    u: Vec<Vec<R::Elem>>,
    u_inv: Vec<Vec<R::Elem>>,
    v: Vec<Vec<R::Elem>>,
    rows: usize,
    cols: usize,
}

impl<R: Ring> Calc<'_, R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
    }

    /// `row_i += c · row_j`
    fn add_row(&mut self, i: usize, j: usize, c: &R::Elem) {
        let ring = self.ring;
        for m in [&mut self.a, &mut self.u] {
            let src = std::mem::take(&mut m[j]);
            for (t, s) in m[i].iter_mut().zip(&src) {
                if !ring.is_zero(s) {
                    ring.mul_add_assign(t, c, s);
                }
            }
            m[j] = src;
        }
        // inverse: col_j -= c · col_i
        let neg = ring.neg(c);
        for row in self.u_inv.iter_mut() {
            if !ring.is_zero(&row[i]) {
                let t = ring.mul(&neg, &row[i]);
                ring.add_assign(&mut row[j], &t);
            }
        }
    }

    /// `col_i += c · col_j`
    fn add_col(&mut self, i: usize, j: usize, c: &R::Elem) {
        let ring = self.ring;
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                if !ring.is_zero(&row[j]) {
                    let t = ring.mul(c, &row[j]);
                    ring.add_assign(&mut row[i], &t);
                }
            }
        }
    }

    fn scale_row(&mut self, i: usize, unit: &R::Elem) {
        let ring = self.ring;
        let inv = ring.inverse(unit).expect("unit");
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = ring.mul(unit, x);
            }
        }
        for row in self.u_inv.iter_mut() {
            row[i] = ring.mul(&row[i], &inv);
        }
    }

    fn smallest_in(&self, t: usize) -> Option<(usize, usize)> {
        let ring = self.ring;
        let mut best: Option<(usize, usize, R::Size)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if ring.is_zero(x) {
                    continue;
                }
                let s = ring.size(x);
                if best.as_ref().is_none_or(|(_, _, bs)| s < *bs) {
                    best = Some((i, j, s));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) -> usize {
        let ring = self.ring;
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.smallest_in(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a[t][t].clone();
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if ring.is_zero(&self.a[i][t]) {
                        continue;
                    }
                    let (q, r) = ring.div_rem(&self.a[i][t], &pivot);
                    self.add_row(i, t, &ring.neg(&q));
                    dirty |= !ring.is_zero(&r);
                }
                for j in t + 1..self.cols {
                    if ring.is_zero(&self.a[t][j]) {
                        continue;
                    }
                    let (q, r) = ring.div_rem(&self.a[t][j], &pivot);
                    self.add_col(j, t, &ring.neg(&q));
                    dirty |= !ring.is_zero(&r);
                }
                if dirty {
                    // a smaller remainder now sits in row t or column t
                    let mut best: Option<(bool, usize, R::Size)> = None;
                    for i in t + 1..self.rows {
                        let x = &self.a[i][t];
                        if !ring.is_zero(x) {
                            let s = ring.size(x);
                            if best.as_ref().is_none_or(|b| s < b.2) {
                                best = Some((true, i, s));
                            }
                        }
                    }
                    for j in t + 1..self.cols {
                        let x = &self.a[t][j];
                        if !ring.is_zero(x) {
                            let s = ring.size(x);
                            if best.as_ref().is_none_or(|b| s < b.2) {
                                best = Some((false, j, s));
                            }
                        }
                    }
                    if let Some((is_row, k, _)) = best {
                        if is_row {
                            self.swap_rows(t, k);
                        } else {
                            self.swap_cols(t, k);
                        }
                    }
                    continue;
                }
                let mut offender = None;
                'search: for i in t + 1..self.rows {
                    for j in t + 1..self.cols {
                        if !ring.is_zero(&self.a[i][j]) && !ring.is_zero(&ring.div_rem(&self.a[i][j], &pivot).1) {
                            offender = Some(i);
                            break 'search;
                        }
                    }
                }
                match offender {
                    Some(i) => self.add_row(t, i, &ring.one()),
                    None => break,
                }
            }
            let unit = ring.unit_normalizer(&self.a[t][t]);
            if !ring.is_one(&unit) {
                self.scale_row(t, &unit);
            }
            t += 1;
        }
        t
    }
}

/// Smith normal form with both transforms and the inverse of the row transform.
pub fn smith_normal_form<R: Ring>(m: &Matrix<R>) -> SmithForm<R> {
    let ring = m.ring();
    let (rows, cols) = m.shape();
    let mut calc = Calc {
        ring,
        a: m.clone().into_rows(),
        u: Matrix::identity(ring, rows).into_rows(),
        u_inv: Matrix::identity(ring, rows).into_rows(),
        v: Matrix::identity(ring, cols).into_rows(),
        rows,
        cols,
    };
    let rank = calc.run();
    SmithForm {
        d: Matrix::from_rows(ring, calc.a, cols).expect("shape kept"),
        u: Matrix::from_rows(ring, calc.u, rows).expect("shape kept"),
        u_inv: Matrix::from_rows(ring, calc.u_inv, rows).expect("shape kept"),
        v: Matrix::from_rows(ring, calc.v, cols).expect("shape kept"),
        rank,
    }
}
