//! Finite-rank unital associative algebras given by structure constants.

use crate::bar::BarCache;
use crate::error::{Error, Result};
use crate::linalg::LinearSystem;
use crate::matrix::Matrix;
use crate::ring::Ring;

/// A free k-module of rank `d` with multiplication
/// `eᵢ·eⱼ = Σₖ c[i][j][k]·eₖ` and a unit vector.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra<R: Ring> {
    ring: R,
    names: Vec<String>,
    unit: Vec<R::Elem>,
    /// `c[i][j][k]` at `(i·d + j)·d + k`.
    mul: Vec<R::Elem>,
    pub(crate) bar_cache: BarCache<R>,
}

impl<R: Ring> PartialEq for FiniteAlgebra<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.names == other.names && self.unit == other.unit && self.mul == other.mul
    }
}

fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::Shape(format!("{what} has length {got}, expected {want}")));
    }
    Ok(())
}

impl<R: Ring> FiniteAlgebra<R> {
    /// Validates associativity on every basis triple, then both unit laws.
    pub fn new(ring: &R, names: Vec<String>, unit: Vec<R::Elem>, mul: Vec<R::Elem>) -> Result<Self> {
        let a = Self::new_unchecked(ring, names, unit, mul)?;
        a.validate()?;
        Ok(a)
    }

    /// Shape checks only.
    pub fn new_unchecked(ring: &R, names: Vec<String>, unit: Vec<R::Elem>, mul: Vec<R::Elem>) -> Result<Self> {
        let d = names.len();
        if d == 0 {
            return Err(Error::Shape("an algebra needs rank at least 1".into()));
        }
        check_len("unit", unit.len(), d)?;
        check_len("structure constants", mul.len(), d * d * d)?;
        Ok(Self { ring: ring.clone(), names, unit, mul, bar_cache: BarCache::default() })
    }

    /// Builds the table from `f(i, j)`, the coordinates of `eᵢ·eⱼ`.
    pub fn from_products(
        ring: &R,
        names: Vec<String>,
        unit: Vec<R::Elem>,
        mut f: impl FnMut(usize, usize) -> Vec<R::Elem>,
    ) -> Result<Self> {
        let d = names.len();
        let mut mul = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                let p = f(i, j);
                check_len("product", p.len(), d)?;
                mul.extend(p);
            }
        }
        Self::new(ring, names, unit, mul)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.rank();
        let r = &self.ring;
        for i in 0..d {
            for j in 0..d {
                let eij = self.product(i, j);
                for l in 0..d {
                    let mut lhs = vec![r.zero(); d];
                    for (k, c) in eij.iter().enumerate() {
                        if !r.is_zero(c) {
                            axpy(r, &mut lhs, c, self.product(k, l));
                        }
                    }
                    let mut rhs = vec![r.zero(); d];
                    for (k, c) in self.product(j, l).iter().enumerate() {
                        if !r.is_zero(c) {
                            axpy(r, &mut rhs, c, self.product(i, k));
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::NotAssociative { i, j, l });
                    }
                }
            }
        }
        for i in 0..d {
            if self.mul_vectors(&self.unit, &self.basis_vector(i)) != self.basis_vector(i) {
                return Err(Error::UnitLaw { index: i, side: "left" });
            }
        }
        for i in 0..d {
            if self.mul_vectors(&self.basis_vector(i), &self.unit) != self.basis_vector(i) {
                return Err(Error::UnitLaw { index: i, side: "right" });
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &[R::Elem] {
        &self.unit
    }

    /// Raw structure constants, `c[i][j][k]` at `(i·d + j)·d + k`.
    pub fn structure_constants(&self) -> &[R::Elem] {
        &self.mul
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &R::Elem {
        let d = self.rank();
        &self.mul[(i * d + j) * d + k]
    }

    /// Coordinates of `eᵢ·eⱼ`.
    pub fn product(&self, i: usize, j: usize) -> &[R::Elem] {
        let d = self.rank();
        let start = (i * d + j) * d;
        &self.mul[start..start + d]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<R::Elem> {
        let mut v = vec![self.ring.zero(); self.rank()];
        v[i] = self.ring.one();
        v
    }

    pub fn mul_vectors(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.ring;
        let mut out = vec![r.zero(); self.rank()];
        for (i, ai) in a.iter().enumerate() {
            if r.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if r.is_zero(bj) {
                    continue;
                }
                let c = r.mul(ai, bj);
                axpy(r, &mut out, &c, self.product(i, j));
            }
        }
        out
    }

    /// Matrix of `x ↦ eᵢ·x`.
    pub fn left_mul_matrix(&self, i: usize) -> Matrix<R> {
        let d = self.rank();
        Matrix::from_fn(&self.ring, d, d, |k, j| self.constant(i, j, k).clone())
    }

    /// Matrix of `x ↦ x·eᵢ`.
    pub fn right_mul_matrix(&self, i: usize) -> Matrix<R> {
        let d = self.rank();
        Matrix::from_fn(&self.ring, d, d, |k, j| self.constant(j, i, k).clone())
    }

    /// `μ: A⊗A → A` as a `d × d²` matrix.
    pub fn multiplication_matrix(&self) -> Matrix<R> {
        let d = self.rank();
        Matrix::from_fn(&self.ring, d, d * d, |k, ij| self.constant(ij / d, ij % d, k).clone())
    }

    pub fn is_commutative(&self) -> bool {
        self.first_noncommuting_pair().is_none()
    }

    pub fn first_noncommuting_pair(&self) -> Option<(usize, usize)> {
        let d = self.rank();
        (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).find(|&(i, j)| self.product(i, j) != self.product(j, i))
    }

    pub fn require_commutative(&self) -> Result<()> {
        match self.first_noncommuting_pair() {
            Some((i, j)) => Err(Error::NotCommutative { i, j }),
            None => Ok(()),
        }
    }

    /// True when the unit is the first basis vector.
    pub fn has_unital_basis(&self) -> bool {
        self.unit == self.basis_vector(0)
    }

    pub fn require_unital_basis(&self) -> Result<()> {
        if self.has_unital_basis() {
            Ok(())
        } else {
            Err(Error::NonUnitalBasis)
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        check_len("basis names", names.len(), self.rank())?;
        self.names = names;
        Ok(self)
    }

    /// Changes basis so that `e₀ = 1`. Returns the new algebra and the matrix
    /// whose columns are the new basis vectors in old coordinates.
    ///
    /// The unit replaces the first basis vector on which it has a unit
    /// coordinate; without one (possible over ℤ) this is
    /// [`Error::UnitNotUnimodular`].
    pub fn to_unital_basis(&self) -> Result<(Self, Matrix<R>)> {
        let r = &self.ring;
        let d = self.rank();
        if self.has_unital_basis() {
            return Ok((self.clone(), Matrix::identity(r, d)));
        }
        let pivot = (0..d).find(|&j| r.is_unit(&self.unit[j])).ok_or(Error::UnitNotUnimodular)?;
        let mut columns = vec![self.unit.clone()];
        let mut names =
            vec![if self.unit == self.basis_vector(pivot) { self.names[pivot].clone() } else { "1".to_string() }];
        for j in (0..d).filter(|&j| j != pivot) {
            columns.push(self.basis_vector(j));
            names.push(self.names[j].clone());
        }
        let p = Matrix::from_columns(r, d, &columns);
        let solver = LinearSystem::new(&p);
        let mut mul = Vec::with_capacity(d * d * d);
        for a in &columns {
            for b in &columns {
                let prod = self.mul_vectors(a, b);
                mul.extend(solver.solve(&prod).expect("basis change is invertible"));
            }
        }
        let unit = {
            let mut u = vec![r.zero(); d];
            u[0] = r.one();
            u
        };
        Ok((Self::new(r, names, unit, mul)?, p))
    }

    /// `A^op`: `c_op[i][j][k] = c[j][i][k]`.
    pub fn opposite(&self) -> Self {
        let d = self.rank();
        let mut mul = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                mul.extend_from_slice(self.product(j, i));
            }
        }
        Self::new_unchecked(&self.ring, self.names.clone(), self.unit.clone(), mul).expect("same shape")
    }

    /// `Aᵉ = A ⊗ A^op` on the basis `eᵢ⊗eⱼ` in row-major order, with
    /// `(a⊗b)(a′⊗b′) = aa′ ⊗ b′b`.
    pub fn enveloping(&self) -> Self {
        let d = self.rank();
        let r = &self.ring;
        let n = d * d;
        let mut mul = vec![r.zero(); n * n * n];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let left = self.product(i, k);
                        let right = self.product(l, j);
                        let base = ((i * d + j) * n + (k * d + l)) * n;
                        for (p, x) in left.iter().enumerate() {
                            if r.is_zero(x) {
                                continue;
                            }
                            for (q, y) in right.iter().enumerate() {
                                if !r.is_zero(y) {
                                    mul[base + p * d + q] = r.mul(x, y);
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut names = Vec::with_capacity(n);
        let mut unit = Vec::with_capacity(n);
        for i in 0..d {
            for j in 0..d {
                names.push(format!("{}⊗{}", self.names[i], self.names[j]));
                unit.push(r.mul(&self.unit[i], &self.unit[j]));
            }
        }
        Self::new_unchecked(r, names, unit, mul).expect("consistent shape")
    }
}

/// `out += c · v`
pub(crate) fn axpy<R: Ring>(r: &R, out: &mut [R::Elem], c: &R::Elem, v: &[R::Elem]) {
    for (o, x) in out.iter_mut().zip(v) {
        if !r.is_zero(x) {
            r.mul_add_assign(o, c, x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ring::{Integers, PrimeField, Rationals};

    #[test]
    fn base_ring_is_an_algebra() {
        let q = Rationals;
        let k = FiniteAlgebra::new(&q, vec!["1".into()], vec![q.one()], vec![q.one()]).unwrap();
        assert_eq!(k.rank(), 1);
        assert_eq!(k.enveloping(), k.with_names(vec!["1⊗1".into()]).unwrap());
    }

    #[test]
    fn nonassociative_table_is_rejected_at_first_triple() {
        // e₁e₁ = e₂, e₁e₂ = e₁, e₂e₁ = 0: (e₁e₁)e₁ = 0 but e₁(e₁e₁) = e₁
        let q = Rationals;
        let one = q.one();
        let z = q.zero();
        let e = |v: [i64; 3]| v.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        let names = vec!["1".to_string(), "a".into(), "b".into()];
        let err = FiniteAlgebra::from_products(&q, names, vec![one, z.clone(), z], |i, j| match (i, j) {
            (0, k) | (k, 0) => {
                let mut v = e([0, 0, 0]);
                v[k] = q.one();
                v
            }
            (1, 1) => e([0, 0, 1]),
            (1, 2) => e([0, 1, 0]),
            _ => e([0, 0, 0]),
        })
        .unwrap_err();
        assert_eq!(err, Error::NotAssociative { i: 1, j: 1, l: 1 });
    }

    #[test]
    fn unit_law_violation_reported() {
        let f2 = PrimeField::new(2).unwrap();
        let err = FiniteAlgebra::new(&f2, vec!["1".into()], vec![0], vec![1]).unwrap_err();
        assert_eq!(err, Error::UnitLaw { index: 0, side: "left" });
    }

    #[test]
    fn opposite_of_upper_triangular_transposes_table() {
        let a = catalog::upper_triangular(&Rationals);
        let op = a.opposite();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(op.product(i, j), a.product(j, i));
            }
        }
        assert_eq!(op.opposite(), a);
        op.validate().unwrap();
    }

    #[test]
    fn enveloping_of_z_times_z_has_orthogonal_idempotents() {
        let a = catalog::product_of_copies(&Integers, 2);
        let env = a.enveloping();
        env.validate().unwrap();
        assert_eq!(env.rank(), 4);
        for p in 0..4 {
            for q in 0..4 {
                let expected = if p == q { env.basis_vector(p) } else { vec![Integers.zero(); 4] };
                assert_eq!(env.product(p, q), expected.as_slice());
            }
        }
    }

    #[test]
    fn dual_numbers_enveloping_keeps_nilpotency() {
        let a = catalog::truncated_polynomial(&Rationals, 2);
        let env = a.enveloping();
        env.validate().unwrap();
        // x⊗1 has index 2
        assert!(env.product(2, 2).iter().all(|c| Rationals.is_zero(c)));
    }

    #[test]
    fn canonicalizes_unit_into_the_basis() {
        // ℤ×ℤ with idempotent basis has unit (1, 1)
        let a = catalog::product_of_copies(&Integers, 2);
        assert!(!a.has_unital_basis());
        let (b, p) = a.to_unital_basis().unwrap();
        assert!(b.has_unital_basis());
        assert_eq!(p.column(0), a.unit());
    }

    #[test]
    fn unit_without_unimodular_coordinate_is_refused() {
        // ℤ×ℤ in the basis b₀ = (2,-1), b₁ = (-1,1), where 1 = 2b₀ + 3b₁
        let z = Integers;
        let v = |x: i64, y: i64| vec![z.from_i64(x), z.from_i64(y)];
        let a = FiniteAlgebra::from_products(&z, vec!["b0".into(), "b1".into()], v(2, 3), |i, j| match (i, j) {
            (0, 0) => v(5, 6),
            (1, 1) => v(2, 3),
            _ => v(-3, -4),
        })
        .unwrap();
        assert_eq!(a.to_unital_basis().unwrap_err(), Error::UnitNotUnimodular);
        let f5 = PrimeField::new(5).unwrap();
        let b = FiniteAlgebra::new(
            &f5,
            a.names().to_vec(),
            a.unit().iter().map(|x| f5.from_bigint(x)).collect(),
            a.structure_constants().iter().map(|x| f5.from_bigint(x)).collect(),
        )
        .unwrap();
        let (c, _) = b.to_unital_basis().unwrap();
        assert!(c.has_unital_basis());
    }
}
