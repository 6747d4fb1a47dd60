//! Square-zero Hochschild extensions `0 → M → B → A → 0` with a k-linear
//! section, and their classes in `HH²(A, M)`.
//!
//! A 2-cochain `𝔅` is a `rank M × d²` matrix, column `i·d + j` holding
//! `𝔅(eᵢ, eⱼ)`. A 1-cochain `ζ` is a `rank M × d` matrix.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::hochschild::coboundary_matrix;
use crate::linalg::{row_echelon, LinearSystem};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// Largest cochain space enumerated by [`enumerate_extension_classes`].
pub const ENUMERATION_LIMIT: u128 = 1 << 20;

fn check_two_cochain<R: Ring>(module: &Bimodule<R>, b: &Matrix<R>) -> Result<()> {
    let d = module.algebra().rank();
    if b.shape() != (module.rank(), d * d) {
        return Err(Error::Shape(format!("a 2-cochain must be {}x{}", module.rank(), d * d)));
    }
    Ok(())
}

/// First basis triple `(i, j, l)`, in lexicographic order, on which
/// `a𝔅(a′,a″) − 𝔅(aa′,a″) + 𝔅(a,a′a″) − 𝔅(a,a′)a″` is nonzero.
pub fn cocycle_failure<R: Ring>(module: &Bimodule<R>, b: &Matrix<R>) -> Result<Option<(usize, usize, usize)>> {
    check_two_cochain(module, b)?;
    let a = module.algebra();
    let ring = a.ring();
    let d = a.rank();
    let value = |i: usize, j: usize| b.column(i * d + j);
    let along = |coeffs: &[R::Elem], f: &dyn Fn(usize) -> Vec<R::Elem>| {
        let mut out = vec![ring.zero(); module.rank()];
        for (k, c) in coeffs.iter().enumerate() {
            if !ring.is_zero(c) {
                crate::algebra::axpy(ring, &mut out, c, &f(k));
            }
        }
        out
    };
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                let t1 = module.left(i).mul_vec(&value(j, l));
                let t2 = along(a.product(i, j), &|k| value(k, l));
                let t3 = along(a.product(j, l), &|k| value(i, k));
                let t4 = module.right(l).mul_vec(&value(i, j));
                let nonzero = (0..module.rank()).any(|p| {
                    let s = ring.add(&ring.sub(&t1[p], &t2[p]), &ring.sub(&t3[p], &t4[p]));
                    !ring.is_zero(&s)
                });
                if nonzero {
                    return Ok(Some((i, j, l)));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_two_cocycle<R: Ring>(module: &Bimodule<R>, b: &Matrix<R>) -> Result<bool> {
    Ok(cocycle_failure(module, b)?.is_none())
}

/// `b¹ζ` as a 2-cochain: `(a, a′) ↦ aζ(a′) − ζ(aa′) + ζ(a)a′`.
pub fn coboundary_of<R: Ring>(module: &Bimodule<R>, zeta: &Matrix<R>) -> Result<Matrix<R>> {
    let d = module.algebra().rank();
    let b1 = coboundary_matrix(module, 1, false)?;
    let v = b1.mul_vec(zeta.entries());
    Matrix::from_vec(module.ring(), module.rank(), d * d, v)
}

fn crossed_table<R: Ring>(module: &Bimodule<R>, b: &Matrix<R>, unit: Vec<R::Elem>) -> Result<FiniteAlgebra<R>> {
    let a = module.algebra();
    let ring = a.ring();
    let (d, m) = (a.rank(), module.rank());
    let n = d + m;
    let mut names = a.names().to_vec();
    names.extend((0..m).map(|q| format!("m{q}")));
    let mut mul = vec![ring.zero(); n * n * n];
    let at = |x: usize, y: usize, k: usize| (x * n + y) * n + k;
    for i in 0..d {
        for j in 0..d {
            for (k, c) in a.product(i, j).iter().enumerate() {
                mul[at(i, j, k)] = c.clone();
            }
            for p in 0..m {
                mul[at(i, j, d + p)] = b.get(p, i * d + j).clone();
            }
        }
        for q in 0..m {
            for p in 0..m {
                mul[at(i, d + q, d + p)] = module.left(i).get(p, q).clone();
                mul[at(d + q, i, d + p)] = module.right(i).get(p, q).clone();
            }
        }
    }
    FiniteAlgebra::new_unchecked(ring, names, unit, mul)
}

/// `A ⋊_𝔅 M` on the basis `(eᵢ, 0), (0, m_q)`, with
/// `(a, m)(a′, m′) = (aa′, am′ + ma′ + 𝔅(a, a′))`.
///
/// Associativity is checked first and a failure is reported as
/// [`Error::NotACocycle`] at the same triple. The unit `(1, m₀)` is then
/// solved for, since `𝔅` need not vanish at `1`.
pub fn crossed_product<R: Ring>(module: &Bimodule<R>, b: &Matrix<R>) -> Result<FiniteAlgebra<R>> {
    check_two_cochain(module, b)?;
    let a = module.algebra();
    let ring = a.ring();
    let (d, m) = (a.rank(), module.rank());
    let mut unit = a.unit().to_vec();
    unit.resize(d + m, ring.zero());
    let draft = crossed_table(module, b, unit)?;
    match draft.validate() {
        Err(Error::NotAssociative { i, j, l }) if i < d && j < d && l < d => {
            return Err(Error::NotACocycle { i, j, l })
        }
        Err(e @ Error::NotAssociative { .. }) => return Err(e),
        _ => {}
    }
    // m₀ with m₀·eⱼ = −𝔅(1, eⱼ) and eᵢ·m₀ = −𝔅(eᵢ, 1)
    let one = Matrix::column_vector(ring, a.unit().to_vec());
    let mut blocks = Vec::with_capacity(2 * d);
    let mut rhs = Vec::with_capacity(2 * d * m);
    for j in 0..d {
        blocks.push(module.right(j).clone());
        let ej = a.basis_vector(j);
        let ej = Matrix::column_vector(ring, ej);
        let col = b.mul(&one.kronecker(&ej));
        rhs.extend(col.column(0).iter().map(|x| ring.neg(x)));
    }
    for i in 0..d {
        blocks.push(module.left(i).clone());
        let ei = Matrix::column_vector(ring, a.basis_vector(i));
        let col = b.mul(&ei.kronecker(&one));
        rhs.extend(col.column(0).iter().map(|x| ring.neg(x)));
    }
    let system = Matrix::vstack_all(ring, m, &blocks);
    let m0 = LinearSystem::new(&system).solve(&rhs).ok_or(Error::NoUnit)?;
    let mut unit = a.unit().to_vec();
    unit.extend(m0);
    let total = crossed_table(module, b, unit)?;
    total.validate()?;
    Ok(total)
}

/// A k-split square-zero extension `0 → M →ι B →π A → 0` with section `s`.
#[derive(Clone, Debug)]
pub struct ExtensionPresentation<R: Ring> {
    pub total: Arc<FiniteAlgebra<R>>,
    /// `d × rank B`
    pub projection: Matrix<R>,
    /// `rank B × rank M`
    pub inclusion: Matrix<R>,
    /// `rank B × d`
    pub section: Matrix<R>,
    /// `M` with the action induced through `s` and `ι`.
    pub module: Bimodule<R>,
}

impl<R: Ring> ExtensionPresentation<R> {
    /// Checks that `π` is an algebra map, `π∘ι = 0`, `π∘s = id`, `ι` is
    /// injective onto `ker π`, `ι(M)² = 0`, and derives the bimodule `M`.
    pub fn new(
        algebra: &Arc<FiniteAlgebra<R>>,
        total: Arc<FiniteAlgebra<R>>,
        projection: Matrix<R>,
        inclusion: Matrix<R>,
        section: Matrix<R>,
    ) -> Result<Self> {
        let ring = algebra.ring();
        let (d, n) = (algebra.rank(), total.rank());
        let m = inclusion.cols();
        let bad = |msg: &str| Err(Error::InvalidExtension(msg.to_string()));
        if projection.shape() != (d, n) || inclusion.rows() != n || section.shape() != (n, d) {
            return bad("matrix shapes do not match the algebras");
        }
        if !projection.mul(&inclusion).is_zero() {
            return bad("projection∘inclusion is not zero");
        }
        if projection.mul(&section) != Matrix::identity(ring, d) {
            return bad("projection∘section is not the identity");
        }
        if projection.mul_vec(total.unit()) != algebra.unit() {
            return bad("projection does not preserve the unit");
        }
        for x in 0..n {
            for y in 0..n {
                let lhs = projection.mul_vec(total.product(x, y));
                let rhs = algebra.mul_vectors(&projection.column(x), &projection.column(y));
                if lhs != rhs {
                    return bad(&format!("projection is not multiplicative on ({x}, {y})"));
                }
            }
        }
        if crate::linalg::rank(&inclusion) != m
            || (!ring.is_field() && crate::linalg::kernel_basis(&inclusion).cols() != 0)
        {
            return bad("inclusion is not injective");
        }
        // exactness: ker π = im ι, as lattices over ℤ
        let ker = crate::linalg::kernel_basis(&projection);
        if ker.cols() != m
            || crate::linalg::subquotient(&inclusion, &ker).map(|s| !s.invariants.is_zero()).unwrap_or(true)
        {
            return bad("image of the inclusion is not the kernel of the projection");
        }
        for p in 0..m {
            for q in 0..m {
                if total.mul_vectors(&inclusion.column(p), &inclusion.column(q)).iter().any(|x| !ring.is_zero(x)) {
                    return bad("the ideal does not square to zero");
                }
            }
        }
        let solver = LinearSystem::new(&inclusion);
        let induced = |left: bool, i: usize| -> Result<Matrix<R>> {
            let s = section.column(i);
            let cols = (0..m)
                .map(|q| {
                    let x = inclusion.column(q);
                    let prod = if left { total.mul_vectors(&s, &x) } else { total.mul_vectors(&x, &s) };
                    solver
                        .solve(&prod)
                        .ok_or_else(|| Error::InvalidExtension("the ideal is not a two-sided ideal".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(ring, m, &cols))
        };
        let left = (0..d).map(|i| induced(true, i)).collect::<Result<Vec<_>>>()?;
        let right = (0..d).map(|i| induced(false, i)).collect::<Result<Vec<_>>>()?;
        let module = if m == 0 { Bimodule::zero(algebra) } else { Bimodule::new(algebra.clone(), left, right)? };
        Ok(Self { total, projection, inclusion, section, module })
    }

    /// The crossed product with its canonical section `a ↦ (a, 0)`.
    pub fn crossed(module: &Bimodule<R>, b: &Matrix<R>) -> Result<Self> {
        let total = Arc::new(crossed_product(module, b)?);
        let ring = module.ring();
        let (d, m) = (module.algebra().rank(), module.rank());
        let n = d + m;
        let projection = Matrix::from_fn(ring, d, n, |i, j| if i == j { ring.one() } else { ring.zero() });
        let inclusion = Matrix::from_fn(ring, n, m, |i, q| if i == d + q { ring.one() } else { ring.zero() });
        let section = projection.transpose();
        Self::new(module.algebra(), total, projection, inclusion, section)
    }

    /// Same extension, another section.
    pub fn with_section(&self, section: Matrix<R>) -> Result<Self> {
        Self::new(self.module.algebra(), self.total.clone(), self.projection.clone(), self.inclusion.clone(), section)
    }

    /// `𝔅_s(a, a′) = s(a)s(a′) − s(aa′)`, pulled back through `ι`.
    pub fn class_from_section(&self) -> Result<Matrix<R>> {
        let a = self.module.algebra();
        let ring = a.ring();
        let d = a.rank();
        let solver = LinearSystem::new(&self.inclusion);
        let mut cols = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.total.mul_vectors(&self.section.column(i), &self.section.column(j));
                let lin = self.section.mul_vec(a.product(i, j));
                let diff: Vec<R::Elem> = prod.iter().zip(&lin).map(|(x, y)| ring.sub(x, y)).collect();
                cols.push(
                    solver
                        .solve(&diff)
                        .ok_or_else(|| Error::InvalidExtension("s(a)s(a′) − s(aa′) is not in the ideal".into()))?,
                );
            }
        }
        Ok(Matrix::from_columns(ring, self.module.rank(), &cols))
    }

    /// Whether `s(eᵢ)s(eⱼ) = s(eᵢeⱼ)` on all basis pairs.
    pub fn section_is_multiplicative(&self, section: &Matrix<R>) -> bool {
        let a = self.module.algebra();
        let d = a.rank();
        (0..d).all(|i| {
            (0..d).all(|j| {
                self.total.mul_vectors(&section.column(i), &section.column(j)) == section.mul_vec(a.product(i, j))
            })
        })
    }
}

/// A proof that two cocycles are cohomologous.
#[derive(Clone, Debug)]
pub struct Equivalence<R: Ring> {
    /// `b¹ζ = 𝔅 − 𝔅′`
    pub zeta: Matrix<R>,
    /// `Φ(a, m) = (a, m + ζ(a))` from `A ⋊_𝔅 M` to `A ⋊_𝔅′ M`, when both
    /// are cocycles; verified to be an algebra isomorphism over `A`.
    pub map: Option<Matrix<R>>,
}

/// Some `ζ` with `b¹ζ = 𝔅 − 𝔅′`, if there is one over the ring.
pub fn cocycles_cohomologous<R: Ring>(
    module: &Bimodule<R>,
    b: &Matrix<R>,
    b_prime: &Matrix<R>,
) -> Result<Option<Equivalence<R>>> {
    check_two_cochain(module, b)?;
    check_two_cochain(module, b_prime)?;
    let ring = module.ring();
    let d = module.algebra().rank();
    let b1 = coboundary_matrix(module, 1, false)?;
    let diff = b.sub(b_prime);
    let Some(z) = LinearSystem::new(&b1).solve(diff.entries()) else {
        return Ok(None);
    };
    let zeta = Matrix::from_vec(ring, module.rank(), d, z)?;
    let map = if is_two_cocycle(module, b)? && is_two_cocycle(module, b_prime)? {
        let src = crossed_product(module, b)?;
        let tgt = crossed_product(module, b_prime)?;
        let m = module.rank();
        let n = d + m;
        let phi = Matrix::from_fn(ring, n, n, |r, c| {
            if r == c {
                ring.one()
            } else if r >= d && c < d {
                zeta.get(r - d, c).clone()
            } else {
                ring.zero()
            }
        });
        if !is_algebra_hom(&src, &tgt, &phi) {
            return Err(Error::InvalidExtension("equivalence map is not multiplicative".into()));
        }
        Some(phi)
    } else {
        None
    };
    Ok(Some(Equivalence { zeta, map }))
}

/// Whether `φ(xy) = φ(x)φ(y)` on basis pairs and `φ(1) = 1`.
pub fn is_algebra_hom<R: Ring>(src: &FiniteAlgebra<R>, tgt: &FiniteAlgebra<R>, phi: &Matrix<R>) -> bool {
    if phi.mul_vec(src.unit()) != tgt.unit() {
        return false;
    }
    (0..src.rank()).all(|x| {
        (0..src.rank()).all(|y| phi.mul_vec(src.product(x, y)) == tgt.mul_vectors(&phi.column(x), &phi.column(y)))
    })
}

/// A multiplicative section `s′ = s − ιζ` when `𝔅_s` is a coboundary.
pub fn lift_exists<R: Ring>(ext: &ExtensionPresentation<R>) -> Result<Option<Matrix<R>>> {
    let b = ext.class_from_section()?;
    let zero = Matrix::zeros(b.ring(), b.rows(), b.cols());
    let Some(eq) = cocycles_cohomologous(&ext.module, &b, &zero)? else {
        return Ok(None);
    };
    let lifted = ext.section.sub(&ext.inclusion.mul(&eq.zeta));
    if !ext.section_is_multiplicative(&lifted) {
        return Err(Error::InvalidExtension("corrected section is not multiplicative".into()));
    }
    Ok(Some(lifted))
}

/// Classes of `HH²(A, M)` over a finite field, each represented by its
/// lexicographically least cocycle, in increasing order.
pub fn enumerate_extension_classes<R: Ring>(module: &Bimodule<R>) -> Result<Vec<Matrix<R>>> {
    let ring = module.ring();
    let q = ring.order().ok_or_else(|| Error::Unsupported("a finite coefficient field".into()))?;
    let d = module.algebra().rank();
    let len = module.rank() * d * d;
    let count = (q as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge { count, limit: ENUMERATION_LIMIT });
    }
    let b2 = coboundary_matrix(module, 2, false)?;
    let b1 = coboundary_matrix(module, 1, false)?;
    let image = row_echelon(&b1.transpose(), false);
    let reduce = |v: &[R::Elem]| -> Vec<R::Elem> {
        let mut v = v.to_vec();
        for (r, &c) in image.pivots.iter().enumerate() {
            if ring.is_zero(&v[c]) {
                continue;
            }
            let f = ring.div_rem(&v[c], image.form.get(r, c)).0;
            for (x, y) in v.iter_mut().zip(image.form.row(r)) {
                if !ring.is_zero(y) {
                    *x = ring.sub(x, &ring.mul(&f, y));
                }
            }
        }
        v
    };
    let elements: Vec<R::Elem> = (0..q).map(|i| ring.nth_element(i).expect("finite ring")).collect();
    let mut digits = vec![0usize; len];
    let mut seen: HashMap<Vec<R::Elem>, ()> = HashMap::new();
    let mut reps = Vec::new();
    loop {
        let v: Vec<R::Elem> = digits.iter().map(|&i| elements[i].clone()).collect();
        if b2.mul_vec(&v).iter().all(|x| ring.is_zero(x)) {
            let key = reduce(&v);
            if seen.insert(key, ()).is_none() {
                reps.push(Matrix::from_vec(ring, module.rank(), d * d, v)?);
            }
        }
        // base-q counter, last position fastest
        let mut pos = len;
        loop {
            if pos == 0 {
                return Ok(reps);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < q as usize {
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ring::{PrimeField, Rationals};

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn dual_f2() -> Bimodule<PrimeField> {
        Bimodule::regular(&Arc::new(catalog::truncated_polynomial(&f2(), 2)))
    }

    /// 𝔅(x, x) = 1, zero elsewhere
    fn nontrivial() -> Matrix<PrimeField> {
        let mut b = Matrix::zeros(&f2(), 2, 4);
        b.set(0, 3, 1);
        b
    }

    #[test]
    fn nontrivial_dual_number_cocycle() {
        let m = dual_f2();
        let b = nontrivial();
        assert!(is_two_cocycle(&m, &b).unwrap());
        let zero = Matrix::zeros(&f2(), 2, 4);
        assert!(cocycles_cohomologous(&m, &b, &zero).unwrap().is_none());
        let total = crossed_product(&m, &b).unwrap();
        assert_eq!(total.rank(), 4);
    }

    #[test]
    fn four_classes_over_f2() {
        assert_eq!(enumerate_extension_classes(&dual_f2()).unwrap().len(), 4);
    }

    #[test]
    fn field_with_itself_twisted() {
        let k = Arc::new(catalog::scalars(&f2()));
        let m = Bimodule::regular(&k);
        let b = Matrix::from_vec(&f2(), 1, 1, vec![1]).unwrap();
        let total = crossed_product(&m, &b).unwrap();
        assert_eq!(total.unit(), &[1, 1]);
        assert_eq!(enumerate_extension_classes(&m).unwrap().len(), 1);
    }

    #[test]
    fn section_round_trip_and_perturbation() {
        let a = Arc::new(catalog::upper_triangular(&Rationals));
        let m = Bimodule::regular(&a);
        let zeta = Matrix::from_fn(&Rationals, 3, 3, |i, j| Rationals.from_i64((i * 3 + j) as i64 - 4));
        let b = coboundary_of(&m, &zeta).unwrap();
        let ext = ExtensionPresentation::crossed(&m, &b).unwrap();
        assert_eq!(ext.class_from_section().unwrap(), b);
        let shift = Matrix::from_fn(&Rationals, 3, 3, |i, j| Rationals.from_i64((i + 2 * j) as i64));
        let moved = ext.with_section(ext.section.add(&ext.inclusion.mul(&shift))).unwrap();
        assert_eq!(moved.class_from_section().unwrap(), b.add(&coboundary_of(&m, &shift).unwrap()));
        let lift = lift_exists(&ext).unwrap().expect("coboundary extensions lift");
        assert!(ext.section_is_multiplicative(&lift));
    }

    #[test]
    fn non_cocycle_reports_triple() {
        let m = dual_f2();
        let mut b = Matrix::zeros(&f2(), 2, 4);
        b.set(0, 1, 1); // 𝔅(1, x) = 1
        let w = cocycle_failure(&m, &b).unwrap().unwrap();
        assert_eq!(crossed_product(&m, &b).unwrap_err(), Error::NotACocycle { i: w.0, j: w.1, l: w.2 });
    }
}
