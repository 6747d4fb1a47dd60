//! Hochschild cochains, cohomology and homology; centers and derivations;
//! relative Ext through the bimodule `Hom_k(M, N)`.

use std::sync::Arc;

use crate::bimodule::{hom_bimodule, Bimodule, LeftModule};
use crate::error::{Error, Result};
use crate::linalg::{check_size, image_basis, kernel_basis, rank, subquotient, KModuleInvariants};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// A k-linear map `A^⊗n → M` (or `Ā^⊗n → M`), stored as the
/// `rank M × dⁿ` matrix of its values on basis tensors.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<R: Ring> {
    pub degree: usize,
    pub normalized: bool,
    pub values: Matrix<R>,
}

impl<R: Ring> Cochain<R> {
    /// From the vector `p·dⁿ + J ↦ f(e_J)_p`.
    pub fn from_vector(ring: &R, degree: usize, normalized: bool, m: usize, v: &[R::Elem]) -> Self {
        let cols = v.len().checked_div(m).unwrap_or(0);
        let values = Matrix::from_vec(ring, m, cols, v.to_vec()).expect("vector length is m·dⁿ");
        Self { degree, normalized, values }
    }

    pub fn to_vector(&self) -> Vec<R::Elem> {
        self.values.entries().to_vec()
    }

    /// Extends a normalized cochain by zero on tensors with a unit factor.
    pub fn to_unnormalized(&self, d: usize) -> Self {
        if !self.normalized {
            return self.clone();
        }
        let ring = self.values.ring();
        let n = self.degree;
        let mut values = Matrix::zeros(ring, self.values.rows(), d.pow(n as u32));
        for j in 0..self.values.cols() {
            // digits base d−1 shifted by one
            let mut rest = j;
            let mut full = 0;
            let mut scale = 1;
            for _ in 0..n {
                full += (rest % (d - 1) + 1) * scale;
                rest /= d - 1;
                scale *= d;
            }
            for p in 0..self.values.rows() {
                values.set(p, full, self.values.get(p, j).clone());
            }
        }
        Self { degree: n, normalized: false, values }
    }
}

/// `HHⁿ` (or `HHₙ`) with optional representative cocycles.
#[derive(Clone, Debug)]
pub struct CohomologyReport<R: Ring> {
    pub degree: usize,
    pub invariants: KModuleInvariants,
    /// One cocycle per summand: free summands first, then torsion summands.
    pub representatives: Option<Vec<Cochain<R>>>,
}

fn cochain_dim(d: usize, normalized: bool) -> usize {
    if normalized {
        d - 1
    } else {
        d
    }
}

/// `bⁿ: Cⁿ → Cⁿ⁺¹` with
/// `bⁿf(a₁,…,aₙ₊₁) = a₁f(a₂,…) + Σᵢ (−1)ⁱ f(…,aᵢaᵢ₊₁,…) + (−1)ⁿ⁺¹ f(a₁,…,aₙ)aₙ₊₁`.
pub fn coboundary_matrix<R: Ring>(module: &Bimodule<R>, n: usize, normalized: bool) -> Result<Matrix<R>> {
    let algebra = module.algebra();
    if normalized {
        algebra.require_unital_basis()?;
    }
    let ring = algebra.ring();
    let d = algebra.rank();
    let m = module.rank();
    let dim = cochain_dim(d, normalized);
    let off = usize::from(normalized);
    let src_n = dim.pow(n as u32);
    let tgt_n = dim.pow(n as u32 + 1);
    check_size(m * tgt_n, m * src_n)?;
    let mut out = Matrix::zeros(ring, m * tgt_n, m * src_n);
    let mut digits = vec![0usize; n + 1];
    for jt in 0..tgt_n {
        let mut rest = jt;
        for pos in (0..=n).rev() {
            digits[pos] = rest % dim + off;
            rest /= dim;
        }
        let encode = |basis: &mut dyn Iterator<Item = usize>| -> Option<usize> {
            let mut idx = 0;
            for b in basis {
                if b < off {
                    return None;
                }
                idx = idx * dim + (b - off);
            }
            Some(idx)
        };
        // a₁·f(a₂, …)
        let tail = encode(&mut digits[1..].iter().copied()).expect("digits in range");
        let l = module.left(digits[0]);
        for p in 0..m {
            for q in 0..m {
                let v = l.get(p, q);
                if !ring.is_zero(v) {
                    out.add_to(p * tgt_n + jt, q * src_n + tail, v);
                }
            }
        }
        // (−1)ⁱ f(…, aᵢaᵢ₊₁, …)
        for i in 0..n {
            for (k, c) in algebra.product(digits[i], digits[i + 1]).iter().enumerate() {
                if ring.is_zero(c) {
                    continue;
                }
                let mut it =
                    digits[..i].iter().copied().chain(std::iter::once(k)).chain(digits[i + 2..].iter().copied());
                let Some(j) = encode(&mut it) else { continue };
                let v = if (i + 1) % 2 == 1 { ring.neg(c) } else { c.clone() };
                for p in 0..m {
                    out.add_to(p * tgt_n + jt, p * src_n + j, &v);
                }
            }
        }
        // (−1)ⁿ⁺¹ f(a₁, …, aₙ)·aₙ₊₁
        let head = encode(&mut digits[..n].iter().copied()).expect("digits in range");
        let r = module.right(digits[n]);
        let negative = (n + 1) % 2 == 1;
        for p in 0..m {
            for q in 0..m {
                let v = r.get(p, q);
                if !ring.is_zero(v) {
                    let v = if negative { ring.neg(v) } else { v.clone() };
                    out.add_to(p * tgt_n + jt, q * src_n + head, &v);
                }
            }
        }
    }
    Ok(out)
}

fn cohomology_of<R: Ring>(
    ring: &R,
    degree: usize,
    normalized: bool,
    m: usize,
    current: &Matrix<R>,
    previous: &Matrix<R>,
    representatives: bool,
) -> Result<CohomologyReport<R>> {
    if ring.is_field() && !representatives {
        let dim = current.cols() - rank(current) - rank(previous);
        return Ok(CohomologyReport { degree, invariants: KModuleInvariants::free(dim), representatives: None });
    }
    let cycles = kernel_basis(current);
    let sq = subquotient(&cycles, previous)?;
    let reps = representatives.then(|| {
        sq.generators.columns().iter().map(|v| Cochain::from_vector(ring, degree, normalized, m, v)).collect()
    });
    Ok(CohomologyReport { degree, invariants: sq.invariants, representatives: reps })
}

/// `HHⁿ(A, M) = ker bⁿ / im bⁿ⁻¹`.
pub fn hh<R: Ring>(module: &Bimodule<R>, n: usize, normalized: bool) -> Result<CohomologyReport<R>> {
    hh_report(module, n, normalized, false)
}

pub fn hh_report<R: Ring>(
    module: &Bimodule<R>,
    n: usize,
    normalized: bool,
    representatives: bool,
) -> Result<CohomologyReport<R>> {
    let ring = module.ring();
    let current = coboundary_matrix(module, n, normalized)?;
    let previous =
        if n == 0 { Matrix::zeros(ring, current.cols(), 0) } else { coboundary_matrix(module, n - 1, normalized)? };
    cohomology_of(ring, n, normalized, module.rank(), &current, &previous, representatives)
}

/// Moves `module` to a unital basis of its algebra when one exists, so the
/// normalized complex can be used. Returns the module and whether it did.
pub fn prefer_normalized<R: Ring>(module: &Bimodule<R>) -> Result<(Bimodule<R>, bool)> {
    let algebra = module.algebra();
    if algebra.has_unital_basis() {
        return Ok((module.clone(), true));
    }
    match algebra.to_unital_basis() {
        Ok((b, p)) => Ok((module.rebase(&Arc::new(b), &p)?, true)),
        Err(Error::UnitNotUnimodular) => Ok((module.clone(), false)),
        Err(e) => Err(e),
    }
}

/// Basis of `Z_A(M) = {m : a·m = m·a}`, from the stacked system `L_i − R_i`.
pub fn center<R: Ring>(module: &Bimodule<R>) -> Matrix<R> {
    let ring = module.ring();
    let m = module.rank();
    let blocks: Vec<Matrix<R>> = (0..module.algebra().rank()).map(|i| module.left(i).sub(module.right(i))).collect();
    kernel_basis(&Matrix::vstack_all(ring, m, &blocks))
}

/// The linear system whose kernel is `Der_k(A, M)`, on `vec(D)` with
/// `D` the `rank M × d` matrix of the map (row-major).
fn leibniz_system<R: Ring>(module: &Bimodule<R>) -> Matrix<R> {
    let algebra = module.algebra();
    let ring = algebra.ring();
    let d = algebra.rank();
    let m = module.rank();
    let id_m = Matrix::identity(ring, m);
    // column selector: vec(D) ↦ D·v
    let pick = |v: &[R::Elem]| id_m.kronecker(&Matrix::from_vec(ring, 1, d, v.to_vec()).expect("row"));
    let mut blocks = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let ei = algebra.basis_vector(i);
            let ej = algebra.basis_vector(j);
            let lhs = pick(algebra.product(i, j));
            let rhs = module.left(i).mul(&pick(&ej)).add(&module.right(j).mul(&pick(&ei)));
            blocks.push(lhs.sub(&rhs));
        }
    }
    Matrix::vstack_all(ring, m * d, &blocks)
}

/// Checks `D(eᵢeⱼ) = eᵢD(eⱼ) + D(eᵢ)eⱼ` on all basis pairs.
pub fn check_derivation<R: Ring>(module: &Bimodule<R>, derivation: &Matrix<R>) -> Result<()> {
    let algebra = module.algebra();
    let d = algebra.rank();
    if derivation.shape() != (module.rank(), d) {
        return Err(Error::Shape(format!("derivation must be {}x{d}", module.rank())));
    }
    for i in 0..d {
        for j in 0..d {
            let lhs = derivation.mul_vec(algebra.product(i, j));
            let a = module.left(i).mul_vec(&derivation.column(j));
            let b = module.right(j).mul_vec(&derivation.column(i));
            let rhs: Vec<R::Elem> = a.iter().zip(&b).map(|(x, y)| module.ring().add(x, y)).collect();
            if lhs != rhs {
                return Err(Error::NotADerivation { i, j });
            }
        }
    }
    Ok(())
}

/// Basis of `Der_k(A, M)`, each column the row-major `vec` of a derivation.
pub fn derivations<R: Ring>(module: &Bimodule<R>) -> Matrix<R> {
    kernel_basis(&leibniz_system(module))
}

/// Basis of the inner derivations `a ↦ a·m − m·a`.
pub fn inner_derivations<R: Ring>(module: &Bimodule<R>) -> Matrix<R> {
    image_basis(&inner_derivation_map(module))
}

/// `M → C¹`, `m ↦ (a ↦ a·m − m·a)`.
fn inner_derivation_map<R: Ring>(module: &Bimodule<R>) -> Matrix<R> {
    let ring = module.ring();
    let d = module.algebra().rank();
    let m = module.rank();
    Matrix::from_fn(ring, m * d, m, |row, q| {
        let (p, i) = (row / d, row % d);
        ring.sub(module.left(i).get(p, q), module.right(i).get(p, q))
    })
}

/// `HH¹` as `Der/Inn`.
pub fn hh1_report<R: Ring>(module: &Bimodule<R>) -> Result<CohomologyReport<R>> {
    let der = derivations(module);
    let sq = subquotient(&der, &inner_derivation_map(module))?;
    let ring = module.ring();
    let reps = sq.generators.columns().iter().map(|v| Cochain::from_vector(ring, 1, false, module.rank(), v)).collect();
    Ok(CohomologyReport { degree: 1, invariants: sq.invariants, representatives: Some(reps) })
}

/// Boundary `M⊗A^⊗n → M⊗A^⊗(n−1)` of the Hochschild chain complex:
/// `m·a₁⊗a₂… + Σᵢ (−1)ⁱ m⊗…⊗aᵢaᵢ₊₁⊗… + (−1)ⁿ aₙ·m⊗a₁⊗…⊗aₙ₋₁`.
pub fn homology_boundary<R: Ring>(module: &Bimodule<R>, n: usize) -> Result<Matrix<R>> {
    let algebra = module.algebra();
    let ring = algebra.ring();
    let d = algebra.rank();
    let m = module.rank();
    let src_n = d.pow(n as u32);
    let tgt_n = if n == 0 { 1 } else { d.pow(n as u32 - 1) };
    check_size(m * tgt_n, m * src_n)?;
    let mut out = Matrix::zeros(ring, m * tgt_n, m * src_n);
    if n == 0 {
        return Ok(out);
    }
    let mut digits = vec![0usize; n];
    let encode = |it: &mut dyn Iterator<Item = usize>| it.fold(0, |acc, b| acc * d + b);
    for js in 0..src_n {
        let mut rest = js;
        for pos in (0..n).rev() {
            digits[pos] = rest % d;
            rest /= d;
        }
        let tail = encode(&mut digits[1..].iter().copied());
        let r = module.right(digits[0]);
        for p in 0..m {
            for q in 0..m {
                let v = r.get(p, q);
                if !ring.is_zero(v) {
                    out.add_to(p * tgt_n + tail, q * src_n + js, v);
                }
            }
        }
        for i in 0..n - 1 {
            for (k, c) in algebra.product(digits[i], digits[i + 1]).iter().enumerate() {
                if ring.is_zero(c) {
                    continue;
                }
                let j = encode(
                    &mut digits[..i].iter().copied().chain(std::iter::once(k)).chain(digits[i + 2..].iter().copied()),
                );
                let v = if (i + 1) % 2 == 1 { ring.neg(c) } else { c.clone() };
                for p in 0..m {
                    out.add_to(p * tgt_n + j, p * src_n + js, &v);
                }
            }
        }
        let head = encode(&mut digits[..n - 1].iter().copied());
        let l = module.left(digits[n - 1]);
        let negative = n % 2 == 1;
        for p in 0..m {
            for q in 0..m {
                let v = l.get(p, q);
                if !ring.is_zero(v) {
                    let v = if negative { ring.neg(v) } else { v.clone() };
                    out.add_to(p * tgt_n + head, q * src_n + js, &v);
                }
            }
        }
    }
    Ok(out)
}

/// `HHₙ(A, M) = ker bₙ / im bₙ₊₁`.
pub fn hochschild_homology<R: Ring>(module: &Bimodule<R>, n: usize) -> Result<KModuleInvariants> {
    let current = homology_boundary(module, n)?;
    let next = homology_boundary(module, n + 1)?;
    Ok(cohomology_of(module.ring(), n, false, module.rank(), &current, &next, false)?.invariants)
}

/// Basis of `Hom_A(source, target)`: matrices `F` with `F·Sᵢ = Tᵢ·F`, each
/// column the row-major `vec` of one.
pub fn module_homomorphisms<R: Ring>(source: &LeftModule<R>, target: &LeftModule<R>) -> Matrix<R> {
    let ring = source.algebra().ring();
    let (n, m) = (source.rank(), target.rank());
    let d = source.algebra().rank();
    let mut sys = Matrix::zeros(ring, d * m * n, m * n);
    for i in 0..d {
        let (s, t) = (source.action(i), target.action(i));
        for r in 0..m {
            for c in 0..n {
                let row = (i * m + r) * n + c;
                // Σₛ F[r][s]·S[s][c] − Σₛ T[r][s]·F[s][c]
                for x in 0..n {
                    let v = s.get(x, c);
                    if !ring.is_zero(v) {
                        sys.add_to(row, r * n + x, v);
                    }
                }
                for x in 0..m {
                    let v = t.get(r, x);
                    if !ring.is_zero(v) {
                        sys.add_to(row, x * n + c, &ring.neg(v));
                    }
                }
            }
        }
    }
    kernel_basis(&sys)
}

/// `Ext^n_E(M, N)` as `HHⁿ(A, Hom_k(M, N))`.
pub fn relative_ext<R: Ring>(
    source: &LeftModule<R>,
    target: &LeftModule<R>,
    n: usize,
    normalized: bool,
) -> Result<KModuleInvariants> {
    let hom = hom_bimodule(source, target)?;
    let (hom, normalized) = if normalized { prefer_normalized(&hom)? } else { (hom, false) };
    Ok(hh(&hom, n, normalized)?.invariants)
}

/// `Ext^n_E(M, N)` from the relative bar resolution `A^⊗(n+1) ⊗ M` of `M`:
/// cochains `f: A^⊗n ⊗ M → N` with
/// `δf(a₁,…,aₙ₊₁,x) = a₁f(a₂,…,x) + Σᵢ (−1)ⁱ f(…,aᵢaᵢ₊₁,…,x) + (−1)ⁿ⁺¹ f(a₁,…,aₙ,aₙ₊₁x)`.
pub fn relative_ext_bar<R: Ring>(
    source: &LeftModule<R>,
    target: &LeftModule<R>,
    n: usize,
) -> Result<KModuleInvariants> {
    let current = module_bar_coboundary(source, target, n)?;
    let previous = if n == 0 {
        Matrix::zeros(source.algebra().ring(), current.cols(), 0)
    } else {
        module_bar_coboundary(source, target, n - 1)?
    };
    Ok(cohomology_of(source.algebra().ring(), n, false, target.rank(), &current, &previous, false)?.invariants)
}

fn module_bar_coboundary<R: Ring>(source: &LeftModule<R>, target: &LeftModule<R>, n: usize) -> Result<Matrix<R>> {
    let algebra = source.algebra();
    let ring = algebra.ring();
    let d = algebra.rank();
    let (ms, mt) = (source.rank(), target.rank());
    // column index of f: (p, J, x) ↦ (p·dⁿ + J)·ms + x
    let src_n = d.pow(n as u32);
    let tgt_n = d.pow(n as u32 + 1);
    let cols = mt * src_n * ms;
    let rows = mt * tgt_n * ms;
    check_size(rows, cols)?;
    let mut out = Matrix::zeros(ring, rows, cols);
    let mut digits = vec![0usize; n + 1];
    let encode = |it: &mut dyn Iterator<Item = usize>| it.fold(0, |acc, b| acc * d + b);
    for jt in 0..tgt_n {
        let mut rest = jt;
        for pos in (0..=n).rev() {
            digits[pos] = rest % d;
            rest /= d;
        }
        let tail = encode(&mut digits[1..].iter().copied());
        let head = encode(&mut digits[..n].iter().copied());
        let l = target.action(digits[0]);
        let act = source.action(digits[n]);
        let last_negative = (n + 1) % 2 == 1;
        for x in 0..ms {
            let row_of = |p: usize| (p * tgt_n + jt) * ms + x;
            for p in 0..mt {
                for q in 0..mt {
                    let v = l.get(p, q);
                    if !ring.is_zero(v) {
                        out.add_to(row_of(p), (q * src_n + tail) * ms + x, v);
                    }
                }
            }
            for i in 0..n {
                for (k, c) in algebra.product(digits[i], digits[i + 1]).iter().enumerate() {
                    if ring.is_zero(c) {
                        continue;
                    }
                    let j = encode(
                        &mut digits[..i]
                            .iter()
                            .copied()
                            .chain(std::iter::once(k))
                            .chain(digits[i + 2..].iter().copied()),
                    );
                    let v = if (i + 1) % 2 == 1 { ring.neg(c) } else { c.clone() };
                    for p in 0..mt {
                        out.add_to(row_of(p), (p * src_n + j) * ms + x, &v);
                    }
                }
            }
            // f(a₁, …, aₙ, aₙ₊₁·x)
            for y in 0..ms {
                let v = act.get(y, x);
                if ring.is_zero(v) {
                    continue;
                }
                let v = if last_negative { ring.neg(v) } else { v.clone() };
                for p in 0..mt {
                    out.add_to(row_of(p), (p * src_n + head) * ms + y, &v);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ring::{Integers, PrimeField, Rationals};
    use num_bigint::BigInt;

    fn regular<R: Ring>(a: crate::algebra::FiniteAlgebra<R>) -> Bimodule<R> {
        Bimodule::regular(&Arc::new(a))
    }

    #[test]
    fn b0_is_commutator() {
        let m = regular(catalog::truncated_polynomial(&Rationals, 3));
        assert!(coboundary_matrix(&m, 0, false).unwrap().is_zero());
    }

    #[test]
    fn coboundaries_square_to_zero() {
        let m = regular(catalog::upper_triangular(&Integers));
        for n in 0..3 {
            let a = coboundary_matrix(&m, n, false).unwrap();
            let b = coboundary_matrix(&m, n + 1, false).unwrap();
            assert!(b.mul(&a).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn dual_numbers_over_f2_normalized_vanish() {
        let f2 = PrimeField::new(2).unwrap();
        let m = regular(catalog::truncated_polynomial(&f2, 2));
        for n in 0..5 {
            assert!(coboundary_matrix(&m, n, true).unwrap().is_zero());
            assert_eq!(hh(&m, n, true).unwrap().invariants, KModuleInvariants::free(2));
        }
    }

    #[test]
    fn dual_numbers_over_q() {
        let m = regular(catalog::truncated_polynomial(&Rationals, 2));
        let dims: Vec<usize> = (0..4).map(|n| hh(&m, n, true).unwrap().invariants.free_rank).collect();
        assert_eq!(dims, [2, 1, 1, 1]);
    }

    #[test]
    fn dual_numbers_over_z_second_degree() {
        let m = regular(catalog::truncated_polynomial(&Integers, 2));
        let r = hh_report(&m, 2, true, true).unwrap();
        assert_eq!(r.invariants, KModuleInvariants { free_rank: 1, torsion: vec![BigInt::from(2)] });
        let b2 = coboundary_matrix(&m, 2, true).unwrap();
        for rep in r.representatives.unwrap() {
            assert!(b2.mul_vec(&rep.to_vector()).iter().all(|x| Integers.is_zero(x)));
        }
    }

    #[test]
    fn matrix_algebra_center_and_derivations() {
        let m = regular(catalog::matrix_algebra(&Rationals, 2));
        assert_eq!(center(&m).cols(), 1);
        assert_eq!(derivations(&m).cols(), 3);
        assert_eq!(inner_derivations(&m).cols(), 3);
        assert!(hh1_report(&m).unwrap().invariants.is_zero());
        assert_eq!(hochschild_homology(&m, 0).unwrap(), KModuleInvariants::free(1));
    }

    #[test]
    fn integer_dual_numbers_derivations() {
        let m = regular(catalog::truncated_polynomial(&Integers, 2));
        assert_eq!(derivations(&m).cols(), 1);
        assert_eq!(inner_derivations(&m).cols(), 0);
        assert_eq!(hh1_report(&m).unwrap().invariants, KModuleInvariants::free(1));
    }

    #[test]
    fn normalized_cochain_extension_stays_a_cocycle() {
        let f2 = PrimeField::new(2).unwrap();
        let m = regular(catalog::truncated_polynomial(&f2, 2));
        let r = hh_report(&m, 2, true, true).unwrap();
        let b2 = coboundary_matrix(&m, 2, false).unwrap();
        for rep in r.representatives.unwrap() {
            let full = rep.to_unnormalized(2);
            assert!(b2.mul_vec(&full.to_vector()).iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn homology_of_scalars() {
        let m = regular(catalog::scalars(&Integers));
        assert_eq!(hochschild_homology(&m, 0).unwrap(), KModuleInvariants::free(1));
        assert!(hochschild_homology(&m, 1).unwrap().is_zero());
    }

    #[test]
    fn ext_zero_is_hom() {
        let a = Arc::new(catalog::truncated_polynomial(&Rationals, 2));
        let reg = LeftModule::regular(&a);
        assert_eq!(relative_ext(&reg, &reg, 0, true).unwrap(), KModuleInvariants::free(2));
        assert_eq!(module_homomorphisms(&reg, &reg).cols(), 2);
        assert_eq!(relative_ext_bar(&reg, &reg, 0).unwrap(), KModuleInvariants::free(2));
        assert!(relative_ext(&reg, &reg, 1, true).unwrap().is_zero());
        assert!(relative_ext_bar(&reg, &reg, 1).unwrap().is_zero());
    }
}
