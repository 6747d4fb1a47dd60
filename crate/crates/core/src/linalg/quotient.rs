//! Isomorphism types of finitely generated modules and of subquotients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::echelon::{image_basis, rank, LinearSystem};
use super::smith::smith_normal_form;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// `k^free_rank ⊕ ⊕ k/(tᵢ)` with `t₁ | t₂ | …`, every `tᵢ > 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KModuleInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl KModuleInvariants {
    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of elements when the module is finite, i.e. `Some(∏ tᵢ)` for
    /// torsion modules and `None` when there is a free part.
    pub fn torsion_order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for KModuleInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("k".to_string()),
            r => parts.push(format!("k^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("k/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A computed subquotient `span Z / span B` together with generators.
#[derive(Clone, Debug)]
pub struct Subquotient<R: Ring> {
    pub invariants: KModuleInvariants,
    /// Ambient-space generators, one column per summand: free summands
    /// first, then torsion summands in increasing invariant-factor order.
    pub generators: Matrix<R>,
}

fn torsion_factor<R: Ring>(ring: &R, d: &R::Elem) -> Option<BigInt> {
    if ring.is_unit(d) {
        return None;
    }
    let q = ring.to_rational(d).expect("non-units exist only over Z");
    Some(q.numer().abs())
}

/// Invariants and generators of `⟨columns of z⟩ / ⟨columns of b⟩`.
///
/// Fails with [`Error::NotContained`] naming the first column of `b` that is
/// not in the span (lattice, over ℤ) of `z`.
pub fn subquotient<R: Ring>(z: &Matrix<R>, b: &Matrix<R>) -> Result<Subquotient<R>> {
    let ring = z.ring();
    if z.rows() != b.rows() {
        return Err(Error::Shape(format!("numerator has {} rows, denominator {}", z.rows(), b.rows())));
    }
    let zb = image_basis(z);
    let r = zb.cols();
    let solver = LinearSystem::new(&zb);
    let x = solver.solve_columns_or_witness(b).map_err(|column| Error::NotContained { column })?;
    let snf = smith_normal_form(&x);
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..r {
        let g = zb.mul_vec(&snf.u_inv.column(i));
        if i >= snf.rank {
            free.push(g);
        } else if let Some(t) = torsion_factor(ring, snf.d.get(i, i)) {
            torsion.push((t, g));
        }
    }
    let invariants =
        KModuleInvariants { free_rank: free.len(), torsion: torsion.iter().map(|(t, _)| t.clone()).collect() };
    debug_assert!(invariants.torsion.iter().all(|t| !t.is_one()));
    free.extend(torsion.into_iter().map(|(_, g)| g));
    Ok(Subquotient { invariants, generators: Matrix::from_columns(ring, z.rows(), &free) })
}

/// Invariants of `⟨z⟩ / ⟨b⟩` only. Over a field this is pure rank
/// arithmetic and skips the containment check.
pub fn subquotient_invariants<R: Ring>(z: &Matrix<R>, b: &Matrix<R>) -> Result<KModuleInvariants> {
    if z.ring().is_field() {
        if z.rows() != b.rows() {
            return Err(Error::Shape(format!("numerator has {} rows, denominator {}", z.rows(), b.rows())));
        }
        return Ok(KModuleInvariants::free(rank(z) - rank(b)));
    }
    subquotient(z, b).map(|s| s.invariants)
}

/// Invariants of the cokernel `k^rows / ⟨columns of relations⟩`.
pub fn cokernel_invariants<R: Ring>(relations: &Matrix<R>) -> KModuleInvariants {
    let ring = relations.ring();
    if ring.is_field() {
        return KModuleInvariants::free(relations.rows() - rank(relations));
    }
    let snf = smith_normal_form(relations);
    let torsion = snf.factors().iter().filter_map(|d| torsion_factor(ring, d)).collect();
    KModuleInvariants { free_rank: relations.rows() - snf.rank, torsion }
}
