//! Bimodules and left modules over a [`FiniteAlgebra`], given by action
//! matrices acting on column vectors.

use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::linalg::check_size;
use crate::matrix::Matrix;
use crate::ring::Ring;

/// A free k-module of rank `m` with commuting left and right `A`-actions:
/// `L_i` is `v ↦ eᵢ·v`, `R_i` is `v ↦ v·eᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule<R: Ring> {
    algebra: Arc<FiniteAlgebra<R>>,
    rank: usize,
    left: Vec<Matrix<R>>,
    right: Vec<Matrix<R>>,
}

fn check_actions<R: Ring>(algebra: &FiniteAlgebra<R>, rank: usize, actions: &[Matrix<R>], side: &str) -> Result<()> {
    if actions.len() != algebra.rank() {
        return Err(Error::Shape(format!(
            "{} {side} action matrices for an algebra of rank {}",
            actions.len(),
            algebra.rank()
        )));
    }
    if let Some(i) = actions.iter().position(|m| m.shape() != (rank, rank)) {
        return Err(Error::Shape(format!("{side} action matrix {i} is not {rank}x{rank}")));
    }
    Ok(())
}

/// `Σₖ cₖ·Mₖ`
fn combination<R: Ring>(ring: &R, rank: usize, coeffs: &[R::Elem], mats: &[Matrix<R>]) -> Matrix<R> {
    let mut out = Matrix::zeros(ring, rank, rank);
    for (c, m) in coeffs.iter().zip(mats) {
        if !ring.is_zero(c) {
            out = out.add(&m.scale(c));
        }
    }
    out
}

fn first_nonzero_column<R: Ring>(m: &Matrix<R>) -> Option<usize> {
    (0..m.cols()).find(|&j| (0..m.rows()).any(|i| !m.ring().is_zero(m.get(i, j))))
}

/// Checks `Xᵢ·Xⱼ = Σₖ c_{ij}^k Xₖ` (or `Xⱼ·Xᵢ` when `reversed`) and the unit law.
fn check_module_laws<R: Ring>(
    algebra: &FiniteAlgebra<R>,
    rank: usize,
    acts: &[Matrix<R>],
    reversed: bool,
    assoc_law: &'static str,
    unit_law: &'static str,
) -> Result<()> {
    let ring = algebra.ring();
    let d = algebra.rank();
    for i in 0..d {
        for j in 0..d {
            let lhs = if reversed { acts[j].mul(&acts[i]) } else { acts[i].mul(&acts[j]) };
            let rhs = combination(ring, rank, algebra.product(i, j), acts);
            if lhs != rhs {
                return Err(Error::ActionAxiom { law: assoc_law, i, j });
            }
        }
    }
    let u = combination(ring, rank, algebra.unit(), acts).sub(&Matrix::identity(ring, rank));
    if let Some(c) = first_nonzero_column(&u) {
        return Err(Error::ActionAxiom { law: unit_law, i: c, j: c });
    }
    Ok(())
}

impl<R: Ring> Bimodule<R> {
    /// Validates both module laws, both unit laws and `L_i R_j = R_j L_i`.
    pub fn new(algebra: Arc<FiniteAlgebra<R>>, left: Vec<Matrix<R>>, right: Vec<Matrix<R>>) -> Result<Self> {
        let m = Self::new_unchecked(algebra, left, right)?;
        m.validate()?;
        Ok(m)
    }

    pub fn new_unchecked(algebra: Arc<FiniteAlgebra<R>>, left: Vec<Matrix<R>>, right: Vec<Matrix<R>>) -> Result<Self> {
        let rank = left.first().map_or(0, Matrix::rows);
        check_actions(&algebra, rank, &left, "left")?;
        check_actions(&algebra, rank, &right, "right")?;
        Ok(Self { algebra, rank, left, right })
    }

    pub fn validate(&self) -> Result<()> {
        let a = &*self.algebra;
        check_module_laws(a, self.rank, &self.left, false, "left associativity", "left unit")?;
        check_module_laws(a, self.rank, &self.right, true, "right associativity", "right unit")?;
        let d = a.rank();
        for i in 0..d {
            for j in 0..d {
                if self.left[i].mul(&self.right[j]) != self.right[j].mul(&self.left[i]) {
                    return Err(Error::ActionAxiom { law: "compatibility", i, j });
                }
            }
        }
        Ok(())
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(algebra: &Arc<FiniteAlgebra<R>>) -> Self {
        let d = algebra.rank();
        Self {
            algebra: algebra.clone(),
            rank: d,
            left: (0..d).map(|i| algebra.left_mul_matrix(i)).collect(),
            right: (0..d).map(|i| algebra.right_mul_matrix(i)).collect(),
        }
    }

    pub fn zero(algebra: &Arc<FiniteAlgebra<R>>) -> Self {
        let ring = algebra.ring();
        let z = Matrix::zeros(ring, 0, 0);
        Self {
            algebra: algebra.clone(),
            rank: 0,
            left: vec![z.clone(); algebra.rank()],
            right: vec![z; algebra.rank()],
        }
    }

    /// `A^⊗factors` with `a·(a₀⊗…⊗aₙ)·b = aa₀⊗…⊗aₙb`.
    pub fn outer_tensor(algebra: &Arc<FiniteAlgebra<R>>, factors: usize) -> Result<Self> {
        assert!(factors >= 1, "need at least one tensor factor");
        let ring = algebra.ring();
        let d = algebra.rank();
        let inner = d.pow(factors as u32 - 1);
        check_size(inner * d, inner * d)?;
        let id = Matrix::identity(ring, inner);
        Ok(Self {
            algebra: algebra.clone(),
            rank: inner * d,
            left: (0..d).map(|i| algebra.left_mul_matrix(i).kronecker(&id)).collect(),
            right: (0..d).map(|i| id.kronecker(&algebra.right_mul_matrix(i))).collect(),
        })
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra<R>> {
        &self.algebra
    }

    pub fn ring(&self) -> &R {
        self.algebra.ring()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn left(&self, i: usize) -> &Matrix<R> {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &Matrix<R> {
        &self.right[i]
    }

    pub fn lefts(&self) -> &[Matrix<R>] {
        &self.left
    }

    pub fn rights(&self) -> &[Matrix<R>] {
        &self.right
    }

    /// Matrix of `v ↦ a·v` for an algebra element `a`.
    pub fn left_by(&self, a: &[R::Elem]) -> Matrix<R> {
        combination(self.ring(), self.rank, a, &self.left)
    }

    /// Matrix of `v ↦ v·a`.
    pub fn right_by(&self, a: &[R::Elem]) -> Matrix<R> {
        combination(self.ring(), self.rank, a, &self.right)
    }

    /// Action of the enveloping basis element `eᵢ⊗eⱼ`: `v ↦ eᵢ·v·eⱼ`.
    pub fn ae_action(&self, i: usize, j: usize) -> Matrix<R> {
        self.left[i].mul(&self.right[j])
    }

    /// The same module seen as a left `Aᵉ`-module, `(a⊗b)·m = a·m·b`.
    pub fn to_ae_module(&self, enveloping: &Arc<FiniteAlgebra<R>>) -> Result<LeftModule<R>> {
        let d = self.algebra.rank();
        if enveloping.rank() != d * d {
            return Err(Error::Shape("not the enveloping algebra of this bimodule's algebra".into()));
        }
        let action = (0..d * d).map(|p| self.ae_action(p / d, p % d)).collect();
        LeftModule::new_unchecked(enveloping.clone(), action)
    }

    /// Recovers the bimodule from a left `Aᵉ`-module:
    /// `L_i = (eᵢ⊗1)·` and `R_j = (1⊗eⱼ)·`.
    pub fn from_ae_module(algebra: &Arc<FiniteAlgebra<R>>, module: &LeftModule<R>) -> Result<Self> {
        let env = algebra.enveloping();
        if **module.algebra() != env {
            return Err(Error::Shape("module is not over the enveloping algebra".into()));
        }
        module.validate()?;
        let ring = algebra.ring();
        let d = algebra.rank();
        let u = algebra.unit();
        let rank = module.rank();
        let mut left = Vec::with_capacity(d);
        let mut right = Vec::with_capacity(d);
        for i in 0..d {
            let mut l = Matrix::zeros(ring, rank, rank);
            let mut r = Matrix::zeros(ring, rank, rank);
            for (k, uk) in u.iter().enumerate() {
                if ring.is_zero(uk) {
                    continue;
                }
                l = l.add(&module.action(i * d + k).scale(uk));
                r = r.add(&module.action(k * d + i).scale(uk));
            }
            left.push(l);
            right.push(r);
        }
        if rank == 0 {
            return Ok(Self::zero(algebra));
        }
        Self::new(algebra.clone(), left, right)
    }

    /// The same module over `algebra`, a copy of this module's algebra in
    /// the basis given by the columns of `basis_change` (as returned by
    /// [`FiniteAlgebra::to_unital_basis`]).
    pub fn rebase(&self, algebra: &Arc<FiniteAlgebra<R>>, basis_change: &Matrix<R>) -> Result<Self> {
        let columns = basis_change.columns();
        let left = columns.iter().map(|c| self.left_by(c)).collect();
        let right = columns.iter().map(|c| self.right_by(c)).collect();
        if self.rank == 0 {
            return Ok(Self::zero(algebra));
        }
        Self::new_unchecked(algebra.clone(), left, right)
    }

    /// The left module obtained by forgetting the right action.
    pub fn underlying_left(&self) -> LeftModule<R> {
        LeftModule { algebra: self.algebra.clone(), rank: self.rank, action: self.left.clone() }
    }

    /// Submodule spanned by the columns of `basis`, which must be stable
    /// under both actions; the induced actions are expressed in that basis.
    pub fn restrict(&self, basis: &Matrix<R>) -> Result<Self> {
        let solver = crate::linalg::LinearSystem::new(basis);
        let induced = |m: &Matrix<R>| -> Result<Matrix<R>> {
            solver
                .solve_columns(&m.mul(basis))
                .ok_or_else(|| Error::Shape("span is not stable under the action".into()))
        };
        let left = self.left.iter().map(induced).collect::<Result<Vec<_>>>()?;
        let right = self.right.iter().map(induced).collect::<Result<Vec<_>>>()?;
        if basis.cols() == 0 {
            return Ok(Self::zero(&self.algebra));
        }
        Self::new_unchecked(self.algebra.clone(), left, right)
    }
}

/// A free k-module with a left `A`-action.
#[derive(Clone, Debug, PartialEq)]
pub struct LeftModule<R: Ring> {
    algebra: Arc<FiniteAlgebra<R>>,
    rank: usize,
    action: Vec<Matrix<R>>,
}

impl<R: Ring> LeftModule<R> {
    pub fn new(algebra: Arc<FiniteAlgebra<R>>, action: Vec<Matrix<R>>) -> Result<Self> {
        let m = Self::new_unchecked(algebra, action)?;
        m.validate()?;
        Ok(m)
    }

    pub fn new_unchecked(algebra: Arc<FiniteAlgebra<R>>, action: Vec<Matrix<R>>) -> Result<Self> {
        let rank = action.first().map_or(0, Matrix::rows);
        check_actions(&algebra, rank, &action, "left")?;
        Ok(Self { algebra, rank, action })
    }

    pub fn validate(&self) -> Result<()> {
        check_module_laws(&self.algebra, self.rank, &self.action, false, "left associativity", "left unit")
    }

    pub fn regular(algebra: &Arc<FiniteAlgebra<R>>) -> Self {
        Bimodule::regular(algebra).underlying_left()
    }

    /// The rank-one module on which `eᵢ` acts by the scalar `χ(eᵢ)`.
    pub fn from_character(algebra: &Arc<FiniteAlgebra<R>>, chi: &[R::Elem]) -> Result<Self> {
        let ring = algebra.ring();
        let action = chi.iter().map(|c| Matrix::from_vec(ring, 1, 1, vec![c.clone()])).collect::<Result<Vec<_>>>()?;
        Self::new(algebra.clone(), action)
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra<R>> {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, i: usize) -> &Matrix<R> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix<R>] {
        &self.action
    }
}

/// `Hom_k(N, M)` as an `(A, A)`-bimodule, `(a·f·a′)(n) = a·f(a′·n)`.
///
/// A map `f` is stored as its `rank M × rank N` matrix, vectorized row-major.
pub fn hom_bimodule<R: Ring>(source: &LeftModule<R>, target: &LeftModule<R>) -> Result<Bimodule<R>> {
    if source.algebra() != target.algebra() {
        return Err(Error::Shape("modules over different algebras".into()));
    }
    let algebra = source.algebra().clone();
    let ring = algebra.ring();
    let (n, m) = (source.rank(), target.rank());
    check_size(m * n, m * n)?;
    if m * n == 0 {
        return Ok(Bimodule::zero(&algebra));
    }
    let id_n = Matrix::identity(ring, n);
    let id_m = Matrix::identity(ring, m);
    let d = algebra.rank();
    let left = (0..d).map(|i| target.action(i).kronecker(&id_n)).collect();
    let right = (0..d).map(|i| id_m.kronecker(&source.action(i).transpose())).collect();
    Bimodule::new(algebra, left, right)
}
