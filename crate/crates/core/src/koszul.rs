//! Koszul complexes, regular sequences, Tor and flat dimension.
//!
//! Finite-rank modules over a commutative algebra are presented as
//! `k^g / im R` with the algebra acting on the `g` generators. Polynomial
//! rings `k[x₁, …, x_v]` are handled one internal degree at a time.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::bimodule::LeftModule;
use crate::error::{Error, Result};
use crate::linalg::{cokernel_invariants, kernel_basis, subquotient, KModuleInvariants};
use crate::matrix::Matrix;
use crate::ring::{Ring, ScalarRing};

/// The `C(d, n)` subsets of `{0, …, d−1}` of size `n`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorBasis {
    pub d: usize,
    pub n: usize,
    subsets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ExteriorBasis {
    pub fn new(d: usize, n: usize) -> Self {
        let mut subsets = Vec::new();
        if n <= d {
            let mut current: Vec<usize> = (0..n).collect();
            loop {
                subsets.push(current.clone());
                // advance to the next combination
                let Some(pos) = (0..n).rev().find(|&p| current[p] < d - n + p) else {
                    break;
                };
                current[pos] += 1;
                for q in pos + 1..n {
                    current[q] = current[q - 1] + 1;
                }
            }
        }
        let index = subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Self { d, n, subsets, index }
    }

    pub fn rank(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn index_of(&self, subset: &[usize]) -> Option<usize> {
        self.index.get(subset).copied()
    }
}

/// One nonzero entry `sign · x_variable` of a Koszul differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KoszulEntry {
    pub row: usize,
    pub col: usize,
    pub variable: usize,
    pub sign: i8,
}

/// `dₙ(e_S) = Σⱼ (−1)^(j+1) x_{iⱼ} e_{S∖iⱼ}` for `S = {i₁ < … < iₙ}`, as
/// a `C(d, n−1) × C(d, n)` pattern of signed variables.
pub fn koszul_pattern(d: usize, n: usize) -> Result<Vec<KoszulEntry>> {
    if n == 0 || n > d {
        return Err(Error::Shape(format!("Koszul degree {n} outside 1..={d}")));
    }
    let src = ExteriorBasis::new(d, n);
    let dst = ExteriorBasis::new(d, n - 1);
    let mut entries = Vec::new();
    let mut face = Vec::with_capacity(n);
    for (col, s) in src.subsets().iter().enumerate() {
        for j in 0..n {
            face.clear();
            face.extend(s.iter().enumerate().filter(|&(p, _)| p != j).map(|(_, &i)| i));
            let row = dst.index_of(&face).expect("faces of a subset are subsets");
            entries.push(KoszulEntry { row, col, variable: s[j], sign: if j % 2 == 0 { 1 } else { -1 } });
        }
    }
    Ok(entries)
}

/// The pattern as strings, e.g. `[["-y"], ["x"]]` for `d = 2, n = 2`.
pub fn symbolic_koszul_differential(names: &[&str], n: usize) -> Result<Vec<Vec<String>>> {
    let d = names.len();
    let entries = koszul_pattern(d, n)?;
    let rows = ExteriorBasis::new(d, n - 1).rank();
    let cols = ExteriorBasis::new(d, n).rank();
    let mut out = vec![vec!["0".to_string(); cols]; rows];
    for e in entries {
        let sign = if e.sign < 0 { "-" } else { "" };
        out[e.row][e.col] = format!("{sign}{}", names[e.variable]);
    }
    Ok(out)
}

/// A finite-rank module `k^g / im R` over a commutative algebra.
#[derive(Clone, Debug)]
pub struct PresentedModule<R: Ring> {
    algebra: Arc<FiniteAlgebra<R>>,
    /// `g × g`, one per basis element of the algebra.
    action: Vec<Matrix<R>>,
    /// `g × r`
    relations: Matrix<R>,
}

impl<R: Ring> PresentedModule<R> {
    /// Checks commutativity of the algebra and that every action matrix
    /// maps the relation lattice into itself.
    pub fn new(algebra: Arc<FiniteAlgebra<R>>, action: Vec<Matrix<R>>, relations: Matrix<R>) -> Result<Self> {
        algebra.require_commutative()?;
        let g = relations.rows();
        if action.len() != algebra.rank() || action.iter().any(|m| m.shape() != (g, g)) {
            return Err(Error::Shape(format!("need {} action matrices of size {g}x{g}", algebra.rank())));
        }
        let image = crate::linalg::LinearSystem::new(&relations);
        for (i, m) in action.iter().enumerate() {
            if image.solve_columns(&m.mul(&relations)).is_none() {
                return Err(Error::ActionAxiom { law: "action preserves relations", i, j: 0 });
            }
        }
        Ok(Self { algebra, action, relations })
    }

    pub fn from_left_module(module: &LeftModule<R>) -> Result<Self> {
        let ring = module.algebra().ring();
        Self::new(module.algebra().clone(), module.actions().to_vec(), Matrix::zeros(ring, module.rank(), 0))
    }

    /// The algebra itself.
    pub fn regular(algebra: &Arc<FiniteAlgebra<R>>) -> Result<Self> {
        Self::from_left_module(&LeftModule::regular(algebra))
    }

    /// `A / (y₁, …, y_t)`.
    pub fn cyclic_quotient(algebra: &Arc<FiniteAlgebra<R>>, ideal: &[Vec<R::Elem>]) -> Result<Self> {
        Self::regular(algebra)?.quotient_by(ideal)
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra<R>> {
        &self.algebra
    }

    pub fn generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &Matrix<R> {
        &self.relations
    }

    pub fn action(&self, i: usize) -> &Matrix<R> {
        &self.action[i]
    }

    /// Multiplication by `x` on the generators.
    pub fn multiplication(&self, x: &[R::Elem]) -> Matrix<R> {
        let ring = self.algebra.ring();
        let g = self.generators();
        let mut out = Matrix::zeros(ring, g, g);
        for (k, c) in x.iter().enumerate() {
            if !ring.is_zero(c) {
                out = out.add(&self.action[k].scale(c));
            }
        }
        out
    }

    pub fn invariants(&self) -> KModuleInvariants {
        cokernel_invariants(&self.relations)
    }

    /// `M / (y₁M + … + y_tM)`.
    pub fn quotient_by(&self, elements: &[Vec<R::Elem>]) -> Result<Self> {
        let mut relations = self.relations.clone();
        for y in elements {
            relations = relations.hstack(&self.multiplication(y));
        }
        Self::new(self.algebra.clone(), self.action.clone(), relations)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub injective: bool,
    /// `M / xM`
    pub cokernel: KModuleInvariants,
}

impl RegularityVerdict {
    pub fn is_regular(&self) -> bool {
        self.injective && !self.cokernel.is_zero()
    }
}

/// Lattice of `v` with `Xv ∈ im R`.
fn preimage<R: Ring>(x: &Matrix<R>, relations: &Matrix<R>) -> Matrix<R> {
    let g = x.cols();
    let joint = kernel_basis(&x.hstack(&relations.neg()));
    let rows: Vec<usize> = (0..g).collect();
    joint.select_rows(&rows)
}

/// `x` is `M`-regular when multiplication by `x` is injective on `M` and
/// not surjective.
pub fn regular_element_check<R: Ring>(module: &PresentedModule<R>, x: &[R::Elem]) -> Result<RegularityVerdict> {
    let mult = module.multiplication(x);
    let pre = preimage(&mult, &module.relations);
    let injective = subquotient(&pre, &module.relations)?.invariants.is_zero();
    let cokernel = cokernel_invariants(&module.relations.hstack(&mult));
    Ok(RegularityVerdict { injective, cokernel })
}

/// First index (counting from 1) at which `xᵢ` fails to be regular on
/// `M/(x₁, …, xᵢ₋₁)M`, or `None` for a regular sequence.
pub fn regular_sequence_check<R: Ring>(
    module: &PresentedModule<R>,
    sequence: &[Vec<R::Elem>],
) -> Result<Option<usize>> {
    let mut current = module.clone();
    for (i, x) in sequence.iter().enumerate() {
        if !regular_element_check(&current, x)?.is_regular() {
            return Ok(Some(i + 1));
        }
        current = current.quotient_by(std::slice::from_ref(x))?;
    }
    Ok(None)
}

/// `dₙ ⊗ M` on `M^C(d,n) → M^C(d,n−1)`, generators of `M` innermost.
pub fn koszul_differential<R: Ring>(
    module: &PresentedModule<R>,
    sequence: &[Vec<R::Elem>],
    n: usize,
) -> Result<Matrix<R>> {
    let ring = module.algebra.ring();
    let d = sequence.len();
    let g = module.generators();
    let rows = ExteriorBasis::new(d, n.saturating_sub(1)).rank() * g;
    let cols = ExteriorBasis::new(d, n).rank() * g;
    crate::linalg::check_size(rows, cols)?;
    let mut out = Matrix::zeros(ring, rows, cols);
    if n == 0 || n > d {
        return Ok(out);
    }
    let mults: Vec<Matrix<R>> = sequence.iter().map(|x| module.multiplication(x)).collect();
    for e in koszul_pattern(d, n)? {
        let block = &mults[e.variable];
        for p in 0..g {
            for q in 0..g {
                let v = block.get(p, q);
                if !ring.is_zero(v) {
                    let v = if e.sign < 0 { ring.neg(v) } else { v.clone() };
                    out.set(e.row * g + p, e.col * g + q, v);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorReport {
    /// `Torᵢ` for `i = 0, …, len`.
    pub tor: Vec<KModuleInvariants>,
    /// Largest `i` with `Torᵢ ≠ 0`.
    pub flat_dimension: Option<usize>,
}

impl TorReport {
    fn from_tor(tor: Vec<KModuleInvariants>) -> Self {
        let flat_dimension = tor.iter().rposition(|t| !t.is_zero());
        Self { tor, flat_dimension }
    }
}

/// Homology of `K(x) ⊗_A M`, i.e. `Tor^A(A/(x), M)`. Refuses a sequence
/// that is not regular on `A`, since the Koszul complex is then not a
/// resolution.
pub fn finite_koszul_tor<R: Ring>(
    algebra: &Arc<FiniteAlgebra<R>>,
    sequence: &[Vec<R::Elem>],
    module: &PresentedModule<R>,
) -> Result<TorReport> {
    if let Some(index) = regular_sequence_check(&PresentedModule::regular(algebra)?, sequence)? {
        return Err(Error::NotRegular { index });
    }
    let ring = algebra.ring();
    let d = sequence.len();
    let g = module.generators();
    let block_relations = |n: usize| -> Matrix<R> {
        let copies = ExteriorBasis::new(d, n).rank();
        let mut m = Matrix::zeros(ring, copies * g, copies * module.relations.cols());
        let rel = &module.relations;
        for c in 0..copies {
            for p in 0..g {
                for q in 0..rel.cols() {
                    m.set(c * g + p, c * rel.cols() + q, rel.get(p, q).clone());
                }
            }
        }
        m
    };
    let mut tor = Vec::with_capacity(d + 1);
    for n in 0..=d {
        let cycles = if n == 0 {
            Matrix::identity(ring, ExteriorBasis::new(d, 0).rank() * g)
        } else {
            preimage(&koszul_differential(module, sequence, n)?, &block_relations(n - 1))
        };
        let boundaries = koszul_differential(module, sequence, n + 1)?.hstack(&block_relations(n));
        tor.push(subquotient(&cycles, &boundaries)?.invariants);
    }
    Ok(TorReport::from_tor(tor))
}

/// Monomials of degree `e` in `v` variables, as exponent vectors, in
/// degree-reverse-lexicographic order (largest first).
pub fn degrevlex_monomials(v: usize, e: usize) -> Vec<Vec<usize>> {
    fn fill(v: usize, e: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() + 1 == v {
            prefix.push(e);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in 0..=e {
            prefix.push(a);
            fill(v, e - a, prefix, out);
            prefix.pop();
        }
    }
    if v == 0 {
        return if e == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    fill(v, e, &mut Vec::new(), &mut out);
    // larger in degrevlex: the last nonzero entry of a − b is negative
    out.sort_by(|a, b| {
        let last = (0..v).rev().find(|&i| a[i] != b[i]);
        match last {
            Some(i) => a[i].cmp(&b[i]),
            None => std::cmp::Ordering::Equal,
        }
    });
    out
}

/// Coefficient module of the graded Koszul complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradedCoefficients {
    /// `k[x₁, …, x_v]` itself: the homology certifies acyclicity.
    Polynomial,
    /// `k[x₁, …, x_v]/(x₁, …, x_v)`: the homology is `Tor(k, k)`.
    Residue,
}

/// `Kᵢ` in internal degree `e`: monomials `m·e_S` with `|S| = i` and
/// `deg m = e − i`; the residue coefficients keep only `deg m = 0`.
fn graded_level_basis(v: usize, i: usize, e: usize, coeff: GradedCoefficients) -> Vec<(Vec<usize>, Vec<usize>)> {
    if i > v || i > e {
        return Vec::new();
    }
    if coeff == GradedCoefficients::Residue && e != i {
        return Vec::new();
    }
    let monomials = degrevlex_monomials(v, e - i);
    let mut out = Vec::new();
    for s in ExteriorBasis::new(v, i).subsets() {
        for m in &monomials {
            out.push((s.clone(), m.clone()));
        }
    }
    out
}

fn graded_differential<R: Ring>(
    ring: &R,
    v: usize,
    i: usize,
    e: usize,
    coeff: GradedCoefficients,
) -> Result<Matrix<R>> {
    let src = graded_level_basis(v, i, e, coeff);
    let dst = if i == 0 { Vec::new() } else { graded_level_basis(v, i - 1, e, coeff) };
    crate::linalg::check_size(dst.len(), src.len())?;
    let index: HashMap<_, _> = dst.iter().enumerate().map(|(k, b)| (b.clone(), k)).collect();
    let mut out = Matrix::zeros(ring, dst.len(), src.len());
    for (col, (s, m)) in src.iter().enumerate() {
        for j in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|&(p, _)| p != j).map(|(_, &x)| x).collect();
            let mut raised = m.clone();
            raised[s[j]] += 1;
            if let Some(&row) = index.get(&(face, raised)) {
                let sign = if j % 2 == 0 { ring.one() } else { ring.neg(&ring.one()) };
                out.set(row, col, sign);
            }
        }
    }
    Ok(out)
}

/// `Hᵢ(K(x₁, …, x_v) ⊗ C)` in internal degrees `0..=cap`, indexed
/// `[i][e]` for `i = 0..=v+1`.
pub fn graded_koszul_homology<R: Ring>(
    ring: &R,
    v: usize,
    cap: usize,
    coeff: GradedCoefficients,
) -> Result<Vec<Vec<KModuleInvariants>>> {
    let mut table = vec![Vec::with_capacity(cap + 1); v + 2];
    for e in 0..=cap {
        for (i, row) in table.iter_mut().enumerate() {
            let here = graded_level_basis(v, i, e, coeff).len();
            let cycles = if i == 0 {
                Matrix::identity(ring, here)
            } else {
                kernel_basis(&graded_differential(ring, v, i, e, coeff)?)
            };
            let boundaries = graded_differential(ring, v, i + 1, e, coeff)?;
            row.push(subquotient(&cycles, &boundaries)?.invariants);
        }
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTorReport {
    pub variables: usize,
    pub cap: usize,
    /// `Torᵢ(k, k)` summed over internal degrees, `i = 0..=v+1`.
    pub tor: Vec<KModuleInvariants>,
    /// `[i][e]`
    pub by_degree: Vec<Vec<KModuleInvariants>>,
    /// Whether `K(x) → k` was checked exact in every degree up to the cap.
    pub resolution_verified: bool,
    pub flat_dimension: Option<usize>,
}

fn direct_sum(parts: &[KModuleInvariants]) -> KModuleInvariants {
    let mut torsion: Vec<_> = parts.iter().flat_map(|p| p.torsion.iter().cloned()).collect();
    torsion.sort();
    KModuleInvariants { free_rank: parts.iter().map(|p| p.free_rank).sum(), torsion }
}

/// `Tor^{k[x₁..x_v]}(k, k)` from the Koszul resolution of the residue
/// module, degree by degree up to `cap ≥ v`.
pub fn graded_koszul_tor<R: Ring>(ring: &R, v: usize, cap: usize) -> Result<GradedTorReport> {
    if cap < v {
        return Err(Error::CapTooSmall { cap, needed: v });
    }
    let acyclic = graded_koszul_homology(ring, v, cap, GradedCoefficients::Polynomial)?;
    let resolution_verified = acyclic.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(
            |(e, h)| {
                if i == 0 && e == 0 {
                    *h == KModuleInvariants::free(1)
                } else {
                    h.is_zero()
                }
            },
        )
    });
    let by_degree = graded_koszul_homology(ring, v, cap, GradedCoefficients::Residue)?;
    let tor: Vec<_> = by_degree.iter().map(|row| direct_sum(row)).collect();
    let flat_dimension = tor.iter().rposition(|t| !t.is_zero());
    Ok(GradedTorReport { variables: v, cap, tor, by_degree, resolution_verified, flat_dimension })
}

/// Global dimension of the supported base rings.
pub fn global_dimension(ring: ScalarRing) -> usize {
    if ring.is_field() {
        0
    } else {
        1
    }
}

/// `HCdim(A/k) ≥ fd − D(k) − fd_k(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub flat_dimension: usize,
    pub global_dimension: usize,
    pub flat_dimension_over_k: usize,
    pub lower: usize,
}

impl BoundReport {
    pub fn new(flat_dimension: usize, global_dimension: usize, flat_dimension_over_k: usize) -> Self {
        let lower = flat_dimension.saturating_sub(global_dimension + flat_dimension_over_k);
        Self { flat_dimension, global_dimension, flat_dimension_over_k, lower }
    }

    /// Quasi-free algebras have `HCdim ≤ 1`.
    pub fn rules_out_quasi_free(&self) -> bool {
        self.lower >= 2
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "HCdim ≥ {} (fd {} − D(k) {} − fd_k {})",
            self.lower, self.flat_dimension, self.global_dimension, self.flat_dimension_over_k
        )?;
        if self.rules_out_quasi_free() {
            write!(f, ": not quasi-free")?;
        }
        Ok(())
    }
}
