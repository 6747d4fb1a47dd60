//! The bar resolution `CBₙ(A) = A^⊗(n+2)` of `A` by `Aᵉ`-modules, its
//! normalized quotient `A ⊗ Ā^⊗n ⊗ A`, the contracting homotopy and the
//! syzygy bimodules `Ωⁿ(A/k)`.
//!
//! Level `n` of either complex is indexed row-major by its tensor factors.
//! In the normalized complex the middle factors use the non-unit basis
//! vectors `e₁, …, e_{d−1}` of an algebra with `e₀ = 1`. Level `−1` is `A`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::algebra::FiniteAlgebra;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{check_size, kernel_basis, LinearSystem};
use crate::matrix::Matrix;
use crate::ring::Ring;

type CacheKey = (usize, bool);

/// Memo table of differentials, shared by clones of an algebra.
pub(crate) struct BarCache<R: Ring>(Arc<RwLock<HashMap<CacheKey, Arc<Matrix<R>>>>>);

impl<R: Ring> Default for BarCache<R> {
    fn default() -> Self {
        Self(Arc::default())
    }
}

impl<R: Ring> Clone for BarCache<R> {
    fn clone(&self) -> Self {
        Self(self.0.clone())
    }
}

impl<R: Ring> fmt::Debug for BarCache<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.read().map(|m| m.len()).unwrap_or(0);
        write!(f, "BarCache({n} entries)")
    }
}

/// Tensor factor layout of one level.
#[derive(Clone, Copy, Debug)]
struct Layout {
    d: usize,
    /// Number of middle factors.
    middle: usize,
    normalized: bool,
}

impl Layout {
    fn new(d: usize, n: isize, normalized: bool) -> Self {
        Self { d, middle: n.max(0) as usize, normalized }
    }

    fn middle_dim(&self) -> usize {
        if self.normalized {
            self.d - 1
        } else {
            self.d
        }
    }

    fn offset(&self) -> usize {
        usize::from(self.normalized)
    }

    fn factors(&self) -> usize {
        self.middle + 2
    }

    fn radix(&self, pos: usize) -> usize {
        if pos == 0 || pos == self.factors() - 1 {
            self.d
        } else {
            self.middle_dim()
        }
    }

    fn rank(&self) -> usize {
        self.d * self.d * self.middle_dim().pow(self.middle as u32)
    }

    /// Algebra basis indices of each factor.
    fn decode(&self, mut index: usize, out: &mut Vec<usize>) {
        out.clear();
        out.resize(self.factors(), 0);
        for pos in (0..self.factors()).rev() {
            let r = self.radix(pos);
            let digit = index % r;
            index /= r;
            let is_middle = pos != 0 && pos != self.factors() - 1;
            out[pos] = if is_middle { digit + self.offset() } else { digit };
        }
    }

    /// Index of a tensor of algebra basis indices, `None` when a middle
    /// factor is the unit in the normalized complex.
    fn encode(&self, basis: &[usize]) -> Option<usize> {
        let mut index = 0;
        for (pos, &b) in basis.iter().enumerate() {
            let is_middle = pos != 0 && pos != basis.len() - 1;
            let digit = if is_middle {
                if b < self.offset() {
                    return None;
                }
                b - self.offset()
            } else {
                b
            };
            index = index * self.radix(pos) + digit;
        }
        Some(index)
    }
}

/// Rank of level `n ≥ −1`: `d^(n+2)`, or `d²(d−1)ⁿ` when normalized.
pub fn chain_rank<R: Ring>(algebra: &FiniteAlgebra<R>, n: isize, normalized: bool) -> usize {
    let d = algebra.rank();
    if n < 0 {
        return d;
    }
    Layout::new(d, n, normalized).rank()
}

fn check_normalized<R: Ring>(algebra: &FiniteAlgebra<R>, normalized: bool) -> Result<()> {
    if normalized {
        algebra.require_unital_basis()?;
    }
    Ok(())
}

fn build_differential<R: Ring>(algebra: &FiniteAlgebra<R>, n: usize, normalized: bool) -> Result<Matrix<R>> {
    let ring = algebra.ring();
    let d = algebra.rank();
    let src = Layout::new(d, n as isize, normalized);
    let rows = if n == 0 { d } else { Layout::new(d, n as isize - 1, normalized).rank() };
    check_size(rows, src.rank())?;
    let mut m = Matrix::zeros(ring, rows, src.rank());
    let mut digits = Vec::new();
    let mut merged = Vec::with_capacity(n + 1);
    for col in 0..src.rank() {
        src.decode(col, &mut digits);
        for i in 0..=n {
            let sign_negative = i % 2 == 1;
            for (k, c) in algebra.product(digits[i], digits[i + 1]).iter().enumerate() {
                if ring.is_zero(c) {
                    continue;
                }
                let row = if n == 0 {
                    Some(k)
                } else {
                    merged.clear();
                    merged.extend_from_slice(&digits[..i]);
                    merged.push(k);
                    merged.extend_from_slice(&digits[i + 2..]);
                    Layout::new(d, n as isize - 1, normalized).encode(&merged)
                };
                if let Some(row) = row {
                    let v = if sign_negative { ring.neg(c) } else { c.clone() };
                    m.add_to(row, col, &v);
                }
            }
        }
    }
    Ok(m)
}

/// `b′ₙ: CBₙ → CBₙ₋₁`, `b′ₙ(a₀⊗…⊗aₙ₊₁) = Σᵢ (−1)ⁱ a₀⊗…⊗aᵢaᵢ₊₁⊗…⊗aₙ₊₁`;
/// `b′₀ = μ`. Cached per algebra.
pub fn bar_differential<R: Ring>(algebra: &FiniteAlgebra<R>, n: usize) -> Result<Arc<Matrix<R>>> {
    differential(algebra, n, false)
}

/// The same formula on `A ⊗ Ā^⊗n ⊗ A`; needs `e₀ = 1`.
pub fn normalized_bar_differential<R: Ring>(algebra: &FiniteAlgebra<R>, n: usize) -> Result<Arc<Matrix<R>>> {
    differential(algebra, n, true)
}

pub fn differential<R: Ring>(algebra: &FiniteAlgebra<R>, n: usize, normalized: bool) -> Result<Arc<Matrix<R>>> {
    check_normalized(algebra, normalized)?;
    let cache = &algebra.bar_cache.0;
    if let Some(m) = cache.read().expect("bar cache poisoned").get(&(n, normalized)) {
        return Ok(m.clone());
    }
    let m = Arc::new(build_differential(algebra, n, normalized)?);
    cache.write().expect("bar cache poisoned").insert((n, normalized), m.clone());
    Ok(m)
}

/// `sₙ: CBₙ → CBₙ₊₁`, `x ↦ 1⊗x` (for `n ≥ −1`). In the normalized complex
/// the old first factor is projected to `Ā`.
pub fn contracting_homotopy<R: Ring>(algebra: &FiniteAlgebra<R>, n: isize, normalized: bool) -> Result<Matrix<R>> {
    assert!(n >= -1);
    check_normalized(algebra, normalized)?;
    let ring = algebra.ring();
    let d = algebra.rank();
    let cols = chain_rank(algebra, n, normalized);
    let target = Layout::new(d, n + 1, normalized);
    check_size(target.rank(), cols)?;
    let mut m = Matrix::zeros(ring, target.rank(), cols);
    let mut digits = Vec::new();
    let mut shifted = Vec::new();
    for col in 0..cols {
        if n < 0 {
            digits.clear();
            digits.push(col);
        } else {
            Layout::new(d, n, normalized).decode(col, &mut digits);
        }
        for (k, u) in algebra.unit().iter().enumerate() {
            if ring.is_zero(u) {
                continue;
            }
            shifted.clear();
            shifted.push(k);
            shifted.extend_from_slice(&digits);
            if let Some(row) = target.encode(&shifted) {
                m.add_to(row, col, u);
            }
        }
    }
    Ok(m)
}

/// Whether `b′ₙ₊₁sₙ + sₙ₋₁b′ₙ = id` on level `n ≥ 0`, or `b′₀s₋₁ = id` for
/// `n = −1`.
pub fn homotopy_identity_holds<R: Ring>(algebra: &FiniteAlgebra<R>, n: isize, normalized: bool) -> Result<bool> {
    let ring = algebra.ring();
    let id = Matrix::identity(ring, chain_rank(algebra, n, normalized));
    let s = contracting_homotopy(algebra, n, normalized)?;
    let mut total = differential(algebra, (n + 1) as usize, normalized)?.mul(&s);
    if n >= 0 {
        let back = contracting_homotopy(algebra, n - 1, normalized)?;
        let b = differential(algebra, n as usize, normalized)?;
        total = total.add(&back.mul(&b));
    }
    Ok(total == id)
}

/// Level `n ≥ −1` as an `(A, A)`-bimodule with the outer action.
pub fn chain_bimodule<R: Ring>(algebra: &Arc<FiniteAlgebra<R>>, n: isize, normalized: bool) -> Result<Bimodule<R>> {
    check_normalized(algebra, normalized)?;
    if n < 0 {
        return Ok(Bimodule::regular(algebra));
    }
    if !normalized {
        return Bimodule::outer_tensor(algebra, n as usize + 2);
    }
    let ring = algebra.ring();
    let rank = chain_rank(algebra, n, true);
    check_size(rank, rank)?;
    let inner = Matrix::identity(ring, rank / algebra.rank());
    let left = (0..algebra.rank()).map(|i| algebra.left_mul_matrix(i).kronecker(&inner)).collect();
    let right = (0..algebra.rank()).map(|i| inner.kronecker(&algebra.right_mul_matrix(i))).collect();
    Bimodule::new_unchecked(algebra.clone(), left, right)
}

/// `Ωⁿ = ker(b′ₙ₋₁) ⊂ CBₙ₋₁`, with `Ω⁰ = A`.
#[derive(Clone, Debug)]
pub struct SyzygyModule<R: Ring> {
    pub level: usize,
    pub normalized: bool,
    /// Columns: a basis of the kernel inside level `n − 1`.
    pub embedding: Matrix<R>,
    /// The restricted outer action in that basis.
    pub module: Bimodule<R>,
}

pub fn syzygy<R: Ring>(algebra: &Arc<FiniteAlgebra<R>>, n: usize, normalized: bool) -> Result<SyzygyModule<R>> {
    check_normalized(algebra, normalized)?;
    if n == 0 {
        return Ok(SyzygyModule {
            level: 0,
            normalized,
            embedding: Matrix::identity(algebra.ring(), algebra.rank()),
            module: Bimodule::regular(algebra),
        });
    }
    let b = differential(algebra, n - 1, normalized)?;
    let embedding = kernel_basis(&b);
    let ambient = chain_bimodule(algebra, n as isize - 1, normalized)?;
    let module = ambient.restrict(&embedding)?;
    Ok(SyzygyModule { level: n, normalized, embedding, module })
}

/// `d: A → Ω¹`, `d(a) = 1⊗a − a⊗1`.
#[derive(Clone, Debug)]
pub struct UniversalDerivation<R: Ring> {
    pub omega: SyzygyModule<R>,
    /// `d(eⱼ)` in `A⊗A`, one column per basis element.
    pub ambient: Matrix<R>,
    /// `d(eⱼ)` in the basis of `Ω¹`.
    pub coordinates: Matrix<R>,
}

pub fn universal_derivation<R: Ring>(algebra: &Arc<FiniteAlgebra<R>>) -> Result<UniversalDerivation<R>> {
    let ring = algebra.ring();
    let d = algebra.rank();
    let omega = syzygy(algebra, 1, false)?;
    let unit = Matrix::column_vector(ring, algebra.unit().to_vec());
    let id = Matrix::identity(ring, d);
    let ambient = unit.kronecker(&id).sub(&id.kronecker(&unit));
    let coordinates =
        LinearSystem::new(&omega.embedding).solve_columns(&ambient).expect("1⊗a − a⊗1 lies in the kernel of μ");
    Ok(UniversalDerivation { omega, ambient, coordinates })
}

/// The bimodule map `f: Ω¹ → M` with `f∘d = D`, `f(Σ aᵢ⊗bᵢ) = Σ aᵢD(bᵢ)`.
///
/// `derivation` is the `rank M × d` matrix of `D`. Returns `f` in the basis
/// of `Ω¹` after checking the Leibniz rule, bilinearity and `f∘d = D`.
pub fn derivation_factorization<R: Ring>(
    universal: &UniversalDerivation<R>,
    module: &Bimodule<R>,
    derivation: &Matrix<R>,
) -> Result<Matrix<R>> {
    let algebra = module.algebra();
    let ring = algebra.ring();
    let d = algebra.rank();
    crate::hochschild::check_derivation(module, derivation)?;
    let m = module.rank();
    let mut f_full = Matrix::zeros(ring, m, d * d);
    for i in 0..d {
        let col = module.left(i).mul(derivation);
        for j in 0..d {
            for p in 0..m {
                f_full.set(p, i * d + j, col.get(p, j).clone());
            }
        }
    }
    let f = f_full.mul(&universal.omega.embedding);
    let omega = &universal.omega.module;
    for i in 0..d {
        if f.mul(omega.left(i)) != module.left(i).mul(&f) || f.mul(omega.right(i)) != module.right(i).mul(&f) {
            return Err(Error::Shape(format!("factorization is not bilinear at e{i}")));
        }
    }
    debug_assert_eq!(f.mul(&universal.coordinates), *derivation);
    Ok(f)
}
