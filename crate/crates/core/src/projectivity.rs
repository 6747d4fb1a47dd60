//! Relative projectivity of the syzygies `Ωⁿ(A/k)`, separability,
//! quasi-freeness and two-sided bounds on the Hochschild cohomological
//! dimension.
//!
//! `Ωⁿ` is relatively projective exactly when `0 → Ωⁿ⁺¹ → CBₙ → Ωⁿ → 0`
//! splits as bimodules. A level is decided with the dual basis lemma over
//! a set of `Aᵉ`-generators of `Ωⁿ`; once some `Ωʲ` has a section, the
//! sections of all higher levels are built from it and the contracting
//! homotopy.

use std::sync::Arc;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::FiniteAlgebra;
use crate::bar::{chain_rank, contracting_homotopy, differential, syzygy};
use crate::bimodule::{hom_bimodule, Bimodule, LeftModule};
use crate::error::{Error, Result};
use crate::extensions::{lift_exists, ExtensionPresentation};
use crate::hochschild::{coboundary_matrix, hh_report, prefer_normalized};
use crate::linalg::{check_size, kernel_basis, KModuleInvariants, LinearSystem};
use crate::matrix::Matrix;
use crate::ring::{Rationals, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Projective,
    NotProjective,
}

#[derive(Clone, Debug)]
pub struct ProjectivityCertificate<R: Ring> {
    pub level: usize,
    pub normalized: bool,
    pub verdict: Verdict,
    /// The algebra whose bar complex carries the matrices below. It is the
    /// input algebra unless a normalized check had to move the unit into
    /// the basis.
    pub algebra: Arc<FiniteAlgebra<R>>,
    /// Basis of `Ωⁿ` inside level `n − 1`, as columns.
    pub embedding: Matrix<R>,
    /// `σ: Ωⁿ → CBₙ` in the basis of `embedding`.
    pub section: Option<Matrix<R>>,
    pub obstruction: Option<String>,
}

impl<R: Ring> ProjectivityCertificate<R> {
    pub fn is_projective(&self) -> bool {
        self.verdict == Verdict::Projective
    }

    /// Rechecks `b′ₙσ = id` and bilinearity of the stored section.
    pub fn verify(&self) -> Result<()> {
        match &self.section {
            Some(s) => verify_section(&self.algebra, self.level, self.normalized, &self.embedding, s),
            None => Ok(()),
        }
    }
}

/// One level of the bar complex with the outer `Aᵉ`-action on vectors.
struct Level<'a, R: Ring> {
    algebra: &'a FiniteAlgebra<R>,
    n: isize,
    rank: usize,
}

impl<'a, R: Ring> Level<'a, R> {
    fn new(algebra: &'a FiniteAlgebra<R>, n: isize, normalized: bool) -> Self {
        Self { algebra, n, rank: chain_rank(algebra, n, normalized) }
    }

    /// `eᵢ · v · eⱼ`
    fn act(&self, i: usize, j: usize, v: &[R::Elem]) -> Vec<R::Elem> {
        let a = self.algebra;
        let ring = a.ring();
        let d = a.rank();
        if self.n < 0 {
            let left = a.mul_vectors(&a.basis_vector(i), v);
            return a.mul_vectors(&left, &a.basis_vector(j));
        }
        let mid = self.rank / (d * d);
        let mut out = vec![ring.zero(); self.rank];
        for x in 0..d {
            let left = a.product(i, x);
            if left.iter().all(|c| ring.is_zero(c)) {
                continue;
            }
            for m in 0..mid {
                for y in 0..d {
                    let coeff = &v[(x * mid + m) * d + y];
                    if ring.is_zero(coeff) {
                        continue;
                    }
                    let right = a.product(y, j);
                    for (k, ck) in left.iter().enumerate() {
                        if ring.is_zero(ck) {
                            continue;
                        }
                        let ckv = ring.mul(ck, coeff);
                        for (l, cl) in right.iter().enumerate() {
                            if !ring.is_zero(cl) {
                                ring.mul_add_assign(&mut out[(k * mid + m) * d + l], &ckv, cl);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// `λ · v` for `λ ∈ Aᵉ` in the basis `eᵢ ⊗ eⱼ`.
    fn act_by(&self, lambda: &[R::Elem], v: &[R::Elem]) -> Vec<R::Elem> {
        let ring = self.algebra.ring();
        let d = self.algebra.rank();
        let mut out = vec![ring.zero(); self.rank];
        for (ij, c) in lambda.iter().enumerate() {
            if !ring.is_zero(c) {
                crate::algebra::axpy(ring, &mut out, c, &self.act(ij / d, ij % d, v));
            }
        }
        out
    }

    /// `λ ↦ λ·g` as a `rank × d²` matrix.
    fn orbit_matrix(&self, g: &[R::Elem]) -> Result<Matrix<R>> {
        let d = self.algebra.rank();
        check_size(self.rank, d * d)?;
        let cols: Vec<_> = (0..d * d).map(|ij| self.act(ij / d, ij % d, g)).collect();
        Ok(Matrix::from_columns(self.algebra.ring(), self.rank, &cols))
    }

    /// `1 ⊗ v ⊗ 1` for a middle basis index `v`.
    fn free_generator(&self, v: usize) -> Vec<R::Elem> {
        let a = self.algebra;
        let ring = a.ring();
        let d = a.rank();
        let mid = self.rank / (d * d);
        let mut out = vec![ring.zero(); self.rank];
        for (k, uk) in a.unit().iter().enumerate() {
            for (l, ul) in a.unit().iter().enumerate() {
                if !ring.is_zero(uk) && !ring.is_zero(ul) {
                    out[(k * mid + v) * d + l] = ring.mul(uk, ul);
                }
            }
        }
        out
    }
}

/// Left multiplication by `eᵢ ⊗ eⱼ` on `Aᵉ`: `(eᵢ⊗eⱼ)(e_k⊗e_l) = eᵢe_k ⊗ e_leⱼ`.
fn enveloping_left<R: Ring>(algebra: &FiniteAlgebra<R>) -> Vec<Matrix<R>> {
    let d = algebra.rank();
    (0..d * d).map(|ij| algebra.left_mul_matrix(ij / d).kronecker(&algebra.right_mul_matrix(ij % d))).collect()
}

fn enveloping_mul<R: Ring>(ring: &R, left: &[Matrix<R>], x: &[R::Elem], y: &[R::Elem]) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); y.len()];
    for (ij, c) in x.iter().enumerate() {
        if !ring.is_zero(c) {
            crate::algebra::axpy(ring, &mut out, c, &left[ij].mul_vec(y));
        }
    }
    out
}

fn enveloping_left_by<R: Ring>(ring: &R, left: &[Matrix<R>], x: &[R::Elem]) -> Matrix<R> {
    let n = x.len();
    let mut out = Matrix::zeros(ring, n, n);
    for (ij, c) in x.iter().enumerate() {
        if !ring.is_zero(c) {
            out = out.add(&left[ij].scale(c));
        }
    }
    out
}

fn syzygy_embedding<R: Ring>(algebra: &FiniteAlgebra<R>, n: usize, normalized: bool) -> Result<Matrix<R>> {
    if n == 0 {
        return Ok(Matrix::identity(algebra.ring(), algebra.rank()));
    }
    let b = differential(algebra, n - 1, normalized)?;
    Ok(kernel_basis(&b))
}

enum Decision<R: Ring> {
    Projective(Matrix<R>),
    NotProjective { torsion: bool },
}

/// Dual basis test for `Ωⁿ`: with generators `g_s` and a basis `Φ_t` of
/// `Hom_{Aᵉ}(Ωⁿ, Aᵉ)`, look for `Φ'_s = Σ c_ts Φ_t` with
/// `Σ_s Φ'_s(x)·g_s = x`. The section is `x ↦ Σ_s Φ'_s(x)·s(g_s)`.
fn decide_level<R: Ring>(
    algebra: &FiniteAlgebra<R>,
    n: usize,
    normalized: bool,
    embedding: &Matrix<R>,
) -> Result<Decision<R>> {
    let ring = algebra.ring();
    let d = algebra.rank();
    let dd = d * d;
    let below = Level::new(algebra, n as isize - 1, normalized);
    let here = Level::new(algebra, n as isize, normalized);
    let r = embedding.cols();
    if r == 0 {
        return Ok(Decision::Projective(Matrix::zeros(ring, here.rank, 0)));
    }

    let mut gens: Vec<Vec<R::Elem>> = Vec::new();
    let mut w = Matrix::zeros(ring, below.rank, 0);
    for c in 0..r {
        let x = embedding.column(c);
        if !gens.is_empty() && LinearSystem::new(&w).solve(&x).is_some() {
            continue;
        }
        w = w.hstack(&below.orbit_matrix(&x)?);
        gens.push(x);
    }
    let s = gens.len();

    let relations = kernel_basis(&w);
    let q = relations.cols();
    check_size(q * dd, s * dd)?;
    let env = enveloping_left(algebra);
    let mut constraint = Matrix::zeros(ring, q * dd, s * dd);
    for h in 0..q {
        let rel = relations.column(h);
        for g in 0..s {
            let block = enveloping_left_by(ring, &env, &rel[g * dd..(g + 1) * dd]);
            for p in 0..dd {
                for k in 0..dd {
                    constraint.set(h * dd + p, g * dd + k, block.get(p, k).clone());
                }
            }
        }
    }
    let homs = kernel_basis(&constraint);
    let t = homs.cols();

    check_size(s * below.rank, s * t)?;
    let mut system = Matrix::zeros(ring, s * below.rank, s * t);
    for target in 0..s {
        let wt = w.select_columns(&(target * dd..(target + 1) * dd).collect::<Vec<_>>());
        for g in 0..s {
            let block = homs.select_rows(&(g * dd..(g + 1) * dd).collect::<Vec<_>>());
            let prod = wt.mul(&block);
            for row in 0..below.rank {
                for col in 0..t {
                    system.set(g * below.rank + row, target * t + col, prod.get(row, col).clone());
                }
            }
        }
    }
    let rhs: Vec<R::Elem> = gens.iter().flatten().cloned().collect();
    let Some(c) = LinearSystem::new(&system).solve(&rhs) else {
        let torsion = !ring.is_field() && {
            let to_q = |x: &R::Elem| ring.to_rational(x).expect("characteristic zero");
            LinearSystem::new(&system.convert(&Rationals, to_q))
                .solve(&rhs.iter().map(to_q).collect::<Vec<_>>())
                .is_some()
        };
        return Ok(Decision::NotProjective { torsion });
    };

    let homotopy = contracting_homotopy(algebra, n as isize - 1, normalized)?;
    let mut phis = Vec::with_capacity(s);
    let mut orbits = Vec::with_capacity(s);
    for target in 0..s {
        phis.push(homs.mul_vec(&c[target * t..(target + 1) * t]));
        orbits.push(here.orbit_matrix(&homotopy.mul_vec(&gens[target]))?);
    }
    check_size(here.rank, r)?;
    let solver = LinearSystem::new(&w);
    let mut columns = Vec::with_capacity(r);
    for col in 0..r {
        let lambda = solver
            .solve(&embedding.column(col))
            .ok_or_else(|| Error::Inconsistent("generators do not span the syzygy".into()))?;
        let mut image = vec![ring.zero(); here.rank];
        for target in 0..s {
            let mut value = vec![ring.zero(); dd];
            for g in 0..s {
                let part =
                    enveloping_mul(ring, &env, &lambda[g * dd..(g + 1) * dd], &phis[target][g * dd..(g + 1) * dd]);
                crate::algebra::axpy(ring, &mut value, &ring.one(), &part);
            }
            crate::algebra::axpy(ring, &mut image, &ring.one(), &orbits[target].mul_vec(&value));
        }
        columns.push(image);
    }
    Ok(Decision::Projective(Matrix::from_columns(ring, here.rank, &columns)))
}

/// From a section `σ` of `b′ₙ: CBₙ → Ωⁿ`, a section of `b′ₙ₊₁` on `Ωⁿ⁺¹`:
/// the bimodule map `T` on `CBₙ` with `T(1⊗v⊗1) = sₙ(ρ(1⊗v⊗1))`,
/// `ρ = id − σb′ₙ`, restricted to `Ωⁿ⁺¹`.
fn lift_section<R: Ring>(
    algebra: &FiniteAlgebra<R>,
    n: usize,
    normalized: bool,
    embedding: &Matrix<R>,
    section: &Matrix<R>,
) -> Result<(Matrix<R>, Matrix<R>)> {
    let ring = algebra.ring();
    let d = algebra.rank();
    let b = differential(algebra, n, normalized)?;
    let here = Level::new(algebra, n as isize, normalized);
    let up = Level::new(algebra, n as isize + 1, normalized);
    check_size(here.rank, here.rank)?;
    check_size(up.rank, here.rank)?;
    let coords = LinearSystem::new(embedding)
        .solve_columns(&b)
        .ok_or_else(|| Error::Inconsistent("image of b′ is not in the syzygy".into()))?;
    let rho = Matrix::identity(ring, here.rank).sub(&section.mul(&coords));
    let homotopy = contracting_homotopy(algebra, n as isize, normalized)?;
    let mid = here.rank / (d * d);
    let mut columns = vec![Vec::new(); here.rank];
    for v in 0..mid {
        let z = homotopy.mul_vec(&rho.mul_vec(&here.free_generator(v)));
        for x in 0..d {
            for y in 0..d {
                columns[(x * mid + v) * d + y] = up.act(x, y, &z);
            }
        }
    }
    let t = Matrix::from_columns(ring, up.rank, &columns);
    let next = kernel_basis(&b);
    let lifted = t.mul(&next);
    Ok((next, lifted))
}

fn verify_section<R: Ring>(
    algebra: &FiniteAlgebra<R>,
    n: usize,
    normalized: bool,
    embedding: &Matrix<R>,
    section: &Matrix<R>,
) -> Result<()> {
    let ring = algebra.ring();
    let d = algebra.rank();
    let fail = |msg: String| Err(Error::Inconsistent(msg));
    if differential(algebra, n, normalized)?.mul(section) != *embedding {
        return fail(format!("b′{n}∘σ is not the identity on Ω^{n}"));
    }
    let below = Level::new(algebra, n as isize - 1, normalized);
    let here = Level::new(algebra, n as isize, normalized);
    let solver = LinearSystem::new(embedding);
    let sigma_t = section.transpose();
    let unit = algebra.unit();
    for i in 0..d {
        for side in ["left", "right"] {
            let mut lambda = vec![ring.zero(); d * d];
            for (k, u) in unit.iter().enumerate() {
                let ij = if side == "left" { i * d + k } else { k * d + i };
                lambda[ij] = u.clone();
            }
            for col in 0..embedding.cols() {
                let moved = below.act_by(&lambda, &embedding.column(col));
                let coords =
                    solver.solve(&moved).ok_or_else(|| Error::Inconsistent("syzygy is not a sub-bimodule".into()))?;
                let mut lhs = vec![ring.zero(); here.rank];
                for (k, c) in coords.iter().enumerate() {
                    if !ring.is_zero(c) {
                        crate::algebra::axpy(ring, &mut lhs, c, sigma_t.row(k));
                    }
                }
                if lhs != here.act_by(&lambda, sigma_t.row(col)) {
                    return fail(format!("σ is not {side} linear for e{i}"));
                }
            }
        }
    }
    Ok(())
}

fn working_algebra<R: Ring>(algebra: &Arc<FiniteAlgebra<R>>, normalized: bool) -> Result<Arc<FiniteAlgebra<R>>> {
    if !normalized || algebra.has_unital_basis() {
        return Ok(algebra.clone());
    }
    Ok(Arc::new(algebra.to_unital_basis()?.0))
}

/// `e ∈ A⊗A` with `μ(e) = 1` and `a·e = e·a`, if one exists over the ring.
pub fn separability_idempotent<R: Ring>(algebra: &FiniteAlgebra<R>) -> Result<Option<Vec<R::Elem>>> {
    let ring = algebra.ring();
    let d = algebra.rank();
    check_size(d * d * (d + 1), d * d)?;
    let id = Matrix::identity(ring, d);
    let mut blocks = vec![algebra.multiplication_matrix()];
    let mut rhs = algebra.unit().to_vec();
    for i in 0..d {
        let left = algebra.left_mul_matrix(i).kronecker(&id);
        let right = id.kronecker(&algebra.right_mul_matrix(i));
        blocks.push(left.sub(&right));
        rhs.extend(std::iter::repeat_with(|| ring.zero()).take(d * d));
    }
    let system = Matrix::vstack_all(ring, d * d, &blocks);
    Ok(LinearSystem::new(&system).solve(&rhs))
}

/// Decides whether `Ωⁿ(A/k)` is relatively projective. A positive verdict
/// carries a verified bimodule section of `b′ₙ: CBₙ → Ωⁿ`.
///
/// With `normalized` the normalized bar complex is used; an algebra whose
/// unit is not a basis vector is first moved to a basis that has it.
pub fn omega_is_projective<R: Ring>(
    algebra: &Arc<FiniteAlgebra<R>>,
    n: usize,
    normalized: bool,
) -> Result<ProjectivityCertificate<R>> {
    let work = working_algebra(algebra, normalized)?;
    let mut torsion = false;
    for j in 0..=n {
        let embedding = syzygy_embedding(&work, j, normalized)?;
        match decide_level(&work, j, normalized, &embedding)? {
            Decision::Projective(mut section) => {
                let mut embedding = embedding;
                for level in j..n {
                    (embedding, section) = lift_section(&work, level, normalized, &embedding, &section)?;
                }
                let cert = ProjectivityCertificate {
                    level: n,
                    normalized,
                    verdict: Verdict::Projective,
                    algebra: work,
                    embedding,
                    section: Some(section),
                    obstruction: None,
                };
                cert.verify()?;
                return Ok(cert);
            }
            Decision::NotProjective { torsion: t } => torsion = t,
        }
    }
    let obstruction = if torsion {
        format!("torsion obstruction: 0 → Ω^{} → CB_{n} → Ω^{n} → 0 splits over ℚ but not over ℤ", n + 1)
    } else {
        format!("0 → Ω^{} → CB_{n} → Ω^{n} → 0 does not split as bimodules", n + 1)
    };
    Ok(ProjectivityCertificate {
        level: n,
        normalized,
        verdict: Verdict::NotProjective,
        embedding: syzygy_embedding(&work, n, normalized)?,
        algebra: work,
        section: None,
        obstruction: Some(obstruction),
    })
}

/// Names of the built-in probe bimodules, in report order.
pub const PROBES: [&str; 5] = ["A", "A^e", "Hom(A,A)", "Omega^1", "Omega^2"];

pub fn probe_module<R: Ring>(algebra: &Arc<FiniteAlgebra<R>>, name: &str) -> Result<Bimodule<R>> {
    match name {
        "A" => Ok(Bimodule::regular(algebra)),
        "A^e" => Bimodule::outer_tensor(algebra, 2),
        "Hom(A,A)" => {
            let reg = LeftModule::regular(algebra);
            hom_bimodule(&reg, &reg)
        }
        "Omega^1" => Ok(syzygy(algebra, 1, false)?.module),
        "Omega^2" => Ok(syzygy(algebra, 2, false)?.module),
        other => Err(Error::Unsupported(format!("a known probe, not {other:?}"))),
    }
}

/// A bimodule with nonzero `HHⁿ`.
#[derive(Clone, Debug)]
pub struct CohomologyWitness<R: Ring> {
    pub probe: String,
    pub degree: usize,
    pub invariants: KModuleInvariants,
    /// A cocycle that is not a coboundary, in the original basis.
    pub cocycle: Option<Matrix<R>>,
}

/// First probe, by name, with `HHⁿ(A, M) ≠ 0`. Probes that hit the size
/// guard are skipped and listed.
pub fn find_witness<R: Ring>(
    algebra: &Arc<FiniteAlgebra<R>>,
    degree: usize,
    extra: &[(String, Bimodule<R>)],
    with_cocycle: bool,
) -> Result<(Option<CohomologyWitness<R>>, Vec<String>)> {
    let mut names: Vec<(String, Option<&Bimodule<R>>)> = PROBES.iter().map(|p| (p.to_string(), None)).collect();
    names.extend(extra.iter().map(|(n, m)| (n.clone(), Some(m))));
    names.sort_by(|a, b| a.0.cmp(&b.0));
    let mut skipped = Vec::new();
    for (name, given) in names {
        let attempt = (|| -> Result<Option<CohomologyWitness<R>>> {
            let module = match given {
                Some(m) => m.clone(),
                None => probe_module(algebra, &name)?,
            };
            let (invariants, cocycle) = if with_cocycle {
                let report = hh_report(&module, degree, false, true)?;
                let first = report.representatives.and_then(|r| r.into_iter().next()).map(|c| c.values);
                (report.invariants, first)
            } else {
                let (m, normalized) = prefer_normalized(&module)?;
                (hh_report(&m, degree, normalized, false)?.invariants, None)
            };
            Ok((!invariants.is_zero()).then(|| CohomologyWitness { probe: name.clone(), degree, invariants, cocycle }))
        })();
        match attempt {
            Ok(Some(w)) => return Ok((Some(w), skipped)),
            Ok(None) => {}
            Err(e) if e.is_size_guard() => skipped.push(name),
            Err(e) => return Err(e),
        }
    }
    Ok((None, skipped))
}

#[derive(Clone, Debug)]
pub struct QuasiFreeReport<R: Ring> {
    pub quasi_free: bool,
    /// Projectivity of `Ω¹`.
    pub certificate: ProjectivityCertificate<R>,
    /// Extensions whose multiplicative sections were constructed.
    pub lifts_checked: usize,
    /// Nonzero `HH²` for a negative verdict.
    pub witness: Option<CohomologyWitness<R>>,
}

/// Quasi-freeness as projectivity of `Ω¹`. A positive verdict is
/// spot-checked by lifting the trivial and a few random extensions of `A`
/// by `A` and by `A ⊗ A`; a negative one comes with an `HH²` witness.
pub fn is_quasi_free<R: Ring>(algebra: &Arc<FiniteAlgebra<R>>, seed: u64) -> Result<QuasiFreeReport<R>> {
    let certificate = omega_is_projective(algebra, 1, false)?;
    if !certificate.is_projective() {
        let (witness, _) = find_witness(algebra, 2, &[], true)?;
        return Ok(QuasiFreeReport { quasi_free: false, certificate, lifts_checked: 0, witness });
    }
    let ring = algebra.ring();
    let d = algebra.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lifts_checked = 0;
    for name in ["A", "A^e"] {
        let module = probe_module(algebra, name)?;
        let cocycles = match coboundary_matrix(&module, 2, false) {
            Ok(b2) => kernel_basis(&b2),
            Err(e) if e.is_size_guard() => continue,
            Err(e) => return Err(e),
        };
        let mut battery = vec![Matrix::zeros(ring, module.rank(), d * d)];
        for _ in 0..3 {
            let mut v = vec![ring.zero(); cocycles.rows()];
            for col in 0..cocycles.cols() {
                let c = ring.from_i64(rng.gen_range(-2..=2));
                crate::algebra::axpy(ring, &mut v, &c, &cocycles.column(col));
            }
            battery.push(Matrix::from_vec(ring, module.rank(), d * d, v)?);
        }
        for b in battery {
            let ext = ExtensionPresentation::crossed(&module, &b)?;
            if lift_exists(&ext)?.is_none() {
                return Err(Error::Inconsistent(format!(
                    "an extension by {name} does not lift although Ω¹ is projective"
                )));
            }
            lifts_checked += 1;
        }
    }
    Ok(QuasiFreeReport { quasi_free: true, certificate, lifts_checked, witness: None })
}

#[derive(Clone, Debug)]
pub struct HcdimReport<R: Ring> {
    pub cap: usize,
    /// Least `n ≤ cap` with `Ωⁿ` projective; `None` means `> cap`.
    pub upper: Option<usize>,
    pub upper_certificate: Option<ProjectivityCertificate<R>>,
    /// Largest `n ≤ cap + 1` with a witnessed nonzero `HHⁿ(A, M)`.
    pub lower: usize,
    pub lower_witness: Option<CohomologyWitness<R>>,
    /// Probes and projectivity levels abandoned at the size guard.
    pub skipped: Vec<(String, usize)>,
}

/// Proven upper and witnessed lower bounds for `HCdim(A/k)`.
pub fn hcdim_scan<R: Ring>(
    algebra: &Arc<FiniteAlgebra<R>>,
    cap: usize,
    extra: &[(String, Bimodule<R>)],
) -> Result<HcdimReport<R>> {
    let mut skipped = Vec::new();
    let mut upper = None;
    let mut upper_certificate = None;
    for n in 0..=cap {
        let attempt =
            syzygy_embedding(algebra, n, false).and_then(|emb| Ok((decide_level(algebra, n, false, &emb)?, emb)));
        match attempt {
            Ok((Decision::Projective(section), embedding)) => {
                let cert = ProjectivityCertificate {
                    level: n,
                    normalized: false,
                    verdict: Verdict::Projective,
                    algebra: algebra.clone(),
                    embedding,
                    section: Some(section),
                    obstruction: None,
                };
                cert.verify()?;
                upper = Some(n);
                upper_certificate = Some(cert);
                break;
            }
            Ok((Decision::NotProjective { .. }, _)) => {}
            Err(e) if e.is_size_guard() => {
                skipped.push((format!("Omega^{n}"), n));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let top = upper.unwrap_or(cap + 1).min(cap + 1);
    let mut lower = 0;
    let mut lower_witness = None;
    for n in (0..=top).rev() {
        let (witness, missed) = find_witness(algebra, n, extra, false)?;
        skipped.extend(missed.into_iter().map(|p| (p, n)));
        if let Some(w) = witness {
            lower = n;
            lower_witness = Some(w);
            break;
        }
    }
    Ok(HcdimReport { cap, upper, upper_certificate, lower, lower_witness, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ring::{Integers, PrimeField};

    #[test]
    fn scalars_are_separable() {
        let k = catalog::scalars(&Integers);
        assert_eq!(separability_idempotent(&k).unwrap(), Some(vec![Integers.one()]));
    }

    #[test]
    fn dual_numbers_are_not_separable() {
        let a = catalog::truncated_polynomial(&Rationals, 2);
        assert!(separability_idempotent(&a).unwrap().is_none());
    }

    #[test]
    fn product_level_zero() {
        let a = Arc::new(catalog::product_of_copies(&Integers, 2));
        let cert = omega_is_projective(&a, 0, false).unwrap();
        assert!(cert.is_projective());
        assert_eq!(cert.section.as_ref().unwrap().shape(), (4, 2));
    }

    #[test]
    fn dual_numbers_fail_at_every_level() {
        let a = Arc::new(catalog::truncated_polynomial(&PrimeField::new(2).unwrap(), 2));
        for n in 0..3 {
            let cert = omega_is_projective(&a, n, false).unwrap();
            assert!(!cert.is_projective());
            assert!(cert.obstruction.unwrap().contains("does not split"));
        }
    }

    #[test]
    fn upper_triangular_is_hereditary() {
        let a = Arc::new(catalog::upper_triangular(&Integers));
        assert!(!omega_is_projective(&a, 0, false).unwrap().is_projective());
        for n in 1..3 {
            for normalized in [false, true] {
                assert!(omega_is_projective(&a, n, normalized).unwrap().is_projective());
            }
        }
    }

    #[test]
    fn gaussian_integers_have_torsion_obstruction() {
        // ℤ[i] is separable over ℚ but 2 ramifies
        let a = Arc::new(catalog::truncated_polynomial(&Integers, 2));
        let gauss = FiniteAlgebra::from_products(
            &Integers,
            vec!["1".into(), "i".into()],
            vec![Integers.one(), Integers.zero()],
            |p, q| match (p, q) {
                (0, j) | (j, 0) => a.basis_vector(j),
                _ => vec![Integers.from_i64(-1), Integers.zero()],
            },
        )
        .unwrap();
        let cert = omega_is_projective(&Arc::new(gauss), 0, false).unwrap();
        assert!(cert.obstruction.unwrap().starts_with("torsion obstruction"));
    }
}
