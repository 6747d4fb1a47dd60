//! Degree-truncated tensor algebras `T_B(M) / T_B(M)_{>N}`.

use crate::algebra::FiniteAlgebra;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{check_size, smith_normal_form};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// `M^{⊗_B j}` as a quotient of `M^{⊗j}`: `project` maps onto the quotient
/// coordinates, `lift` is a section of it.
struct Power<R: Ring> {
    project: Matrix<R>,
    lift: Matrix<R>,
}

/// Left and right actions on one graded piece.
type Actions<R> = (Vec<Matrix<R>>, Vec<Matrix<R>>);

impl<R: Ring> Power<R> {
    fn rank(&self) -> usize {
        self.project.rows()
    }
}

fn balanced_power<R: Ring>(m: &Bimodule<R>, j: usize) -> Result<Power<R>> {
    let ring = m.ring();
    let r = m.rank();
    let full = r.pow(j as u32);
    check_size(full, full)?;
    let id_r = Matrix::identity(ring, r);
    let mut blocks = Vec::new();
    for s in 0..j.saturating_sub(1) {
        let before = Matrix::identity(ring, r.pow(s as u32));
        let after = Matrix::identity(ring, r.pow((j - s - 2) as u32));
        for b in 0..m.algebra().rank() {
            // m·b ⊗ m′ − m ⊗ b·m′ across the s-th tensor sign
            let middle = m.right(b).kronecker(&id_r).sub(&id_r.kronecker(m.left(b)));
            let rel = before.kronecker(&middle).kronecker(&after);
            if !rel.is_zero() {
                blocks.push(rel);
            }
        }
    }
    if blocks.is_empty() {
        let id = Matrix::identity(ring, full);
        return Ok(Power { project: id.clone(), lift: id });
    }
    let mut rel = blocks[0].clone();
    for b in &blocks[1..] {
        rel = rel.hstack(b);
    }
    let snf = smith_normal_form(&rel);
    if snf.factors().iter().any(|f| !ring.is_unit(f)) {
        return Err(Error::Unsupported(format!("a free tensor power; M^(⊗{j}) over B has torsion")));
    }
    let keep: Vec<usize> = (snf.rank..full).collect();
    Ok(Power { project: snf.u.select_rows(&keep), lift: snf.u_inv.select_columns(&keep) })
}

fn kron_vec<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(ring.mul(x, y));
        }
    }
    out
}

/// `B ⊕ M ⊕ M^{⊗_B 2} ⊕ … ⊕ M^{⊗_B N}` with the concatenation product,
/// products of total degree above `N` set to zero.
///
/// Each `M^{⊗_B j}` must be a free k-module. Degree-`j` basis elements are
/// named by words in `m0, m1, …` when no balancing relations are needed.
pub fn truncated_tensor_algebra<R: Ring>(m: &Bimodule<R>, cap: usize) -> Result<FiniteAlgebra<R>> {
    if cap == 0 {
        return Err(Error::Shape("degree cap must be at least 1".into()));
    }
    let b = m.algebra();
    let ring = b.ring();
    if m.rank() == 0 {
        return Ok((**b).clone());
    }
    let powers = (1..=cap).map(|j| balanced_power(m, j)).collect::<Result<Vec<_>>>()?;
    let db = b.rank();
    let mut offsets = vec![0, db];
    for p in &powers {
        offsets.push(offsets.last().unwrap() + p.rank());
    }
    let total = *offsets.last().unwrap();
    check_size(total, total * total)?;

    let mut names = b.names().to_vec();
    for (idx, p) in powers.iter().enumerate() {
        let j = idx + 1;
        let trivial = p.rank() == m.rank().pow(j as u32);
        for q in 0..p.rank() {
            if trivial {
                let mut word = Vec::with_capacity(j);
                let mut rest = q;
                for _ in 0..j {
                    word.push(format!("m{}", rest % m.rank()));
                    rest /= m.rank();
                }
                word.reverse();
                names.push(word.join("⊗"));
            } else {
                names.push(format!("t{j}_{q}"));
            }
        }
    }

    // left and right B-actions on each graded piece
    let acts: Vec<Actions<R>> = powers
        .iter()
        .enumerate()
        .map(|(idx, p)| {
            let rest = Matrix::identity(ring, m.rank().pow(idx as u32));
            let left = (0..db).map(|e| p.project.mul(&m.left(e).kronecker(&rest)).mul(&p.lift)).collect();
            let right = (0..db).map(|e| p.project.mul(&rest.kronecker(m.right(e))).mul(&p.lift)).collect();
            (left, right)
        })
        .collect();

    let degree_of = |i: usize| offsets.iter().rposition(|&o| o <= i).unwrap();
    let mut mul = vec![ring.zero(); total * total * total];
    let mut set_product = |i: usize, j: usize, k: usize, v: &R::Elem| {
        mul[(i * total + j) * total + k] = v.clone();
    };
    for i in 0..total {
        let di = degree_of(i);
        for j in 0..total {
            let dj = degree_of(j);
            if di + dj > cap {
                continue;
            }
            let (li, lj) = (i - offsets[di], j - offsets[dj]);
            let target = offsets[di + dj];
            let col: Vec<R::Elem> = match (di, dj) {
                (0, 0) => b.product(i, j).to_vec(),
                (0, _) => acts[dj - 1].0[li].column(lj),
                (_, 0) => acts[di - 1].1[lj].column(li),
                _ => {
                    let x = powers[di - 1].lift.column(li);
                    let y = powers[dj - 1].lift.column(lj);
                    powers[di + dj - 1].project.mul_vec(&kron_vec(ring, &x, &y))
                }
            };
            for (k, v) in col.iter().enumerate() {
                if !ring.is_zero(v) {
                    set_product(i, j, target + k, v);
                }
            }
        }
    }
    let mut unit = b.unit().to_vec();
    unit.resize(total, ring.zero());
    FiniteAlgebra::new(ring, names, unit, mul)
}
